#include "kp5/evolution.hpp"

#include <cmath>
#include <sstream>

#include "kp5/errors.hpp"
#include "kp5/fft.hpp"
#include "kp5/invariants.hpp"

namespace kp5 {
namespace {

bool all_finite(std::span<const cplx> v) {
  for (const auto& c : v)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

/// Work buffers and multipliers for one run.
class Stepper {
 public:
  Stepper(const Grid2D& g, const ModelParams& p)
      : g_(g), p_(p), n_(g.size()), mask_(dealias_mask(g, p.dealias)), dxm_(n_), half_(n_), full_(n_),
        phys_(n_), work_(n_) {
    for (int i = 0; i < g.nx(); ++i) {
      const double xi = g.is_x_nyquist(i) ? 0.0 : g.xi(i);
      for (int j = 0; j < g.ny(); ++j) {
        const std::size_t k = g.index(i, j);
        dxm_[k] = cplx(0.0, -xi) * mask_[k];
        const double w = lattice_omega(g, i, j, p.delta);
        half_[k] = std::polar(1.0, -0.5 * p.dt * w);
        full_[k] = std::polar(1.0, -p.dt * w);
      }
    }
  }

  /// Unnormalised coefficients c (= FFT of samples) -> FFT of -d_x P(u^2).
  void nonlinear(std::span<const cplx> c, std::span<cplx> out) {
    fft::backward_2d(c, phys_, g_.nx(), g_.ny());
    const double inv_n = 1.0 / static_cast<double>(n_);
    for (auto& v : phys_) {
      const double r = v.real() * inv_n;
      v = cplx(r * r, 0.0);
    }
    fft::forward_2d(phys_, out, g_.nx(), g_.ny());
    for (std::size_t k = 0; k < n_; ++k) out[k] *= dxm_[k];
  }

  void step(std::vector<cplx>& c) {
    const double h = p_.dt;
    std::vector<cplx>& k1 = k_[0];
    std::vector<cplx>& k2 = k_[1];
    std::vector<cplx>& k3 = k_[2];
    std::vector<cplx>& k4 = k_[3];
    for (auto& k : k_) k.resize(n_);
    nonlinear(c, k1);
    for (std::size_t k = 0; k < n_; ++k) work_[k] = half_[k] * (c[k] + 0.5 * h * k1[k]);
    nonlinear(work_, k2);
    for (std::size_t k = 0; k < n_; ++k) work_[k] = half_[k] * c[k] + 0.5 * h * k2[k];
    nonlinear(work_, k3);
    for (std::size_t k = 0; k < n_; ++k) work_[k] = full_[k] * c[k] + h * half_[k] * k3[k];
    nonlinear(work_, k4);
    for (std::size_t k = 0; k < n_; ++k)
      c[k] = full_[k] * c[k] + (h / 6.0) * (full_[k] * k1[k] + 2.0 * half_[k] * (k2[k] + k3[k]) + k4[k]);
  }

  void linear_step(std::vector<cplx>& c) const {
    for (std::size_t k = 0; k < n_; ++k) c[k] *= full_[k];
  }

  const std::vector<double>& mask() const { return mask_; }

 private:
  const Grid2D& g_;
  const ModelParams& p_;
  std::size_t n_;
  std::vector<double> mask_;
  std::vector<cplx> dxm_, half_, full_;
  std::vector<cplx> phys_, work_;
  std::vector<cplx> k_[4];
};

Field2D field_from_raw(const Grid2D& g, std::span<const cplx> c) {
  std::vector<cplx> out(g.size());
  fft::backward_2d(c, out, g.nx(), g.ny());
  std::vector<double> s(g.size());
  const double inv_n = 1.0 / static_cast<double>(g.size());
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = out[k].real() * inv_n;
  // the xi = 0 line is never populated by the flow; remove roundoff residue
  Field2D u(g, std::move(s), false);
  return remove_x_mean(u);
}

}  // namespace

void ModelParams::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (!(T >= dt) || !std::isfinite(T)) throw ConfigError("T must be at least dt");
  if (!(dealias > 0.0 && dealias <= 2.0 / 3.0)) throw ConfigError("dealias fraction must lie in (0, 2/3]");
  if (record_stride < 1) throw ConfigError("record_stride must be >= 1");
}

long ModelParams::steps() const { return std::lround(T / dt); }

std::size_t TrajectoryRecord::index_of(double t) const {
  const double h = record_dt();
  const double r = t / h;
  const long k = std::lround(r);
  if (k < 0 || static_cast<std::size_t>(k) >= times.size() || std::abs(r - k) > 1e-9)
    throw ContractError("time is not on the record mesh");
  return static_cast<std::size_t>(k);
}

std::vector<double> dealias_mask(const Grid2D& g, double fraction) {
  const int mx = static_cast<int>(std::floor(fraction * g.nx() / 2.0));
  const int my = static_cast<int>(std::floor(fraction * g.ny() / 2.0));
  std::vector<double> m(g.size());
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j)
      m[g.index(i, j)] = (std::abs(g.kx(i)) <= mx && std::abs(g.ky(j)) <= my && !g.is_x_nyquist(i) &&
                          !g.is_y_nyquist(j))
                             ? 1.0
                             : 0.0;
  return m;
}

Field2D dealiased_square(const Field2D& u, double dealias) {
  const Grid2D& g = u.grid();
  std::vector<double> sq(g.size());
  for (std::size_t k = 0; k < sq.size(); ++k) sq[k] = u.samples()[k] * u.samples()[k];
  Spectrum2D s = to_spectrum(Field2D(g, std::move(sq)));
  const auto mask = dealias_mask(g, dealias);
  for (std::size_t k = 0; k < mask.size(); ++k) s.coeffs[k] *= mask[k];
  return to_field(s, false);
}

Spectrum2D nonlinear_spectrum(const Field2D& u, double dealias) {
  const Grid2D& g = u.grid();
  std::vector<double> sq(g.size());
  for (std::size_t k = 0; k < sq.size(); ++k) sq[k] = u.samples()[k] * u.samples()[k];
  Spectrum2D s = to_spectrum(Field2D(g, std::move(sq)));
  const auto mask = dealias_mask(g, dealias);
  for (int i = 0; i < g.nx(); ++i) {
    const double xi = g.is_x_nyquist(i) ? 0.0 : g.xi(i);
    for (int j = 0; j < g.ny(); ++j) s.at(i, j) *= cplx(0.0, -xi) * mask[g.index(i, j)];
  }
  return s;
}

Field2D rhs_nonlinear(const Field2D& u, DispersionSign delta, double dealias) {
  if (!u.zero_x_mean()) throw ConstraintError("rhs needs a zero-x-mean field");
  Spectrum2D s = to_spectrum(u);
  if (!all_finite(s.coeffs)) throw BlowUpError("non-finite field", 0.0);
  const Spectrum2D nl = nonlinear_spectrum(u, dealias);
  const Grid2D& g = u.grid();
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j)
      s.at(i, j) = cplx(0.0, -lattice_omega(g, i, j, delta)) * s.at(i, j) + nl.at(i, j);
  if (!all_finite(s.coeffs)) throw BlowUpError("non-finite right-hand side", 0.0);
  return to_field(s, true);
}

TrajectoryRecord evolve(const Field2D& u0, const ModelParams& params) {
  params.validate();
  if (!u0.zero_x_mean()) throw ConstraintError("evolve needs zero-x-mean initial data");
  const Grid2D& g = u0.grid();
  Stepper stepper(g, params);

  std::vector<cplx> c(g.size());
  {
    std::vector<cplx> in(g.size());
    for (std::size_t k = 0; k < in.size(); ++k) in[k] = u0.samples()[k];
    fft::forward_2d(in, c, g.nx(), g.ny());
    // the xi = 0 line is zero by the constraint; drop its roundoff
    for (int j = 0; j < g.ny(); ++j) c[g.index(0, j)] = 0.0;
    if (params.nonlinear)
      for (std::size_t k = 0; k < c.size(); ++k) c[k] *= stepper.mask()[k];
  }

  TrajectoryRecord rec;
  rec.params = params;
  const long n = params.steps();
  Field2D u = field_from_raw(g, c);
  const double m0 = mass(u);
  auto diagnose = [&](double t, const Field2D& v) {
    rec.diagnostics.push_back({t, mass(v), energy(v, params.delta, params.c3), max_abs(v)});
  };
  diagnose(0.0, u);
  rec.times.push_back(0.0);
  rec.fields.push_back(u);

  for (long s = 1; s <= n; ++s) {
    const double t = static_cast<double>(s) * params.dt;
    if (params.nonlinear)
      stepper.step(c);
    else
      stepper.linear_step(c);
    if (!all_finite(c)) throw BlowUpError("non-finite state", t);
    u = field_from_raw(g, c);
    diagnose(t, u);
    const double m = rec.diagnostics.back().mass;
    if (m0 > 0.0 && m > 1.1 * m0) {
      std::ostringstream msg;
      msg << "instability detected: mass grew by " << (m / m0 - 1.0) * 100 << "%";
      throw BlowUpError(msg.str(), t);
    }
    if (s % params.record_stride == 0) {
      rec.times.push_back(t);
      rec.fields.push_back(u);
    }
  }
  return rec;
}

double stability_limit(const Grid2D& grid, double max_amplitude, double dealias) {
  // RK4 on the imaginary axis is stable up to 2 sqrt(2) and the quadratic
  // term's rate is at most 2 max|u| xi_max. Measured limits on a 128^2 box
  // sit at 1.2-1.7 / (max|u| xi_max); this returns 0.71 / (max|u| xi_max).
  const double xi_max = grid.dealias_radius(dealias);
  const double rate = 2.0 * std::max(max_amplitude, 1e-300) * xi_max;
  return 0.5 * 2.0 * std::sqrt(2.0) / rate;
}

}  // namespace kp5
