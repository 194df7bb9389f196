#include "kp5/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kp5/errors.hpp"
#include "kp5/shells.hpp"

namespace kp5 {

double mass(const Field2D& u) {
  const double n = l2_norm(u);
  return n * n;
}

EnergyParts energy_parts(const Field2D& u) {
  if (!u.zero_x_mean()) throw ConstraintError("energy needs a zero-x-mean field");
  const Grid2D& g = u.grid();
  const Spectrum2D s = to_spectrum(u);
  double qx = 0.0, qy = 0.0;
  for (int i = 0; i < g.nx(); ++i) {
    if (g.kx(i) == 0) continue;
    const double xi = g.xi(i);
    const double xi4 = xi * xi * xi * xi;
    for (int j = 0; j < g.ny(); ++j) {
      const double a = std::norm(s.at(i, j));
      qx += xi4 * a;
      if (!g.is_x_nyquist(i)) {
        const double r = g.mu(j) / xi;
        qy += r * r * a;
      }
    }
  }
  double cubic = 0.0;
  for (double v : u.samples()) cubic += v * v * v;
  const double area = g.cell_area();
  return {0.5 * qx * area, 0.5 * qy * area, cubic * area};
}

double energy(const Field2D& u, DispersionSign delta, double c3) {
  const EnergyParts p = energy_parts(u);
  return p.quadratic_x + delta.value() * p.quadratic_y + c3 * p.cubic;
}

double shell_phase_rate(const Grid2D& g, double N, DispersionSign delta, double dealias) {
  const ShellSystem shells(g);
  const auto mask = dealias_mask(g, dealias);
  double rate = 0.0;
  for (int i = 0; i < g.nx(); ++i) {
    if (g.kx(i) == 0) continue;
    if (shells.weight(std::abs(g.xi(i)), N) == 0.0) continue;
    for (int j = 0; j < g.ny(); ++j)
      if (mask[g.index(i, j)] != 0.0) rate = std::max(rate, std::abs(lattice_omega(g, i, j, delta)));
  }
  return rate;
}

bool shell_time_resolvable(const TrajectoryRecord& traj, double N) {
  return traj.record_dt() * shell_phase_rate(traj.grid(), N, traj.params.delta, traj.params.dealias) <=
         kResolvablePhaseStep;
}

std::vector<ShellEnergyReport> shell_energy_identities(const TrajectoryRecord& traj,
                                                       const std::vector<double>& scales) {
  if (traj.fields.empty()) throw ContractError("empty trajectory");
  const Grid2D& g = traj.grid();
  const ShellSystem shells(g);
  for (double N : scales)
    if (!shells.contains(N)) throw RangeError("shell outside the grid band");
  const std::size_t ns = scales.size(), n = traj.fields.size();
  const auto mask = dealias_mask(g, traj.params.dealias);

  // squared shell weights per x-index
  std::vector<std::vector<double>> w2(ns, std::vector<double>(g.nx()));
  for (std::size_t q = 0; q < ns; ++q)
    for (int i = 0; i < g.nx(); ++i) {
      const double w = g.kx(i) == 0 ? 0.0 : shells.weight(std::abs(g.xi(i)), scales[q]);
      w2[q][i] = w * w;
    }

  std::vector<std::vector<double>> half_mass(ns, std::vector<double>(n)), flux(ns, std::vector<double>(n));
  std::vector<double> sq(g.size());
  for (std::size_t k = 0; k < n; ++k) {
    const Field2D& u = traj.fields[k];
    for (std::size_t q = 0; q < sq.size(); ++q) sq[q] = u.samples()[q] * u.samples()[q];
    const Spectrum2D su = to_spectrum(u);
    const Spectrum2D sf = to_spectrum(Field2D(g, sq));
    std::vector<double> row_mass(g.nx(), 0.0), row_flux(g.nx(), 0.0);
    for (int i = 0; i < g.nx(); ++i) {
      const double xi = g.is_x_nyquist(i) ? 0.0 : g.xi(i);
      for (int j = 0; j < g.ny(); ++j) {
        const std::size_t idx = g.index(i, j);
        row_mass[i] += std::norm(su.coeffs[idx]);
        // int d_x(P_N f) P_N u, f the masked square
        if (traj.params.nonlinear)
          row_flux[i] += mask[idx] * (std::conj(su.coeffs[idx]) * cplx(0.0, xi) * sf.coeffs[idx]).real();
      }
    }
    for (std::size_t q = 0; q < ns; ++q) {
      double m = 0.0, f = 0.0;
      for (int i = 0; i < g.nx(); ++i) {
        m += w2[q][i] * row_mass[i];
        f += w2[q][i] * row_flux[i];
      }
      half_mass[q][k] = 0.5 * m * g.cell_area();
      flux[q][k] = f * g.cell_area();
    }
  }

  const double total_half_mass = 0.5 * mass(traj.fields.front());
  std::vector<ShellEnergyReport> out;
  const double h = traj.record_dt();
  for (std::size_t q = 0; q < ns; ++q) {
    ShellEnergyReport r;
    r.N = scales[q];
    r.resolvable = shell_time_resolvable(traj, scales[q]);
    r.shell_mass0 = half_mass[q][0];
    if (*std::max_element(half_mass[q].begin(), half_mass[q].end()) <= kEmptyShellFraction * total_half_mass) {
      r.empty = true;
      out.push_back(r);
      continue;
    }
    double integral = 0.0, magnitude = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
      integral += 0.5 * h * (flux[q][k - 1] + flux[q][k]);
      magnitude += 0.5 * h * (std::abs(flux[q][k - 1]) + std::abs(flux[q][k]));
      const double res = half_mass[q][k] - half_mass[q][0] + integral;
      const double scale = half_mass[q][0] + magnitude;
      const double normed = scale > 0.0 ? std::abs(res) / scale : 0.0;
      if (normed > r.residual) {
        r.residual = normed;
        r.worst_time = traj.times[k];
      }
    }
    r.flux_magnitude = magnitude;
    out.push_back(r);
  }
  return out;
}

ShellEnergyReport shell_energy_identity(const TrajectoryRecord& traj, double N) {
  return shell_energy_identities(traj, {N}).front();
}

namespace {

/// Residuals at every record time from ic towards the end (dir = +1) or the
/// start (dir = -1), stopping after `count` steps. The Duhamel integral is
/// accumulated in the interaction picture: G(t) = int_c^t U(-s) n(s) ds.
std::vector<double> duhamel_sweep(const TrajectoryRecord& traj, const DuhamelFlux& flux, std::size_t ic, int dir,
                                  std::size_t count) {
  const Grid2D& g = traj.grid();
  const DispersionSign delta = traj.params.delta;
  const double h = traj.record_dt() * dir;
  const std::size_t n = g.size();
  std::vector<double> w(n);
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) w[g.index(i, j)] = lattice_omega(g, i, j, delta);

  const double c = traj.times[ic];
  const Spectrum2D uc = to_spectrum(traj.fields[ic]);
  std::vector<cplx> acc(n, 0.0), prev(n, 0.0), cur(n);
  auto pulled_back = [&](std::size_t k, std::vector<cplx>& out) {
    if (!flux) {
      std::fill(out.begin(), out.end(), cplx(0.0));
      return;
    }
    const Spectrum2D nl = flux(k);
    const double s = traj.times[k];
    for (std::size_t q = 0; q < n; ++q) out[q] = std::polar(1.0, s * w[q]) * nl.coeffs[q];
  };
  pulled_back(ic, prev);

  std::vector<double> out;
  Spectrum2D res = uc;
  for (std::size_t step = 1; step <= count; ++step) {
    const std::size_t k = dir > 0 ? ic + step : ic - step;
    pulled_back(k, cur);
    const double t = traj.times[k];
    for (std::size_t q = 0; q < n; ++q) {
      acc[q] += 0.5 * h * (prev[q] + cur[q]);
      res.coeffs[q] = std::polar(1.0, -(t - c) * w[q]) * uc.coeffs[q] + std::polar(1.0, -t * w[q]) * acc[q];
    }
    std::swap(prev, cur);
    const Spectrum2D uk = to_spectrum(traj.fields[k]);
    for (std::size_t q = 0; q < n; ++q) res.coeffs[q] = uk.coeffs[q] - res.coeffs[q];
    const double denom = l2_norm(traj.fields[k]);
    out.push_back(denom > 0.0 ? l2_norm(res) / denom : l2_norm(res));
  }
  return out;
}

}  // namespace

static DuhamelFlux solver_flux(const TrajectoryRecord& traj) {
  if (!traj.params.nonlinear) return {};
  return [&traj](std::size_t k) { return nonlinear_spectrum(traj.fields[k], traj.params.dealias); };
}

DuhamelReport duhamel_residual(const TrajectoryRecord& traj, double c, double t) {
  const std::size_t ic = traj.index_of(c), it = traj.index_of(t);
  DuhamelReport rep{traj.times[ic], traj.times[it], 0.0};
  if (ic == it) return rep;
  const int dir = it > ic ? 1 : -1;
  const std::size_t count = it > ic ? it - ic : ic - it;
  rep.residual = duhamel_sweep(traj, solver_flux(traj), ic, dir, count).back();
  return rep;
}

DuhamelReport duhamel_residual_window(const TrajectoryRecord& traj, double c, double window) {
  return duhamel_residual_forced(traj, solver_flux(traj), c, window);
}

DuhamelReport duhamel_residual_forced(const TrajectoryRecord& traj, const DuhamelFlux& flux, double c,
                                      double window) {
  const std::size_t ic = traj.index_of(c);
  DuhamelReport worst{traj.times[ic], traj.times[ic], 0.0};
  const auto reach = static_cast<std::size_t>(std::floor(window / traj.record_dt() + 1e-9));
  const std::size_t fwd = std::min(reach, traj.times.size() - 1 - ic);
  const std::size_t back = std::min(reach, ic);
  for (int dir : {1, -1}) {
    const std::size_t count = dir > 0 ? fwd : back;
    if (count == 0) continue;
    const auto r = duhamel_sweep(traj, flux, ic, dir, count);
    for (std::size_t s = 0; s < r.size(); ++s)
      if (r[s] >= worst.residual) {
        worst.residual = r[s];
        worst.t = traj.times[dir > 0 ? ic + s + 1 : ic - s - 1];
      }
  }
  return worst;
}

double fit_cubic_coefficient(const TrajectoryRecord& traj) {
  const int delta = traj.params.delta.value();
  std::vector<double> q, c;
  for (const auto& u : traj.fields) {
    const EnergyParts p = energy_parts(u);
    q.push_back(p.quadratic_x + delta * p.quadratic_y);
    c.push_back(p.cubic);
  }
  const double qm = std::accumulate(q.begin(), q.end(), 0.0) / q.size();
  const double cm = std::accumulate(c.begin(), c.end(), 0.0) / c.size();
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k) {
    num += (q[k] - qm) * (c[k] - cm);
    den += (c[k] - cm) * (c[k] - cm);
  }
  if (den == 0.0) throw NumericalError("cubic energy part is constant; coefficient not identifiable");
  return -num / den;
}

double relative_drift(const std::vector<double>& series) {
  if (series.empty()) return 0.0;
  double worst = 0.0;
  for (double v : series) worst = std::max(worst, std::abs(v - series.front()));
  return series.front() != 0.0 ? worst / std::abs(series.front()) : worst;
}

}  // namespace kp5
