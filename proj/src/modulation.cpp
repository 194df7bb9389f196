#include "kp5/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kp5/errors.hpp"
#include "kp5/fft.hpp"
#include "kp5/shells.hpp"
#include "kp5/time_partition.hpp"

namespace kp5 {

double ModulationWindow::operator()(double t, double t0, double t1) const {
  const double mid = 0.5 * (t0 + t1), half = 0.5 * span * (t1 - t0);
  return bump_eta(0.75 * (t - mid) / half);
}

std::vector<double> modulation_weights(double sigma, int shells) {
  std::vector<double> w(shells);
  w[0] = shell::kappa(sigma);
  double below = w[0];  // kappa(sigma / L_prev)
  for (int k = 1; k < shells; ++k) {
    if (k + 1 == shells) {
      w[k] = 1.0 - below;
    } else {
      const double next = shell::kappa(sigma / std::ldexp(1.0, k));
      w[k] = next - below;
      below = next;
    }
  }
  return w;
}

ModulationDecomposition modulation_besov(const TrajectoryRecord& traj, const ModulationWindow& window,
                                         DispersionSign delta) {
  const auto& t = traj.times;
  const int nt = static_cast<int>(t.size());
  if (nt < 8) throw ContractError("modulation_besov: need at least 8 record times");
  if (!(window.span > 0.0 && window.span <= 1.0)) throw ConfigError("modulation_besov: window span must be in (0, 1]");
  const double dt = (t.back() - t.front()) / (nt - 1);
  for (int n = 1; n < nt; ++n)
    if (std::abs(t[n] - t[n - 1] - dt) > 1e-9 * dt) throw ContractError("modulation_besov: non-uniform record times");

  const Grid2D& g = traj.grid();
  const std::size_t np = g.size();
  std::vector<Spectrum2D> spec;
  spec.reserve(nt);
  for (const Field2D& f : traj.fields) spec.push_back(to_spectrum(f));
  std::vector<double> win(nt), w(np);
  for (int n = 0; n < nt; ++n) win[n] = window(t[n], t.front(), t.back());
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) w[g.index(i, j)] = lattice_omega(g, i, j, delta);

  const double dsigma = 2.0 * std::numbers::pi / (nt * dt);
  ModulationDecomposition out;
  out.sigma_nyquist = std::numbers::pi / dt;
  // enough shells that the top one starts beyond the Nyquist modulation
  int shells = 1;
  while (1.25 * std::ldexp(1.0, shells - 1) < out.sigma_nyquist) ++shells;
  shells = std::max(shells, 2);
  for (int k = 0; k < shells; ++k) out.L.push_back(std::ldexp(1.0, k));

  // weights depend on sigma only
  std::vector<std::vector<double>> wt(nt);
  std::vector<double> sig(nt);
  for (int k = 0; k < nt; ++k) {
    const int kk = k <= nt / 2 ? k : k - nt;  // symmetric enough for odd nt too
    sig[k] = kk * dsigma;
    wt[k] = modulation_weights(sig[k], shells);
    double s = 0.0;
    for (double v : wt[k]) s += v;
    out.partition_defect = std::max(out.partition_defect, std::abs(s - 1.0));
  }

  std::vector<double> mass(shells, 0.0), sq(shells, 0.0);
  std::vector<cplx> in(nt), F(nt);
  for (std::size_t p = 0; p < np; ++p) {
    bool any = false;
    for (int n = 0; n < nt; ++n) {
      const cplx c = spec[n].coeffs[p];
      any = any || c != cplx(0.0);
      // F(sigma) = dt sum_n e^{i sigma t_n} win u^(t_n) e^{i t_n w}
      in[n] = dt * win[n] * c * std::polar(1.0, (t[n] - t.front()) * w[p]);
    }
    if (!any) continue;
    fft::backward_1d(in, F, nt);
    for (int k = 0; k < nt; ++k) {
      const double a = std::norm(F[k]);
      for (int s = 0; s < shells; ++s) {
        mass[s] += wt[k][s] * a;
        sq[s] += wt[k][s] * wt[k][s] * a;
      }
    }
  }
  const double scale = g.cell_area() * dsigma / (2.0 * std::numbers::pi);
  for (int s = 0; s < shells; ++s) {
    out.shell_mass.push_back(scale * mass[s]);
    out.shell_norm.push_back(std::sqrt(scale * sq[s]));
    out.besov += std::sqrt(out.L[s]) * out.shell_norm.back();
  }
  // time-side mass, independent of the sigma transform: dt sum win^2 ||u(t_n)||^2
  for (int n = 0; n < nt; ++n) {
    const double nu = l2_norm(traj.fields[n]);
    out.total_mass += dt * win[n] * win[n] * nu * nu;
  }
  return out;
}

}  // namespace kp5
