#include "kp5/spectral_ops.hpp"

#include <cmath>

#include "kp5/errors.hpp"
#include "kp5/shells.hpp"

namespace kp5 {
namespace {

cplx i_pow(int order) {
  static const cplx units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return units[((order % 4) + 4) % 4];
}

}  // namespace

double bracket(double x) { return std::sqrt(1.0 + x * x); }

double sobolev_norm(const Field2D& u, double s1, double s2) {
  if (s1 == 0.0 && s2 == 0.0) return l2_norm(u);
  const Spectrum2D s = to_spectrum(u);
  const Grid2D& g = s.grid;
  double acc = 0.0;
  for (int i = 0; i < g.nx(); ++i) {
    const double wx = std::pow(bracket(g.xi(i)), 2.0 * s1);
    for (int j = 0; j < g.ny(); ++j)
      acc += wx * std::pow(bracket(g.mu(j)), 2.0 * s2) * std::norm(s.at(i, j));
  }
  return std::sqrt(acc * g.cell_area());
}

double dyadic_sobolev_norm(const Field2D& u, double s) {
  const ShellSystem shells(u.grid());
  const Spectrum2D spec = to_spectrum(u);
  const Grid2D& g = spec.grid;
  double acc = 0.0;
  for (double N : shells.scales()) {
    double shell_mass = 0.0;
    for (int i = 0; i < g.nx(); ++i) {
      const double w = shells.weight(g.xi(i), N);
      if (w == 0.0) continue;
      for (int j = 0; j < g.ny(); ++j) shell_mass += w * w * std::norm(spec.at(i, j));
    }
    acc += std::pow(bracket(N), 2.0 * s) * shell_mass * g.cell_area();
  }
  return std::sqrt(acc);
}

Field2D frac_deriv_x(const Field2D& u, double theta) {
  if (theta == 0.0) return u;
  const Grid2D& g = u.grid();
  return apply_multiplier(
      u, [&](int i, int) { return cplx(std::pow(bracket(g.xi(i)), theta), 0.0); }, u.zero_x_mean());
}

Field2D homogeneous_deriv_x(const Field2D& u, double gamma) {
  if (gamma < 0.0 && !u.zero_x_mean())
    throw ConstraintError("negative homogeneous x-derivative needs a zero-x-mean field");
  const Grid2D& g = u.grid();
  return apply_multiplier(
      u,
      [&](int i, int) {
        const double xi = std::abs(g.xi(i));
        return cplx(xi == 0.0 ? 0.0 : std::pow(xi, gamma), 0.0);
      },
      true);
}

Field2D deriv_x(const Field2D& u, int order) {
  const Grid2D& g = u.grid();
  const cplx unit = i_pow(order);
  const bool odd = order % 2 != 0;
  return apply_multiplier(
      u,
      [&](int i, int) {
        if (odd && g.is_x_nyquist(i)) return cplx(0.0, 0.0);
        return unit * std::pow(g.xi(i), order);
      },
      u.zero_x_mean() || order > 0);
}

Field2D deriv_y(const Field2D& u, int order) {
  const Grid2D& g = u.grid();
  const cplx unit = i_pow(order);
  const bool odd = order % 2 != 0;
  return apply_multiplier(
      u,
      [&](int, int j) {
        if (odd && g.is_y_nyquist(j)) return cplx(0.0, 0.0);
        return unit * std::pow(g.mu(j), order);
      },
      u.zero_x_mean());
}

Field2D x_antiderivative(const Field2D& u) {
  if (!u.zero_x_mean()) throw ConstraintError("x-antiderivative needs a zero-x-mean field");
  const Grid2D& g = u.grid();
  return apply_multiplier(
      u,
      [&](int i, int) {
        if (i == 0 || g.is_x_nyquist(i)) return cplx(0.0, 0.0);
        return cplx(0.0, -1.0 / g.xi(i));
      },
      true);
}

}  // namespace kp5
