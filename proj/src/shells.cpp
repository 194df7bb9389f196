#include "kp5/shells.hpp"

#include <cmath>
#include <sstream>

#include "kp5/errors.hpp"

namespace kp5 {
namespace shell {

double smooth_step(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double a = std::exp(-0.5 / s);
  const double b = std::exp(-0.5 / (1.0 - s));
  return a / (a + b);
}

double kappa(double xi) {
  return 1.0 - smooth_step((std::abs(xi) - kPlateau) / (kSupport - kPlateau));
}

double phi(double xi) { return kappa(std::abs(xi) / 2.0) - kappa(std::abs(xi)); }

double phi_N(double xi, double N) { return phi(xi / N); }

double phi_tilde_N(double xi, double N) {
  return phi_N(xi, N / 2.0) + phi_N(xi, N) + phi_N(xi, 2.0 * N);
}

}  // namespace shell

bool is_dyadic(double N) {
  if (!(N > 0.0) || !std::isfinite(N)) return false;
  int e = 0;
  return std::frexp(N, &e) == 0.5;
}

ShellSystem::ShellSystem(const Grid2D& grid) {
  const double dxi = grid.dxi();
  N_min_ = std::exp2(std::floor(std::log2(dxi / shell::kSupport)));
  while (shell::kSupport * 2.0 * N_min_ <= dxi) N_min_ *= 2.0;
  const double radius = grid.dealias_radius();
  N_max_ = std::exp2(std::floor(std::log2(radius / shell::kSupport)));
  while (shell::kSupport * 2.0 * N_max_ <= radius) N_max_ *= 2.0;
  while (N_max_ > N_min_ && shell::kSupport * N_max_ > radius) N_max_ /= 2.0;
  if (N_max_ < N_min_) N_max_ = N_min_;
  for (double N = N_min_; N <= N_max_; N *= 2.0) scales_.push_back(N);
}

bool ShellSystem::contains(double N) const {
  return is_dyadic(N) && N >= N_min_ && N <= N_max_;
}

double ShellSystem::weight(double xi, double N) const {
  if (xi == 0.0) return 0.0;
  const double a = std::abs(xi);
  const bool lowest = N == N_min_;
  const bool highest = N == N_max_;
  if (lowest && highest) return 1.0;
  if (lowest) return shell::kappa(a / (2.0 * N));
  if (highest) return 1.0 - shell::kappa(a / N);
  return shell::phi_N(a, N);
}

double ShellSystem::tilde_weight(double xi, double N) const {
  double w = 0.0;
  for (double M : {N / 2.0, N, 2.0 * N})
    if (contains(M)) w += weight(xi, M);
  return w;
}

namespace {

void require_in_band(const ShellSystem& shells, double N) {
  if (!shells.contains(N)) {
    std::ostringstream msg;
    msg << "dyadic scale N=" << N << " outside resolvable band [" << shells.N_min() << ", "
        << shells.N_max() << "]";
    throw RangeError(msg.str());
  }
}

Field2D x_multiplier(const Field2D& u, const std::function<double(double)>& m) {
  const Grid2D& g = u.grid();
  std::vector<double> w(g.nx());
  for (int i = 0; i < g.nx(); ++i) w[i] = m(g.xi(i));
  return apply_multiplier(u, [&](int i, int) { return cplx(w[i], 0.0); }, u.zero_x_mean());
}

}  // namespace

Field2D project_shell(const Field2D& u, double N) {
  ShellSystem shells(u.grid());
  require_in_band(shells, N);
  return x_multiplier(u, [&](double xi) { return shells.weight(xi, N); });
}

Field2D project_tilde(const Field2D& u, double N) {
  ShellSystem shells(u.grid());
  require_in_band(shells, N);
  return x_multiplier(u, [&](double xi) { return shells.tilde_weight(xi, N); });
}

Field2D project_below(const Field2D& u, double N) {
  if (!is_dyadic(N)) throw RangeError("project_below needs a dyadic scale");
  return x_multiplier(u, [&](double xi) { return shell::kappa(xi / (2.0 * N)); });
}

Field2D project_much_below(const Field2D& u, double N) { return project_below(u, N / 8.0); }

}  // namespace kp5
