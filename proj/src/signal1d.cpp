#include "kp5/signal1d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "kp5/errors.hpp"
#include "kp5/fft.hpp"
#include "kp5/grid.hpp"
#include "kp5/shells.hpp"

namespace kp5 {

Signal1D::Signal1D(double L_, std::vector<cplx> s) : L(L_), samples(std::move(s)) {
  if (!(L > 0.0) || !std::isfinite(L)) throw ConfigError("signal period must be positive");
  if (samples.size() < 8 || !is_power_of_two(static_cast<long>(samples.size())))
    throw ConfigError("signal length must be a power of two >= 8");
}

Signal1D Signal1D::from_real(double L, const std::vector<double>& v) {
  return Signal1D(L, std::vector<cplx>(v.begin(), v.end()));
}

Signal1D Signal1D::from_function(double L, int n, const std::function<double(double)>& f) {
  std::vector<cplx> s(n);
  for (int i = 0; i < n; ++i) s[i] = f(i * L / n);
  return Signal1D(L, std::move(s));
}

double Signal1D::xi(int i) const { return 2.0 * std::numbers::pi * k(i) / L; }

std::vector<cplx> series_coefficients(const Signal1D& u) {
  std::vector<cplx> c(u.samples.size());
  fft::forward_1d(u.samples, c, u.n());
  const double inv = 1.0 / u.n();
  for (auto& v : c) v *= inv;
  return c;
}

Signal1D from_series(double L, const std::vector<cplx>& c) {
  std::vector<cplx> s(c.size());
  fft::backward_1d(c, s, static_cast<int>(c.size()));
  return Signal1D(L, std::move(s));
}

Signal1D apply_multiplier_1d(const Signal1D& u, const std::function<cplx(double)>& m) {
  auto c = series_coefficients(u);
  for (int i = 0; i < u.n(); ++i) c[i] *= m(u.xi(i));
  return from_series(u.L, c);
}

namespace {
void same_lattice(const Signal1D& a, const Signal1D& b) {
  if (a.L != b.L || a.n() != b.n()) throw ContractError("signals live on different lattices");
}
}  // namespace

Signal1D operator+(const Signal1D& a, const Signal1D& b) {
  same_lattice(a, b);
  Signal1D r = a;
  for (int i = 0; i < a.n(); ++i) r.samples[i] += b.samples[i];
  return r;
}

Signal1D operator-(const Signal1D& a, const Signal1D& b) {
  same_lattice(a, b);
  Signal1D r = a;
  for (int i = 0; i < a.n(); ++i) r.samples[i] -= b.samples[i];
  return r;
}

Signal1D operator*(cplx s, const Signal1D& a) {
  Signal1D r = a;
  for (auto& v : r.samples) v *= s;
  return r;
}

Signal1D pointwise(const Signal1D& a, const Signal1D& b) {
  same_lattice(a, b);
  Signal1D r = a;
  for (int i = 0; i < a.n(); ++i) r.samples[i] *= b.samples[i];
  return r;
}

double l2_norm(const Signal1D& u) {
  double acc = 0.0;
  for (const auto& v : u.samples) acc += std::norm(v);
  return std::sqrt(acc * u.dx());
}

double sup_norm(const Signal1D& u) {
  double m = 0.0;
  for (const auto& v : u.samples) m = std::max(m, std::abs(v));
  return m;
}

double imag_defect(const Signal1D& u) {
  double m = 0.0;
  for (const auto& v : u.samples) m = std::max(m, std::abs(v.imag()));
  const double s = sup_norm(u);
  return s > 0.0 ? m / s : m;
}

int spectral_extent(const Signal1D& u, double rel_floor) {
  const auto c = series_coefficients(u);
  double peak = 0.0;
  for (const auto& v : c) peak = std::max(peak, std::abs(v));
  int ext = 0;
  for (int i = 0; i < u.n(); ++i)
    if (std::abs(c[i]) > rel_floor * peak) ext = std::max(ext, std::abs(u.k(i)));
  return ext;
}

Signal1D project_shell_1d(const Signal1D& u, double N) {
  return apply_multiplier_1d(u, [N](double xi) { return cplx(shell::phi_N(xi, N)); });
}

Signal1D project_tilde_1d(const Signal1D& u, double N) {
  return apply_multiplier_1d(u, [N](double xi) { return cplx(shell::phi_tilde_N(xi, N)); });
}

Signal1D deriv_1d(const Signal1D& u) {
  const double nyq = std::numbers::pi * u.n() / u.L;
  return apply_multiplier_1d(u, [nyq](double xi) { return std::abs(xi) >= nyq ? cplx(0.0) : cplx(0.0, xi); });
}

Signal1D random_signal(double L, int n, double band_lo, double band_hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> c(n, 0.0);
  const double dxi = 2.0 * std::numbers::pi / L;
  for (int i = 1; i < n / 2; ++i) {
    const double xi = i * dxi;
    if (xi < band_lo || xi > band_hi) continue;
    const cplx z(g(rng), g(rng));
    c[i] = z;
    c[n - i] = std::conj(z);
  }
  Signal1D s = from_series(L, c);
  for (auto& v : s.samples) v = v.real();
  const double m = sup_norm(s);
  if (m == 0.0) throw ConfigError("random signal band contains no lattice frequency");
  for (auto& v : s.samples) v /= m;
  return s;
}

}  // namespace kp5
