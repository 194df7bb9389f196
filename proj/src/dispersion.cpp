#include "kp5/dispersion.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "kp5/errors.hpp"

namespace kp5 {

DispersionSign::DispersionSign(int delta) : delta_(delta) {
  if (delta != 1 && delta != -1) throw DomainError("dispersion sign must be +1 (KP-I) or -1 (KP-II)");
}

double omega(double xi, double mu, DispersionSign delta) {
  if (xi == 0.0) throw DomainError("dispersion relation undefined at xi = 0");
  const double xi2 = xi * xi;
  return xi2 * xi2 * xi + delta.value() * mu * mu / xi;
}

double lattice_omega(const Grid2D& grid, int i, int j, DispersionSign delta) {
  if (i == 0 || grid.is_x_nyquist(i)) return 0.0;
  return omega(grid.xi(i), grid.mu(j), delta);
}

Spectrum2D propagate_linear(const Spectrum2D& s, double t, DispersionSign delta) {
  Spectrum2D out = s;
  const Grid2D& g = s.grid;
  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 0; j < g.ny(); ++j) {
      const double phase = -t * lattice_omega(g, i, j, delta);
      out.at(i, j) *= cplx(std::cos(phase), std::sin(phase));
    }
  }
  return out;
}

Field2D propagate_linear(const Field2D& u, double t, DispersionSign delta) {
  if (!u.zero_x_mean()) throw ConstraintError("linear propagator needs a zero-x-mean field");
  if (t == 0.0) return u;
  return to_field(propagate_linear(to_spectrum(u), t, delta), true);
}

Rational Rational::of(std::int64_t n, std::int64_t d) {
  if (d == 0) throw DomainError("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
  return Rational{n / (g == 0 ? 1 : g), d / (g == 0 ? 1 : g)};
}

std::string Rational::str() const {
  std::ostringstream s;
  s << num;
  if (den != 1) s << '/' << den;
  return s.str();
}

Exponent::Exponent(std::int64_t p, std::int64_t q) : inverse_(Rational::of(q, p)) {
  if (p <= 0 || q <= 0 || p < q) throw DomainError("exponent must be a rational in [1, inf)");
}

Exponent Exponent::infinity() { return Exponent(Rational{0, 1}); }

double Exponent::value() const {
  return is_infinite() ? std::numeric_limits<double>::infinity() : 1.0 / inverse_.value();
}

Exponent Exponent::conjugate() const { return Exponent(Rational::of(1) - inverse_); }

std::string Exponent::str() const {
  if (is_infinite()) return "inf";
  return Rational::of(inverse_.den, inverse_.num).str();
}

namespace {

void require_range(const Exponent& e) {
  if (Rational::of(1, 2) < e.inverse()) throw DomainError("exponent " + e.str() + " below 2");
}

Exponent from_double(double p) {
  if (std::isinf(p) && p > 0) return Exponent::infinity();
  if (!(p >= 2.0)) throw DomainError("exponent below 2 or not a number");
  // Exponents in this codebase are integers or simple fractions; 1e6 resolution is ample.
  const double scaled = std::round(p * 1e6);
  if (std::abs(scaled - p * 1e6) > 1e-3) throw DomainError("exponent not representable exactly");
  return Exponent(static_cast<std::int64_t>(scaled), 1000000);
}

}  // namespace

Rational beta_exact(const Exponent& q, const Exponent& r) {
  require_range(q);
  require_range(r);
  return Rational::of(2) - Rational::of(4) * r.inverse() - Rational::of(5) * q.inverse();
}

double beta(double q, double r) { return beta_exact(from_double(q), from_double(r)).value(); }

bool is_admissible(const Exponent& q, const Exponent& r) {
  require_range(q);
  require_range(r);
  const Rational half = Rational::of(1, 2);
  const Rational upper = half - r.inverse();
  const Rational lower = half * upper;
  if (!(lower <= q.inverse() && q.inverse() <= upper)) return false;
  if (r.is_infinite() && (q == Exponent(2) || q == Exponent(4))) return false;
  return true;
}

bool is_admissible(double q, double r) { return is_admissible(from_double(q), from_double(r)); }

AdmissiblePair make_admissible_pair(const Exponent& q, const Exponent& r) {
  if (!is_admissible(q, r)) throw DomainError("(" + q.str() + ", " + r.str() + ") is not admissible");
  return AdmissiblePair{q, r};
}

}  // namespace kp5
