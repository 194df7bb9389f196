#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "kp5/field.hpp"

namespace kp5 {

/// delta = +1 (KP-I) or -1 (KP-II).
class DispersionSign {
 public:
  explicit DispersionSign(int delta);
  static DispersionSign kp1() { return DispersionSign(1); }
  static DispersionSign kp2() { return DispersionSign(-1); }
  int value() const { return delta_; }
  bool operator==(const DispersionSign&) const = default;

 private:
  int delta_;
};

/// w_delta(xi, mu) = xi^5 + delta mu^2 / xi. DomainError at xi = 0.
double omega(double xi, double mu, DispersionSign delta);

/// Lattice phase used by the solver: omega off xi = 0, and 0 on the xi = 0
/// and x-Nyquist lines (the only real-preserving choice there).
double lattice_omega(const Grid2D& grid, int i, int j, DispersionSign delta);

/// U(t): multiply each coefficient by exp(-i t w). This is the exact flow of
/// u_t = -d_x^5 u - delta d_x^{-1} d_y^2 u under the e^{+i x xi} synthesis
/// convention; it equals e^{+itw} under the opposite transform sign convention.
Field2D propagate_linear(const Field2D& u, double t, DispersionSign delta);
Spectrum2D propagate_linear(const Spectrum2D& s, double t, DispersionSign delta);

/// Exact rational with a reserved infinity, for Lebesgue exponents.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational of(std::int64_t n, std::int64_t d = 1);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  Rational operator+(const Rational& o) const { return of(num * o.den + o.num * den, den * o.den); }
  Rational operator-(const Rational& o) const { return of(num * o.den - o.num * den, den * o.den); }
  Rational operator*(const Rational& o) const { return of(num * o.num, den * o.den); }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator<=(const Rational& o) const { return num * o.den <= o.num * den; }
  bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
  std::string str() const;
};

/// Exponent in [1, inf]; stored as its reciprocal so inf is exact.
class Exponent {
 public:
  Exponent(std::int64_t p, std::int64_t q = 1);
  static Exponent infinity();
  bool is_infinite() const { return inverse_.num == 0; }
  Rational inverse() const { return inverse_; }
  double value() const;
  Exponent conjugate() const;
  std::string str() const;
  bool operator==(const Exponent& o) const { return inverse_ == o.inverse_; }

 private:
  explicit Exponent(Rational inverse) : inverse_(inverse) {}
  Rational inverse_;
};

/// beta(q, r) = 2 - 4/r - 5/q, exact.
Rational beta_exact(const Exponent& q, const Exponent& r);
/// Floating form; q, r may be +infinity. DomainError outside [2, inf].
double beta(double q, double r);

bool is_admissible(const Exponent& q, const Exponent& r);
bool is_admissible(double q, double r);

struct AdmissiblePair {
  Exponent q;
  Exponent r;
  Rational beta() const { return beta_exact(q, r); }
};

/// Validates admissibility (DomainError otherwise).
AdmissiblePair make_admissible_pair(const Exponent& q, const Exponent& r);

}  // namespace kp5
