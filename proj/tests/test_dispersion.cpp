#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "kp5/dispersion.hpp"
#include "kp5/errors.hpp"
#include "kp5/field.hpp"
#include "kp5/random_fields.hpp"

using namespace kp5;
constexpr double pi = std::numbers::pi;

TEST_CASE("omega examples and oddness") {
  CHECK(omega(1, 2, DispersionSign::kp1()) == 5.0);
  CHECK(omega(1, 2, DispersionSign::kp2()) == -3.0);
  CHECK(omega(-1, 2, DispersionSign::kp1()) == -5.0);
  CHECK_THROWS_AS(omega(0, 1, DispersionSign::kp1()), DomainError);
  CHECK_THROWS_AS(DispersionSign(0), DomainError);
  for (double xi : {0.3, -1.7, 5.0})
    for (double mu : {0.0, 2.5, -4.0})
      for (int d : {1, -1})
        CHECK(omega(-xi, -mu, DispersionSign(d)) == -omega(xi, mu, DispersionSign(d)));
}

TEST_CASE("propagator: identity, unitarity, group law") {
  const Grid2D g = build_grid(2 * pi, 2 * pi, 32, 32);
  for (int d : {1, -1}) {
    const DispersionSign delta(d);
    double worst_norm = 0, worst_group = 0, worst_id = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
      const Field2D u = gaussian_random_field(g, 1000 + s, 1.0, Band{10, 10});
      const double t = 0.01 * static_cast<double>(s % 7 + 1), r = 0.013 * static_cast<double>(s % 5);
      const Field2D ut = propagate_linear(u, t, delta);
      worst_norm = std::max(worst_norm, std::abs(l2_norm(ut) - l2_norm(u)) / l2_norm(u));
      const Field2D a = propagate_linear(propagate_linear(u, r, delta), t, delta);
      const Field2D b = propagate_linear(u, t + r, delta);
      worst_group = std::max(worst_group, l2_norm(a - b) / l2_norm(u));
      worst_id = std::max(worst_id, l2_norm(propagate_linear(u, 0.0, delta) - u) / l2_norm(u));
    }
    CHECK(worst_norm < 1e-12);
    CHECK(worst_group < 1e-12);
    CHECK(worst_id < 1e-14);
  }
}

TEST_CASE("propagator: single mode phase advance") {
  // xi = 1, mu = 2 on the 2pi torus; w = 5 for KP-I.
  const Grid2D g = build_grid(2 * pi, 2 * pi, 16, 16);
  const Field2D u = Field2D::from_function(g, [](double x, double y) { return std::cos(x + 2 * y); }, true);
  const double t = 0.1;
  const Field2D ut = propagate_linear(u, t, DispersionSign::kp1());
  // exp(-i t w) on the e^{i(x+2y)} component: cos(x + 2y - 5t).
  const Field2D expect =
      Field2D::from_function(g, [t](double x, double y) { return std::cos(x + 2 * y - 5 * t); }, true);
  CHECK(l2_norm(ut - expect) / l2_norm(expect) < 1e-13);
  const Spectrum2D s = to_spectrum(ut), s0 = to_spectrum(u);
  const double advance = std::abs(std::arg(s.at(1, 2) / s0.at(1, 2)));
  CHECK(advance == doctest::Approx(5 * t).epsilon(1e-12));

  const Field2D nonzero = Field2D::from_function(g, [](double, double y) { return std::cos(y); }, false);
  CHECK_THROWS_AS(propagate_linear(nonzero, t, DispersionSign::kp1()), ConstraintError);
}

TEST_CASE("propagator solves the linear equation") {
  // centered difference in time against -d_x^5 u - delta d_x^{-1} d_y^2 u
  const Grid2D g = build_grid(2 * pi, 2 * pi, 16, 16);
  const Field2D u =
      Field2D::from_function(g, [](double x, double y) { return std::sin(2 * x - y) + 0.5 * std::cos(x + 3 * y); }, true);
  for (int d : {1, -1}) {
    const DispersionSign delta(d);
    const double h = 1e-5;
    const Field2D dt = (1.0 / (2 * h)) * (propagate_linear(u, h, delta) - propagate_linear(u, -h, delta));
    // exact: u_t = sum over modes of -i w u_hat, w = xi^5 + delta mu^2 / xi
    const Field2D expect = apply_multiplier(
        u,
        [&](int i, int j) -> std::complex<double> {
          if (g.kx(i) == 0 || g.is_x_nyquist(i)) return 0.0;
          return std::complex<double>(0, -omega(g.xi(i), g.mu(j), delta));
        },
        true);
    CHECK(l2_norm(dt - expect) / l2_norm(expect) < 1e-7);
  }
}

TEST_CASE("beta ledger and admissibility") {
  const Exponent inf = Exponent::infinity();
  CHECK(beta_exact(Exponent(4), Exponent(4)) == Rational::of(-1, 4));
  CHECK(is_admissible(Exponent(4), Exponent(4)));
  CHECK(beta_exact(inf, Exponent(2)) == Rational::of(0));
  CHECK(is_admissible(inf, Exponent(2)));
  CHECK_FALSE(is_admissible(Exponent(2), inf));
  CHECK_FALSE(is_admissible(Exponent(4), inf));
  // the N^{-1/2} loss at (2, inf)
  CHECK(beta_exact(Exponent(2), inf) == Rational::of(-1, 2));

  CHECK(beta(4.0, 4.0) == doctest::Approx(-0.25));
  CHECK(beta(std::numeric_limits<double>::infinity(), 2.0) == 0.0);
  CHECK(is_admissible(4.0, 4.0));
  CHECK_FALSE(is_admissible(2.0, std::numeric_limits<double>::infinity()));
  CHECK_THROWS_AS(beta(1.5, 4.0), DomainError);
  CHECK_THROWS_AS(make_admissible_pair(Exponent(2), inf), DomainError);

  // 1/q outside [ (1/2)(1/2 - 1/r), 1/2 - 1/r ]
  CHECK_FALSE(is_admissible(Exponent(2), Exponent(2)));
  CHECK_FALSE(is_admissible(Exponent(100), Exponent(4)));
  CHECK(is_admissible(Exponent(8), Exponent(4)));

  const AdmissiblePair p = make_admissible_pair(Exponent(4), Exponent(4));
  CHECK(p.q.conjugate() == Exponent(4, 3));
  CHECK(inf.conjugate() == Exponent(1));
}
