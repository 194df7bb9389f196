#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kp5/errors.hpp"
#include "kp5/kernel.hpp"
#include "kp5/shells.hpp"

using namespace kp5;
constexpr double pi = std::numbers::pi;

namespace {
double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("kernel_G arguments") {
  CHECK_THROWS_AS(kernel_G(0, 0, 0.0, 2, DispersionSign::kp1()), DomainError);
  CHECK_THROWS_AS(kernel_G(0, 0, -1.0, 2, DispersionSign::kp1()), DomainError);
  CHECK_THROWS_AS(kernel_G(0, 0, 1.0, 0.0, DispersionSign::kp1()), DomainError);
  CHECK_THROWS_AS(kernel_G_direct(0, 0, 0.0, 2, DispersionSign::kp1()), DomainError);
}

TEST_CASE("Fresnel-reduced kernel against direct 2D quadrature") {
  struct Case {
    double x, y, t, N;
    int d;
  };
  for (Case c : {Case{0.3, 0.7, 0.5, 2, 1}, Case{-1.0, 0.2, 0.1, 2, 1}, Case{2.0, -1.5, 1.0, 1, -1},
                 Case{0.0, 0.0, 0.2, 1, 1}}) {
    const cplx a = kernel_G(c.x, c.y, c.t, c.N, DispersionSign(c.d));
    const cplx b = kernel_G_direct(c.x, c.y, c.t, c.N, DispersionSign(c.d));
    CHECK(rel(a, b) < 1e-4);
    // xi -> -xi symmetry: the kernel is real
    CHECK(std::abs(b.imag()) < 1e-10 * std::abs(b));
  }
}

TEST_CASE("kernel symmetries") {
  const DispersionSign d = DispersionSign::kp2();
  // even in y
  CHECK(kernel_G(0.4, 1.3, 0.7, 2, d) == kernel_G(0.4, -1.3, 0.7, 2, d));
  // G(x, y, t; N) = N^4 G(N x, N^3 y, N^5 t; 1)
  for (double N : {2.0, 4.0}) {
    const cplx lhs = kernel_G(0.37, 0.21, 0.05, N, d);
    const cplx rhs = std::pow(N, 4) * kernel_G(N * 0.37, std::pow(N, 3) * 0.21, std::pow(N, 5) * 0.05, 1.0, d);
    CHECK(rel(lhs, rhs) < 1e-10);
  }
  // t -> 0 limit at the origin: G -> 2 sqrt(pi/t) cos(pi/4) int eta^{1/2} phi_N
  const double t = 1e-9;
  const double m = kernel_G_ceiling(t, 1.0) / (2 * std::sqrt(pi / t));
  CHECK(kernel_G(0, 0, t, 1.0, DispersionSign::kp1()).real() ==
        doctest::Approx(2 * std::sqrt(pi / t) * std::cos(pi / 4) * m).epsilon(1e-6));
}

TEST_CASE("sampled sup stays under the triangle-inequality ceiling") {
  for (double t : {0.01, 1.0})
    for (double N : {2.0, 8.0}) {
      const KernelSupSample s = kernel_sup(t, N, DispersionSign::kp1());
      CHECK(s.sup_abs_G > 0.0);
      CHECK(s.sup_abs_G <= kernel_G_ceiling(t, N));
      // the recorded point reproduces the value
      CHECK(std::abs(kernel_G(s.x, 0.0, t, N, DispersionSign::kp1())) == doctest::Approx(s.sup_abs_G).epsilon(1e-9));
    }
}

TEST_CASE("large tN^5: stationary-phase constant") {
  // sup|G| t N -> 2 sqrt(pi) sqrt(2 pi / 20) max_eta phi(eta) / eta
  double best = 0;
  for (double e = 1.25; e < 3.2; e += 1e-5) best = std::max(best, shell::phi(e) / e);
  const double c_inf = 2 * std::sqrt(pi) * std::sqrt(2 * pi / 20) * best;
  for (auto [t, N] : {std::pair{1.0, 8.0}, std::pair{10.0, 16.0}}) {
    CHECK(kernel_sup(t, N, DispersionSign::kp2()).c2_ratio == doctest::Approx(c_inf).epsilon(1e-3));
  }
}

TEST_CASE("decay sweep: 1/(tN) scaling holds with one constant, the sqrt(t) bound does not scale") {
  const KernelDecayReport rep = kernel_decay_sweep({0.01, 1.0}, {2, 8}, DispersionSign::kp1());
  REQUIRE(rep.rows.size() == 4);
  CHECK(rep.spread(0.5) <= 5.0);
  // the t^{-1/2} N^{3/2} ratio decays like (t N^5)^{-1/2} past the oscillatory threshold
  CHECK(rep.spread(0.0) > 100.0);
  // ratio_theta = ratio_0^{1-2 theta} ratio_{1/2}^{2 theta} pointwise
  for (const auto& r : rep.rows)
    CHECK(r.ratio(0.25) == doctest::Approx(std::sqrt(r.ratio(0.0) * r.ratio(0.5))).epsilon(1e-12));
}
