#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "kp5/errors.hpp"
#include "kp5/strichartz.hpp"

using namespace kp5;

namespace {
const AdmissiblePair p44{Exponent(4), Exponent(4)};
double unit_horizon(double N) { return kSaturatedHorizon / std::pow(N, 5); }
}  // namespace

TEST_CASE("pulse weight against Simpson quadrature") {
  for (double w : {0.0, 3.0, -40.0, 314.159, 1e4})
    for (double tau : {0.3e-3, 1.1e-3, 5e-3}) {
      const double sf = 2e-3;
      const int n = 20000;
      const double b = std::min(tau, sf), h = b / n;
      cplx acc = 0.0;
      for (int k = 0; k <= n; ++k) {
        const double s = k * h, v = std::sin(M_PI * s / sf);
        acc += (k == 0 || k == n ? 1.0 : k % 2 ? 4.0 : 2.0) * std::polar(v * v, s * w);
      }
      acc *= h / 3.0;
      CHECK(std::abs(pulse_weight(w, tau, sf) - acc) < 1e-9 * sf);
    }
}

TEST_CASE("unitarity at (inf, 2)") {
  const auto r = strichartz_probe(8, {Exponent::infinity(), Exponent(2)}, unit_horizon(8), 1,
                                  ProbeMode::homogeneous, 3);
  CHECK(std::abs(r.max_ratio - 1.0) < 1e-12);
  CHECK(r.boundary_mass < 1e-6);
}

TEST_CASE("(4,4) ratio bounded across N") {
  double lo = 1e300, hi = 0.0;
  for (double N : {4.0, 8.0, 16.0, 32.0}) {
    const auto r = strichartz_probe(N, p44, unit_horizon(N), 2, ProbeMode::homogeneous, 11,
                                    N == 8 ? DispersionSign::kp1() : DispersionSign::kp2());
    REQUIRE(r.ratios.size() == 2);
    CHECK(r.median_ratio <= r.max_ratio);
    CHECK(r.boundary_mass < 1e-6);
    lo = std::min(lo, r.max_ratio);
    hi = std::max(hi, r.max_ratio);
  }
  CHECK(hi / lo <= 3.0);
  CHECK(lo > 0.05);
}

TEST_CASE("retarded ratio bounded") {
  const auto a = strichartz_probe(4, p44, unit_horizon(4), 1, ProbeMode::retarded, 5);
  const auto b = strichartz_probe(32, p44, unit_horizon(32), 1, ProbeMode::retarded, 5);
  CHECK(std::isfinite(a.max_ratio));
  CHECK(a.max_ratio > 0.0);
  CHECK(std::max(a.max_ratio, b.max_ratio) / std::min(a.max_ratio, b.max_ratio) <= 3.0);
}

TEST_CASE("probe arguments and monitor") {
  CHECK_THROWS_AS(strichartz_probe(3, p44, 1e-3, 1, ProbeMode::homogeneous, 1), ParameterError);
  CHECK_THROWS_AS(strichartz_probe(4, {Exponent(2), Exponent(2)}, 1e-3, 1, ProbeMode::homogeneous, 1),
                  DomainError);
  CHECK_THROWS_AS(strichartz_probe(4, p44, 1e-3, 0, ProbeMode::homogeneous, 1), ConfigError);
  ProbeGeometry small;
  small.Lx = 300.0;
  small.nx = 1024;
  small.packet_x = 60.0;
  CHECK_THROWS_AS(strichartz_probe(4, p44, unit_horizon(4), 1, ProbeMode::homogeneous, 1,
                                   DispersionSign::kp2(), small),
                  ProbeInvalidError);
}
