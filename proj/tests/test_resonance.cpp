#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "kp5/errors.hpp"
#include "kp5/resonance.hpp"

using namespace kp5;

TEST_CASE("omega_gap examples") {
  CHECK(omega_gap(1, 0) == 0.0);
  CHECK(omega_gap(2, 1) == 30.0);
  CHECK(omega_gap(1, -1) == -30.0);
  CHECK(omega_gap_monomial(2, 1) == 30.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int k = 0; k < 1000; ++k) {
    const double a = u(rng), b = u(rng);
    CHECK(omega_gap(a, b) == doctest::Approx(omega_gap_monomial(a, b)).epsilon(1e-8).scale(1e-6));
  }
}

TEST_CASE("frequency triple ordering") {
  const auto t = FrequencyTriple::of(2, 5);
  CHECK(t.xi2 == -3);
  CHECK(t.min_abs == 2);
  CHECK(t.med_abs == 3);
  CHECK(t.max_abs == 5);
}

TEST_CASE("gap bounds examples") {
  const GapBounds b = gap_bounds_check(2, 1);
  CHECK(b.lower == 4.0);
  CHECK(b.upper == 81.0);
  CHECK(b.value == 30.0);
  CHECK(b.pass);
  const GapBounds z = gap_bounds_check(1, 0);
  CHECK(z.lower == 0.0);
  CHECK(z.upper == 0.0);
  CHECK(z.value == 0.0);
  CHECK(z.pass);
}

TEST_CASE("gap bounds on a bounded box") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-100, 100);
  int failures = 0;
  for (int k = 0; k < 1000000; ++k)
    if (!gap_bounds_check(u(rng), u(rng)).pass) ++failures;
  CHECK(failures == 0);
}

TEST_CASE("gap bounds log-uniform sweep") {
  const auto start = std::chrono::steady_clock::now();
  const ResonanceSweep r = resonance_sweep(1000000, 2024);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(r.samples == 1000000);
  CHECK(r.failures == 0);
  CHECK(r.max_lower_slack <= 1e-9);
  CHECK(r.max_upper_slack <= 1e-9);
  CHECK(secs < 10.0);
  // the upper constant is approached but the lower one has room: min |Omega| / (xi_min xi_max^4) = 5/2^4... 
  CHECK(r.max_lower_slack < 0.0);
}

TEST_CASE("permutation identities") {
  // Omega(xi, xi1) = -Omega(xi - xi1, xi1) fails: (2, 1) gives 30 against 0.
  CHECK(omega_gap(2, 1) == 30.0);
  CHECK(-omega_gap(1, 1) == 0.0);
  const IdentitySweep s = omega_identity_sweep(100000, 5);
  CHECK(s.samples == 100000);
  CHECK(s.swap_defect < 1e-12);
  CHECK(s.reversal_defect < 1e-12);
  CHECK(s.reflection_defect < 1e-12);
  CHECK(s.literal_defect > 0.1);
}

TEST_CASE("full resonance examples") {
  const auto kp1 = DispersionSign::kp1(), kp2 = DispersionSign::kp2();
  CHECK(full_resonance(2, 1, 4, 2, kp1) == 30.0);
  CHECK(full_resonance(2, 1, -1.5, -0.75, kp2) == 30.0);
  CHECK(full_resonance(2, 1, 1, 0, kp2) == 30.5);
  CHECK(full_resonance(2, 1, 1, 0, kp1) == 29.5);
  CHECK_THROWS_AS(full_resonance(2, 2, 1, 0, kp1), DomainError);
  CHECK_THROWS_AS(full_resonance(0, 1, 1, 0, kp1), DomainError);
  // transverse-resonant line: mu = xi mu1 / xi1 with exact products
  for (double mu1 : {0.5, -3.0, 7.25}) CHECK(full_resonance(4, 2, 2 * mu1, mu1, kp1) == omega_gap(4, 2));
}

TEST_CASE("KP-II sign coherence") {
  const double g = omega_gap(2, 1), t = transverse_resonance(2, 1, 1, 0, DispersionSign::kp2());
  CHECK(std::abs(g + t) == std::abs(g) + std::abs(t));
  const SignCoherenceReport r = sign_coherence_check(100000, 17);
  CHECK(r.samples == 100000);
  CHECK(r.kp2_compound == r.samples);
  CHECK(r.kp1_conflicts > 0);
  CHECK(r.kp1_conflict_fraction() > 0.0);
}
