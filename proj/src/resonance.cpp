#include "kp5/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <random>
#include <vector>

#include "kp5/errors.hpp"
#include "kp5/parallel.hpp"
#include "kp5/random_fields.hpp"

namespace kp5 {
namespace {

constexpr std::size_t kChunks = 64;

double pow5(double x) {
  const double x2 = x * x;
  return x2 * x2 * x;
}

double rel(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

/// Pair generator: half independent log-uniform magnitudes, half a common
/// scale with xi1 / xi uniform in [-2, 3] to cover near-resonant configurations.
struct PairSampler {
  std::mt19937_64 rng;
  std::uniform_real_distribution<double> log_mag{-6.0, 6.0};
  std::uniform_real_distribution<double> ratio{-2.0, 3.0};
  std::bernoulli_distribution coin{0.5};

  explicit PairSampler(std::uint64_t seed) : rng(seed) {}

  double signed_mag() {
    const double m = std::pow(10.0, log_mag(rng));
    return coin(rng) ? m : -m;
  }

  std::pair<double, double> next() {
    if (coin(rng)) return {signed_mag(), signed_mag()};
    const double xi = signed_mag();
    return {xi, xi * ratio(rng)};
  }
};

/// Dyadic pairs: 12-bit mantissas with exponents over +-20 binades (12 decades),
/// so xi - xi1 is exactly representable and the identity checks see only the
/// evaluation error, not rounding of the permuted arguments.
struct DyadicPairSampler {
  std::mt19937_64 rng;
  std::uniform_int_distribution<int> mantissa{1, 4095};
  std::uniform_int_distribution<int> binade{-32, 8};
  std::bernoulli_distribution coin{0.5};

  explicit DyadicPairSampler(std::uint64_t seed) : rng(seed) {}

  double draw() {
    const double m = std::ldexp(static_cast<double>(mantissa(rng)), binade(rng));
    return coin(rng) ? m : -m;
  }
  std::pair<double, double> next() { return {draw(), draw()}; }
};

std::uint64_t chunk_size(std::uint64_t samples, std::size_t chunk) {
  const std::uint64_t base = samples / kChunks;
  return base + (chunk < samples % kChunks ? 1 : 0);
}

}  // namespace

FrequencyTriple FrequencyTriple::of(double xi, double xi1) {
  FrequencyTriple t{xi, xi1, xi - xi1, 0, 0, 0};
  double m[3] = {std::abs(t.xi), std::abs(t.xi1), std::abs(t.xi2)};
  std::sort(m, m + 3);
  t.min_abs = m[0];
  t.med_abs = m[1];
  t.max_abs = m[2];
  return t;
}

double omega_gap(double xi, double xi1) {
  const double xi2 = xi - xi1;
  return 5.0 * xi * xi1 * xi2 * (xi1 * xi1 + xi1 * xi2 + xi2 * xi2);
}

double omega_gap_monomial(double xi, double xi1) { return pow5(xi) - pow5(xi1) - pow5(xi - xi1); }

GapBounds gap_bounds_check(double xi, double xi1, double rel_slack) {
  const FrequencyTriple t = FrequencyTriple::of(xi, xi1);
  const double m4 = t.max_abs * t.max_abs * t.max_abs * t.max_abs;
  GapBounds b;
  b.lower = kGapLowerConstant * t.min_abs * m4;
  b.upper = kGapUpperConstant * t.min_abs * m4;
  b.value = omega_gap(xi, xi1);
  const double a = std::abs(b.value);
  b.pass = b.lower * (1.0 - rel_slack) <= a && a <= b.upper * (1.0 + rel_slack);
  return b;
}

double transverse_resonance(double xi, double xi1, double mu, double mu1, DispersionSign delta) {
  const double xi2 = xi - xi1;
  if (xi == 0.0 || xi1 == 0.0 || xi2 == 0.0)
    throw DomainError("full resonance needs xi, xi1 and xi - xi1 all nonzero");
  const double cross = xi1 * mu - xi * mu1;
  return -delta.value() * cross * cross / (xi * xi1 * xi2);
}

double full_resonance(double xi, double xi1, double mu, double mu1, DispersionSign delta) {
  return omega_gap(xi, xi1) + transverse_resonance(xi, xi1, mu, mu1, delta);
}

ResonanceSweep resonance_sweep(std::uint64_t samples, std::uint64_t seed) {
  std::vector<ResonanceSweep> parts(kChunks);
  parallel_chunks(kChunks, [&](std::size_t c) {
    PairSampler sampler(derive_seed(seed, {0x7265736fULL, c}));
    ResonanceSweep& r = parts[c];
    r.max_lower_slack = -std::numeric_limits<double>::infinity();
    r.max_upper_slack = -std::numeric_limits<double>::infinity();
    const std::uint64_t n = chunk_size(samples, c);
    for (std::uint64_t k = 0; k < n; ++k) {
      const auto [xi, xi1] = sampler.next();
      const GapBounds b = gap_bounds_check(xi, xi1);
      ++r.samples;
      if (!b.pass) ++r.failures;
      if (b.lower > 0.0) {
        r.max_lower_slack = std::max(r.max_lower_slack, (b.lower - std::abs(b.value)) / b.lower);
        r.max_upper_slack = std::max(r.max_upper_slack, (std::abs(b.value) - b.upper) / b.upper);
      }
    }
  });
  ResonanceSweep total;
  total.seed = seed;
  total.max_lower_slack = -std::numeric_limits<double>::infinity();
  total.max_upper_slack = -std::numeric_limits<double>::infinity();
  for (const auto& p : parts) {
    total.samples += p.samples;
    total.failures += p.failures;
    total.max_lower_slack = std::max(total.max_lower_slack, p.max_lower_slack);
    total.max_upper_slack = std::max(total.max_upper_slack, p.max_upper_slack);
  }
  return total;
}

IdentitySweep omega_identity_sweep(std::uint64_t samples, std::uint64_t seed) {
  std::vector<IdentitySweep> parts(kChunks);
  parallel_chunks(kChunks, [&](std::size_t c) {
    DyadicPairSampler sampler(derive_seed(seed, {0x6964656eULL, c}));
    IdentitySweep& r = parts[c];
    const std::uint64_t n = chunk_size(samples, c);
    for (std::uint64_t k = 0; k < n; ++k) {
      const auto [xi, xi1] = sampler.next();
      const double w = omega_gap(xi, xi1);
      ++r.samples;
      r.swap_defect = std::max(r.swap_defect, rel(w, omega_gap(xi, xi - xi1)));
      r.literal_defect = std::max(r.literal_defect, rel(w, -omega_gap(xi - xi1, xi1)));
      r.reversal_defect = std::max(r.reversal_defect, rel(w, -omega_gap(xi1, xi)));
      r.reflection_defect = std::max(r.reflection_defect, rel(w, -omega_gap(xi - xi1, -xi1)));
    }
  });
  IdentitySweep total;
  for (const auto& p : parts) {
    total.samples += p.samples;
    total.swap_defect = std::max(total.swap_defect, p.swap_defect);
    total.literal_defect = std::max(total.literal_defect, p.literal_defect);
    total.reversal_defect = std::max(total.reversal_defect, p.reversal_defect);
    total.reflection_defect = std::max(total.reflection_defect, p.reflection_defect);
  }
  return total;
}

SignCoherenceReport sign_coherence_check(std::uint64_t samples, std::uint64_t seed) {
  std::vector<SignCoherenceReport> parts(kChunks);
  parallel_chunks(kChunks, [&](std::size_t c) {
    std::mt19937_64 rng(derive_seed(seed, {0x7369676eULL, c}));
    std::uniform_real_distribution<double> log_mag(-3.0, 3.0);
    std::uniform_real_distribution<double> mu_dist(-10.0, 10.0);
    std::bernoulli_distribution coin(0.5);
    SignCoherenceReport& r = parts[c];
    const std::uint64_t n = chunk_size(samples, c);
    for (std::uint64_t k = 0; k < n; ++k) {
      const double s = coin(rng) ? 1.0 : -1.0;
      const double xi1 = s * std::pow(10.0, log_mag(rng));
      const double xi2 = s * std::pow(10.0, log_mag(rng));
      const double xi = xi1 + xi2;
      const double mu = mu_dist(rng) * std::pow(10.0, log_mag(rng));
      const double mu1 = mu_dist(rng) * std::pow(10.0, log_mag(rng));
      const double gap = omega_gap(xi, xi1);
      ++r.samples;
      const double t2 = transverse_resonance(xi, xi1, mu, mu1, DispersionSign::kp2());
      const double r2 = gap + t2;
      if (std::abs(r2) == std::abs(gap) + std::abs(t2)) ++r.kp2_compound;
      const double t1 = transverse_resonance(xi, xi1, mu, mu1, DispersionSign::kp1());
      if (t1 != 0.0 && (gap > 0.0) != (t1 > 0.0)) ++r.kp1_conflicts;
    }
  });
  SignCoherenceReport total;
  for (const auto& p : parts) {
    total.samples += p.samples;
    total.kp2_compound += p.kp2_compound;
    total.kp1_conflicts += p.kp1_conflicts;
  }
  return total;
}

}  // namespace kp5
