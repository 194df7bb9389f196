#pragma once

#include <cstdint>

#include "kp5/dispersion.hpp"

namespace kp5 {

/// xi, xi1 and xi2 = xi - xi1 with magnitudes sorted.
struct FrequencyTriple {
  double xi;
  double xi1;
  double xi2;
  double min_abs;
  double med_abs;
  double max_abs;

  static FrequencyTriple of(double xi, double xi1);
};

/// Omega(xi, xi1) = xi^5 - xi1^5 - (xi - xi1)^5, evaluated in the factored
/// form 5 xi xi1 xi2 (xi1^2 + xi1 xi2 + xi2^2), which never cancels.
double omega_gap(double xi, double xi1);
/// The same gap by direct monomial expansion (used as a cross-check).
double omega_gap_monomial(double xi, double xi1);

struct GapBounds {
  double lower;
  double value;
  double upper;
  bool pass;
};

inline constexpr double kGapLowerConstant = 4.0 / 16.0;
inline constexpr double kGapUpperConstant = 81.0 / 16.0;

/// (4/16)|xi_min||xi_max|^4 <= |Omega| <= (81/16)|xi_min||xi_max|^4, relative slack 1e-9.
GapBounds gap_bounds_check(double xi, double xi1, double rel_slack = 1e-9);

/// xi^5 - xi1^5 - xi2^5 - delta (xi1 mu - xi mu1)^2 / (xi xi1 xi2).
double full_resonance(double xi, double xi1, double mu, double mu1, DispersionSign delta);
/// The transverse part -delta (xi1 mu - xi mu1)^2 / (xi xi1 xi2).
double transverse_resonance(double xi, double xi1, double mu, double mu1, DispersionSign delta);

struct ResonanceSweep {
  std::uint64_t samples = 0;
  std::uint64_t failures = 0;
  double max_lower_slack = 0.0;  // max (lower - |Omega|) / lower; <= 0 when all pass
  double max_upper_slack = 0.0;  // max (|Omega| - upper) / upper; <= 0 when all pass
  std::uint64_t seed = 0;
};

/// Bound check on log-uniform pairs spanning |xi| in [1e-6, 1e6] with random signs.
ResonanceSweep resonance_sweep(std::uint64_t samples, std::uint64_t seed);

struct IdentitySweep {
  std::uint64_t samples = 0;
  double swap_defect = 0.0;        // max rel |Omega(xi,xi1) - Omega(xi,xi-xi1)|
  double literal_defect = 0.0;     // max rel |Omega(xi,xi1) + Omega(xi-xi1,xi1)|
  double reversal_defect = 0.0;    // max rel |Omega(xi,xi1) + Omega(xi1,xi)|
  double reflection_defect = 0.0;  // max rel |Omega(xi,xi1) + Omega(xi-xi1,-xi1)|
};

IdentitySweep omega_identity_sweep(std::uint64_t samples, std::uint64_t seed);

struct SignCoherenceReport {
  std::uint64_t samples = 0;
  std::uint64_t kp2_compound = 0;   // |R| == |Omega| + |T| exactly for delta = -1
  std::uint64_t kp1_conflicts = 0;  // Omega and T of opposite sign for delta = +1
  double kp1_conflict_fraction() const {
    return samples ? static_cast<double>(kp1_conflicts) / samples : 0.0;
  }
};

/// Samples with xi1 xi2 > 0 (log-uniform magnitudes, common random sign).
SignCoherenceReport sign_coherence_check(std::uint64_t samples, std::uint64_t seed);

}  // namespace kp5
