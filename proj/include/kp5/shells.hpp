#pragma once

#include <vector>

#include "kp5/field.hpp"

namespace kp5 {

/// Littlewood-Paley cutoffs in the x-frequency.
///
/// kappa is 1 on |xi| <= 5/4, 0 on |xi| >= 8/5 and monotone in between; the
/// transition is the smooth step f(s)/(f(s)+f(1-s)) with f(s) = exp(-1/(2s)).
/// phi(xi) = kappa(xi/2) - kappa(xi), phi_N(xi) = phi(xi/N).
namespace shell {

inline constexpr double kPlateau = 5.0 / 4.0;
inline constexpr double kSupport = 8.0 / 5.0;

double smooth_step(double s);
double kappa(double xi);
double phi(double xi);
double phi_N(double xi, double N);
double phi_tilde_N(double xi, double N);

}  // namespace shell

/// Dyadic shells N = 2^k resolvable on a grid's x-lattice.
///
/// N_min is the largest dyadic with (8/5) N_min <= dxi, so no nonzero lattice
/// frequency lies below the lowest shell. N_max is the largest dyadic whose
/// plateau (8/5) N starts inside the 2/3 dealiasing radius. The edge shells
/// absorb everything beyond them, so the band sums to one on xi != 0.
class ShellSystem {
 public:
  explicit ShellSystem(const Grid2D& grid);

  double N_min() const { return N_min_; }
  double N_max() const { return N_max_; }
  const std::vector<double>& scales() const { return scales_; }
  bool contains(double N) const;

  /// Weight of shell N at x-frequency xi (edge shells absorbing).
  double weight(double xi, double N) const;
  /// Sum of the in-band shells N/2, N, 2N.
  double tilde_weight(double xi, double N) const;

 private:
  double N_min_;
  double N_max_;
  std::vector<double> scales_;
};

bool is_dyadic(double N);

/// P_N.
Field2D project_shell(const Field2D& u, double N);
/// P_{<=N}: multiplier kappa(xi / 2N), i.e. the sum of phi_M over M <= N.
Field2D project_below(const Field2D& u, double N);
/// P_{<<N}, taken as P_{<=N/8}.
Field2D project_much_below(const Field2D& u, double N);
/// P~_N = P_{N/2} + P_N + P_{2N}.
Field2D project_tilde(const Field2D& u, double N);

}  // namespace kp5
