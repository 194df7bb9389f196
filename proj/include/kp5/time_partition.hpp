#pragma once

#include <vector>

namespace kp5 {

/// Smooth bump: 1 on [-1/4, 1/4], 0 outside (-3/4, 3/4), and
/// eta(t) + eta(t - 1) = 1 on [1/4, 3/4], so integer translates sum to one.
double bump_eta(double t);

/// eta_j(t) = eta(N1 (t - j T/N1) / T) and its fattened companion
/// eta~_j(t) = eta(N1 (t - j T/N1) / (4T)), sampled on a time mesh for j = 0..N1.
struct TimePartition {
  int N1 = 0;
  double T = 0.0;
  std::vector<double> mesh;
  std::vector<std::vector<double>> eta;        // [j][k]
  std::vector<std::vector<double>> eta_tilde;  // [j][k]

  double center(int j) const { return j * T / N1; }
  /// Interval I_j = [T/N1 (j - 1/2), T/N1 (j + 1/2)].
  double interval_lo(int j) const { return T / N1 * (j - 0.5); }
  double interval_hi(int j) const { return T / N1 * (j + 0.5); }
};

TimePartition time_partition(int N1, double T, const std::vector<double>& mesh);

/// max_k |sum_j eta_j(t_k) - 1| over mesh points inside [0, T].
double partition_defect(const TimePartition& p);

}  // namespace kp5
