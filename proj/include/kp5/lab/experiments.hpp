#pragma once

#include <string>
#include <vector>

#include "kp5/evolution.hpp"
#include "kp5/lab/config.hpp"

namespace kp5::lab {

// ---- dilation bookkeeping -------------------------------------------------

struct ScalingBook {
  double epsilon = 0.0;
  double max_norm = 0.0;
  double T = 0.0;
  double lambda = 0.0;   // eps^{1/2} (1 + max norm)^{-1/2}
  double T_eps = 0.0;    // lambda^{-5} T
};

/// DomainError unless eps in (0, 1), T > 0 and every norm >= 0.
ScalingBook scaling_bookkeeping(const std::vector<double>& norms, double epsilon, double T);

// ---- time splitting -------------------------------------------------------

struct CenterRow {
  int j = 0;
  double lo = 0.0, hi = 0.0;  // record span of I_j
  int samples = 0;
  double center = 0.0;        // argmin of ||P_N u|| over the record points in I_j
  double at_center = 0.0;     // ||P_N u(c)||^2
  double mean = 0.0;          // |I_j|^{-1} int_{I_j} ||P_N u||^2 dt (trapezoid)
  bool holds = false;         // at_center <= mean (1 + 1e-10)
};

struct CenterReport {
  double N = 0.0;
  int intervals = 0;
  std::vector<CenterRow> rows;
  bool all_hold() const;
};

/// I_j = [T/n (j - 1/2), T/n (j + 1/2)] cut to [0, T], j = 0..n. ContractError
/// when an interval holds fewer than 4 record times.
CenterReport time_split_centers(const TrajectoryRecord& traj, double N, int intervals);

// ---- difference / sum experiment -----------------------------------------

struct UniquenessLevel {
  double dt_a = 0.0, dt_b = 0.0;
  std::vector<double> times;
  std::vector<std::vector<double>> w_norm;  // [s index][record]
  std::vector<std::vector<double>> z_norm;
  double max_w = 0.0;                       // max_t ||w||_2
  double w_residual = 0.0;                  // difference equation, relative to max ||w||
  double w_residual_z = 0.0;                // same residual relative to max ||z||
  double z_residual = 0.0;                  // sum equation, relative to max ||z||
  double reconstruction = 0.0;              // max |u1 - (z + w)/2| + |u2 - (z - w)/2|
  bool diverged = false;
};

struct UniquenessReport {
  std::vector<double> sobolev;
  std::vector<UniquenessLevel> levels;
  std::vector<double> ratios;  // max_w[k] / max_w[k + 1]
  double identical_max_w = 0.0;  // scheme a against itself
};

/// Two schemes from the same data; level k halves both dt k times.
UniquenessReport uniqueness_experiment(const RunConfig& cfg);

}  // namespace kp5::lab
