#pragma once

#include <vector>

#include "kp5/dispersion.hpp"
#include "kp5/evolution.hpp"

namespace kp5 {

/// Time taper: the eta bump stretched so its support [-3/4, 3/4] covers the
/// central `span` fraction of the record (1 on the middle third of it).
struct ModulationWindow {
  double span = 1.0;
  double operator()(double t, double t0, double t1) const;
};

/// Modulation weights in sigma = tau - w: shell 1 is kappa(sigma), shell L >= 2
/// is kappa(sigma / L) - kappa(2 sigma / L), and the top shell takes the rest.
/// They telescope to 1.
std::vector<double> modulation_weights(double sigma, int shells);

struct ModulationDecomposition {
  std::vector<double> L;           // 1, 2, 4, ...
  std::vector<double> shell_mass;  // sum phi_L |F|^2, adds up to total_mass (Plancherel)
  std::vector<double> shell_norm;  // ||Q_L u||_2 = (sum phi_L^2 |F|^2)^{1/2}
  double total_mass = 0.0;         // dt sum_n win^2 ||u(t_n)||^2, computed in time
  double besov = 0.0;              // sum L^{1/2} ||Q_L u||_2
  double sigma_nyquist = 0.0;
  double partition_defect = 0.0;  // max |sum_L phi_L - 1| over the lattice
};

/// Windowed space-time transform in the interaction picture (each mode times
/// e^{itw}, so the time FFT lands directly on sigma = tau - w).
/// ContractError when record times are not uniform.
ModulationDecomposition modulation_besov(const TrajectoryRecord& traj, const ModulationWindow& window,
                                         DispersionSign delta);

}  // namespace kp5
