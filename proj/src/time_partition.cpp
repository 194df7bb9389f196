#include "kp5/time_partition.hpp"

#include <algorithm>
#include <cmath>

#include "kp5/errors.hpp"
#include "kp5/shells.hpp"

namespace kp5 {

double bump_eta(double t) {
  const double a = std::abs(t);
  if (a <= 0.25) return 1.0;
  if (a >= 0.75) return 0.0;
  // smooth_step(s) + smooth_step(1 - s) == 1 gives the partition property.
  return 1.0 - shell::smooth_step(2.0 * (a - 0.25));
}

TimePartition time_partition(int N1, double T, const std::vector<double>& mesh) {
  if (N1 < 2) throw DomainError("time partition needs N1 >= 2");
  if (!(T > 0.0)) throw DomainError("time partition needs T > 0");
  TimePartition p;
  p.N1 = N1;
  p.T = T;
  p.mesh = mesh;
  p.eta.assign(N1 + 1, std::vector<double>(mesh.size()));
  p.eta_tilde.assign(N1 + 1, std::vector<double>(mesh.size()));
  for (int j = 0; j <= N1; ++j) {
    for (std::size_t k = 0; k < mesh.size(); ++k) {
      const double s = N1 * (mesh[k] - p.center(j)) / T;
      p.eta[j][k] = bump_eta(s);
      p.eta_tilde[j][k] = bump_eta(s / 4.0);
    }
  }
  return p;
}

double partition_defect(const TimePartition& p) {
  double worst = 0.0;
  for (std::size_t k = 0; k < p.mesh.size(); ++k) {
    if (p.mesh[k] < 0.0 || p.mesh[k] > p.T) continue;
    double sum = 0.0;
    for (const auto& row : p.eta) sum += row[k];
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

}  // namespace kp5
