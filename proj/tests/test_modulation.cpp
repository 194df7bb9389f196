#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>

#include "kp5/errors.hpp"
#include "kp5/modulation.hpp"
#include "kp5/random_fields.hpp"

using namespace kp5;

namespace {
ModelParams run(double dt, double T, bool nonlinear, int d = 1) {
  ModelParams p;
  p.delta = DispersionSign(d);
  p.dt = dt;
  p.T = T;
  p.nonlinear = nonlinear;
  return p;
}

// int |window u|^2 straight from the record
double direct_mass(const TrajectoryRecord& r, const ModulationWindow& w) {
  const auto& t = r.times;
  const double dt = t[1] - t[0];
  double acc = 0.0;
  for (std::size_t n = 0; n < t.size(); ++n) {
    const double v = w(t[n], t.front(), t.back()) * l2_norm(r.fields[n]);
    acc += dt * v * v;
  }
  return acc;
}
}  // namespace

TEST_CASE("modulation weights partition unity") {
  double worst = 0.0, lowest = 0.0;
  for (double s = -3000.0; s <= 3000.0; s += 0.173) {
    const auto w = modulation_weights(s, 12);
    worst = std::max(worst, std::abs(std::accumulate(w.begin(), w.end(), 0.0) - 1.0));
    for (double v : w) lowest = std::min(lowest, v);
  }
  CHECK(worst < 1e-10);
  CHECK(lowest >= -1e-15);
  const auto w = modulation_weights(0.9, 6);
  CHECK(w[0] == doctest::Approx(1.0));
  // shell L = 8 lives on |sigma| in (5, 12.8)
  CHECK(modulation_weights(9.0, 6)[3] == doctest::Approx(1.0));
  CHECK(modulation_weights(4.0, 6)[3] == 0.0);
}

TEST_CASE("single linear mode sits in the L = 1 shell") {
  // xi = 1, mu = 0: w = 1, 16 periods = 32 pi
  const Grid2D g(2 * std::numbers::pi, 2 * std::numbers::pi, 16, 8);
  const Field2D u0 = Field2D::from_function(g, [](double x, double) { return std::cos(x); }, true);
  const auto rec = evolve(u0, run(0.05, 32 * std::numbers::pi, false));
  const auto m = modulation_besov(rec, {}, DispersionSign::kp2());
  CHECK(m.shell_mass[0] >= 0.9 * m.total_mass);
  CHECK(m.partition_defect < 1e-10);
}

TEST_CASE("linear random trajectory: L = 1 dominates at large |w|, Plancherel") {
  const Grid2D g(8 * std::numbers::pi, 8 * std::numbers::pi, 32, 32);
  const Field2D u0 = gaussian_random_field(g, 4, 0.1, Band{2.0, 1.0});
  for (int d : {1, -1}) {
    const auto rec = evolve(u0, run(0.005, 20.0, false, d));
    const ModulationWindow win{};
    const auto m = modulation_besov(rec, win, DispersionSign(d));
    CHECK(m.shell_mass[0] >= 0.9 * m.total_mass);
    CHECK(std::abs(m.total_mass - direct_mass(rec, win)) < 1e-10 * m.total_mass);
    // phi_L^2 <= phi_L, so the norms are dominated by the shares
    for (std::size_t k = 0; k < m.L.size(); ++k) CHECK(m.shell_norm[k] * m.shell_norm[k] <= m.shell_mass[k] * (1 + 1e-12) + 1e-300);
    CHECK(m.besov >= std::sqrt(m.total_mass) * 0.5);
  }
}

TEST_CASE("nonlinear trajectory: Plancherel and window span") {
  const Grid2D g(8 * std::numbers::pi, 8 * std::numbers::pi, 32, 32);
  const Field2D u0 = gaussian_random_field(g, 9, 0.5, Band{1.5, 1.0});
  const auto rec = evolve(u0, run(0.005, 4.0, true));
  for (double span : {1.0, 0.5}) {
    const ModulationWindow win{span};
    const auto m = modulation_besov(rec, win, DispersionSign::kp2());
    const double sum = std::accumulate(m.shell_mass.begin(), m.shell_mass.end(), 0.0);
    CHECK(std::abs(sum - m.total_mass) < 1e-10 * m.total_mass);
    CHECK(std::abs(m.total_mass - direct_mass(rec, win)) < 1e-10 * m.total_mass);
  }
}

TEST_CASE("modulation contract") {
  const Grid2D g(2 * std::numbers::pi, 2 * std::numbers::pi, 16, 8);
  const auto zero = evolve(Field2D::zeros(g), run(0.01, 0.5, false));
  const auto m = modulation_besov(zero, {}, DispersionSign::kp1());
  for (double v : m.shell_mass) CHECK(v == 0.0);
  CHECK(m.besov == 0.0);

  auto bad = zero;
  bad.times[3] += 1e-4;
  CHECK_THROWS_AS(modulation_besov(bad, {}, DispersionSign::kp1()), ContractError);
  CHECK_THROWS_AS(modulation_besov(zero, ModulationWindow{1.5}, DispersionSign::kp1()), ConfigError);
}
