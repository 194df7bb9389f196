#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kp5/dilation.hpp"
#include "kp5/errors.hpp"
#include "kp5/evolution.hpp"
#include "kp5/invariants.hpp"
#include "kp5/random_fields.hpp"
#include "kp5/shells.hpp"
#include "kp5/spectral_ops.hpp"

using namespace kp5;
constexpr double pi = std::numbers::pi;

namespace {

const Grid2D& small_grid() {
  static const Grid2D g(16 * pi, 16 * pi, 64, 64);
  return g;
}

Field2D small_data(double amp = 0.1, std::uint64_t seed = 7) {
  return gaussian_random_field(small_grid(), seed, amp, Band{1, 1});
}

ModelParams short_run(int delta, double T = 0.2) {
  ModelParams p;
  p.delta = DispersionSign(delta);
  p.dt = 1e-3;
  p.T = T;
  return p;
}

}  // namespace

TEST_CASE("model params validation") {
  ModelParams p;
  CHECK_NOTHROW(p.validate());
  p.dt = 0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = ModelParams{};
  p.T = p.dt / 2;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = ModelParams{};
  p.dealias = 0.7;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = ModelParams{};
  p.record_stride = 0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("rhs examples") {
  const Grid2D g(2 * pi, 2 * pi, 16, 16);
  CHECK(max_abs(rhs_nonlinear(Field2D::zeros(g), DispersionSign::kp1())) == 0.0);
  // u = cos x: -d_x^5 u = sin x, -d_x(u^2) = sin 2x, no y-dependence
  const Field2D u = Field2D::from_function(g, [](double x, double) { return std::cos(x); }, true);
  for (int d : {1, -1}) {
    const Field2D r = rhs_nonlinear(u, DispersionSign(d));
    const Field2D expect =
        Field2D::from_function(g, [](double x, double) { return std::sin(x) + std::sin(2 * x); }, true);
    CHECK(max_abs(r - expect) < 1e-12);
  }
  const Field2D v = gaussian_random_field(g, 3, 1.0, Band{4, 4});
  CHECK(std::abs(integral(rhs_nonlinear(v, DispersionSign::kp2()))) < 1e-12);
  // u = a cos(x + y), delta = 1: both linear terms give a sin(x + y)
  const Field2D w = Field2D::from_function(g, [](double x, double y) { return 1e-3 * std::cos(x + y); }, true);
  const Field2D lin = rhs_nonlinear(w, DispersionSign::kp1());
  const Field2D w_expect = Field2D::from_function(
      g, [](double x, double y) { return 1e-3 * (std::sin(x + y) + std::sin(x + y)) + 1e-6 * std::sin(2 * (x + y)); },
      true);
  CHECK(max_abs(lin - w_expect) < 1e-14);
  CHECK_THROWS_AS(rhs_nonlinear(Field2D::from_function(g, [](double, double y) { return std::cos(y); }),
                                DispersionSign::kp1()),
                  ConstraintError);
}

TEST_CASE("mass and energy examples") {
  const Grid2D g(2 * pi, 4 * pi, 32, 16);
  CHECK(mass(Field2D::zeros(g)) == 0.0);
  CHECK(energy(Field2D::zeros(g), DispersionSign::kp1(), 1.0 / 3) == 0.0);
  const Field2D s = Field2D::from_function(g, [](double x, double) { return std::sin(x); }, true);
  CHECK(mass(s) == doctest::Approx(g.Lx() * g.Ly() / 2).epsilon(1e-14));
  const double k = 3.0;
  const Field2D c = Field2D::from_function(g, [k](double x, double) { return std::cos(k * x); }, true);
  const EnergyParts parts = energy_parts(c);
  CHECK(parts.quadratic_x == doctest::Approx(k * k * k * k * g.Lx() * g.Ly() / 4).epsilon(1e-13));
  CHECK(std::abs(parts.cubic) < 1e-12);
  CHECK(parts.quadratic_y < 1e-20);
  CHECK_THROWS_AS(energy(Field2D::from_function(g, [](double, double y) { return std::cos(y); }),
                         DispersionSign::kp1(), 0.0),
                  ConstraintError);
}

TEST_CASE("linear toggle reproduces the propagator") {
  const Field2D u0 = small_data();
  for (int d : {1, -1}) {
    ModelParams p = short_run(d);
    p.nonlinear = false;
    p.record_stride = 20;
    const auto rec = evolve(u0, p);
    CHECK(rec.times.size() == 11);
    double worst = 0;
    for (std::size_t k = 0; k < rec.times.size(); ++k)
      worst = std::max(worst, l2_norm(rec.fields[k] - propagate_linear(u0, rec.times[k], p.delta)) / l2_norm(u0));
    CHECK(worst < 1e-10);
  }
  const auto z = evolve(Field2D::zeros(small_grid()), short_run(1));
  CHECK(max_abs(z.fields.back()) == 0.0);
}

TEST_CASE("conservation and the cubic coefficient") {
  for (int d : {1, -1}) {
    const auto rec = evolve(small_data(), short_run(d, 0.3));
    std::vector<double> m, e;
    for (const auto& s : rec.diagnostics) {
      m.push_back(s.mass);
      e.push_back(s.energy);
    }
    CHECK(relative_drift(m) < 1e-10);
    CHECK(relative_drift(e) < 1e-10);
    CHECK(fit_cubic_coefficient(rec) == doctest::Approx(1.0 / 3).epsilon(1e-6));
    // a wrong coefficient is visibly not conserved
    std::vector<double> wrong;
    for (const auto& u : rec.fields) wrong.push_back(energy(u, rec.params.delta, -1.0 / 6));
    CHECK(relative_drift(wrong) > 100 * relative_drift(e));
  }
}

TEST_CASE("instability detector and blow-up") {
  const Field2D big = gaussian_random_field(small_grid(), 5, 50.0, Band{2, 2});
  ModelParams p = short_run(1, 2.0);
  p.dt = 0.5;
  CHECK_THROWS_AS(evolve(big, p), BlowUpError);
  CHECK(stability_limit(small_grid(), 1.0) > 0.0);
}

TEST_CASE("shell energy identity") {
  const ShellSystem shells(small_grid());
  ModelParams lin = short_run(1);
  lin.nonlinear = false;
  const auto lrec = evolve(small_data(), lin);
  for (const auto& r : shell_energy_identities(lrec, shells.scales())) CHECK(r.residual < 1e-10);

  const auto rec = evolve(small_data(), short_run(-1));
  for (const auto& r : shell_energy_identities(rec, shells.scales())) {
    if (r.resolvable) CHECK(r.residual < 1e-3);
  }
  // empty shell: data supported below 1/2, shell 4 never reached at this amplitude and time
  const auto zero = evolve(Field2D::zeros(small_grid()), short_run(1, 0.01));
  CHECK(shell_energy_identity(zero, 1.0).empty);
  CHECK_THROWS_AS(shell_energy_identity(rec, 64.0), RangeError);
}

TEST_CASE("frequency interaction restriction") {
  // int d_x P_N(a b) P_N u vanishes when a, b both sit far below N
  const Grid2D g(2 * pi, 2 * pi, 128, 16);
  const Field2D u = gaussian_random_field(g, 9, 1.0, Band{40, 6});
  for (double N : {8.0, 16.0}) {
    const Field2D low = project_much_below(u, N);
    const Field2D prod = Field2D(g, [&] {
      std::vector<double> s(g.size());
      for (std::size_t k = 0; k < s.size(); ++k) s[k] = low.samples()[k] * low.samples()[k];
      return s;
    }());
    const double term = inner(deriv_x(project_shell(prod, N)), project_shell(u, N));
    CHECK(std::abs(term) < 1e-12 * l2_norm(u) * l2_norm(u) * l2_norm(u));
    CHECK(l2_norm(project_shell(u, N)) > 0.0);
  }
}

TEST_CASE("Duhamel residual") {
  const auto rec = evolve(small_data(), short_run(1));
  CHECK(duhamel_residual(rec, 0.1, 0.1).residual == 0.0);
  CHECK(duhamel_residual_window(rec, 0.1, 0.1).residual < 1e-4);
  CHECK(duhamel_residual(rec, 0.15, 0.05).residual < 1e-4);
  CHECK_THROWS_AS(duhamel_residual(rec, 0.1005, 0.1), ContractError);
  ModelParams lin = short_run(-1);
  lin.nonlinear = false;
  const auto lrec = evolve(small_data(), lin);
  CHECK(duhamel_residual_window(lrec, 0.1, 0.1).residual < 1e-10);
}

TEST_CASE("dilation") {
  const Field2D u = small_data();
  CHECK(max_abs(dilate(u, 1.0) - u) == 0.0);
  const Field2D d2 = dilate(u, 2.0);
  CHECK(d2.grid().Lx() == small_grid().Lx() / 2);
  CHECK(d2.grid().Ly() == small_grid().Ly() / 8);
  CHECK(std::abs(l2_norm(d2) / l2_norm(u) - 4.0) < 1e-12);
  CHECK(std::abs(l2_norm(dilate(u, 0.5)) / l2_norm(u) - 0.25) < 1e-12);
  CHECK_THROWS_AS(dilate(u, 3.0), ParameterError);
  CHECK_THROWS_AS(dilate(u, -2.0), ParameterError);
  CHECK(dilation_flow_commutation(u, 1.0, short_run(1, 0.05)).discrepancy == 0.0);
  CHECK(dilation_flow_commutation(u, 2.0, short_run(-1, 0.05)).discrepancy < 1e-6);
}
