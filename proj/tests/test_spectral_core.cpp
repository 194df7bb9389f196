#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "kp5/errors.hpp"
#include "kp5/field.hpp"
#include "kp5/field_io.hpp"
#include "kp5/grid.hpp"
#include "kp5/random_fields.hpp"
#include "kp5/shells.hpp"
#include "kp5/spectral_ops.hpp"
#include "kp5/time_partition.hpp"

using namespace kp5;
constexpr double pi = std::numbers::pi;

namespace {

Field2D white_field(const Grid2D& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  std::vector<double> s(g.size());
  for (auto& v : s) v = n(rng);
  return Field2D(g, std::move(s));
}

double rel_diff(const Field2D& a, const Field2D& b) { return l2_norm(a - b) / l2_norm(b); }

}  // namespace

TEST_CASE("build_grid lattices") {
  const Grid2D g = build_grid(2 * pi, 2 * pi, 8, 8);
  std::vector<int> xs;
  for (int i = 0; i < 8; ++i) xs.push_back(static_cast<int>(std::lround(g.xi(i))));
  std::sort(xs.begin(), xs.end());
  CHECK(xs == std::vector<int>{-4, -3, -2, -1, 0, 1, 2, 3});
  for (int i = 0; i < 8; ++i) CHECK(g.xi(i) == doctest::Approx(g.kx(i)).epsilon(1e-15));

  const Grid2D h = build_grid(4 * pi, 2 * pi, 16, 8);
  CHECK(h.dxi() == doctest::Approx(0.5));
  CHECK(h.dmu() == doctest::Approx(1.0));

  CHECK_THROWS_AS(build_grid(2 * pi, 2 * pi, 6, 8), ConfigError);
  CHECK_THROWS_AS(build_grid(2 * pi, 2 * pi, 4, 8), ConfigError);
  CHECK_THROWS_AS(build_grid(-1.0, 2 * pi, 8, 8), ConfigError);
  CHECK_THROWS_AS(build_grid(2 * pi, 0.0, 8, 8), ConfigError);
}

TEST_CASE("transforms: zero, single mode, Plancherel, round trip") {
  const Grid2D g = build_grid(2 * pi, 2 * pi, 32, 16);
  const Spectrum2D z = to_spectrum(Field2D::zeros(g));
  for (const auto& c : z.coeffs) CHECK(std::abs(c) == 0.0);

  const Field2D c = Field2D::from_function(g, [](double x, double) { return std::cos(x); });
  const Spectrum2D s = to_spectrum(c);
  double off = 0.0;
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j)
      if (!(j == 0 && std::abs(g.kx(i)) == 1)) off = std::max(off, std::abs(s.at(i, j)));
  CHECK(off < 1e-13);
  CHECK(std::abs(s.at(1, 0)) == doctest::Approx(std::abs(s.at(g.nx() - 1, 0))));
  CHECK(std::abs(s.at(1, 0)) > 1.0);

  for (int k = 0; k < 100; ++k) {
    const Field2D u = white_field(g, 1000 + k);
    const double direct = std::sqrt(g.cell_area() * [&] {
      double a = 0;
      for (double v : u.samples()) a += v * v;
      return a;
    }());
    CHECK(std::abs(l2_norm(to_spectrum(u)) - direct) <= 1e-12 * direct);
    CHECK(rel_diff(to_field(to_spectrum(u)), u) <= 1e-12);
  }

  CHECK_THROWS_AS(Field2D(g, std::vector<double>(10)), ContractError);
}

TEST_CASE("Hermitian symmetry of real-field spectra") {
  const Grid2D g = build_grid(2 * pi, 3.0, 16, 16);
  const Spectrum2D s = to_spectrum(white_field(g, 7));
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) {
      const int mi = (g.nx() - i) % g.nx(), mj = (g.ny() - j) % g.ny();
      CHECK(std::abs(s.at(mi, mj) - std::conj(s.at(i, j))) < 1e-12);
    }
}

TEST_CASE("zero_x_mean flag is verified") {
  const Grid2D g = build_grid(2 * pi, 2 * pi, 16, 16);
  std::vector<double> ones(g.size(), 1.0);
  CHECK_THROWS_AS(Field2D(g, ones, true), ConstraintError);
  const Field2D u = remove_x_mean(white_field(g, 3));
  CHECK(u.zero_x_mean());
  CHECK(x_mean_defect(u) < 1e-14);
}

TEST_CASE("kappa profile and shell invariants") {
  for (double x = 0.0; x <= 1.25; x += 0.01) CHECK(shell::kappa(x) == 1.0);
  for (double x = 1.6; x <= 4.0; x += 0.01) CHECK(shell::kappa(x) == 0.0);
  double prev = 1.0;
  for (double x = 0.0; x <= 2.0; x += 1e-3) {
    const double k = shell::kappa(x);
    CHECK(k <= prev);
    CHECK(shell::kappa(-x) == k);
    prev = k;
  }
  for (double x = -5.0; x <= 5.0; x += 1e-3) {
    const double p = shell::phi(x);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
  }
  // phi_N == 1 on [8N/5, 5N/2]
  for (double N : {0.5, 1.0, 4.0, 32.0})
    for (double t = 1.6; t <= 2.5; t += 0.01) CHECK(shell::phi_N(t * N, N) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("telescoping shell sum on the lattice") {
  const Grid2D g = build_grid(2 * pi, 2 * pi, 256, 8);
  const ShellSystem shells(g);
  CHECK(shells.N_min() == 0.5);
  CHECK(shells.N_max() == 32.0);
  int tested = 0;
  for (int i = 0; i < g.nx(); ++i) {
    const double xi = std::abs(g.xi(i));
    if (xi == 0.0) continue;
    double unbounded = 0.0;
    for (double N = shells.N_min(); N <= shells.N_max(); N *= 2) unbounded += shell::phi_N(xi, N);
    if (xi >= shells.N_min() * 1.6 && xi <= shells.N_max() * 1.25) {
      CHECK(std::abs(unbounded - 1.0) <= 1e-10);
      ++tested;
    }
    double banded = 0.0;
    for (double N : shells.scales()) banded += shells.weight(xi, N);
    CHECK(std::abs(banded - 1.0) <= 1e-12);
  }
  CHECK(tested > 30);
}

TEST_CASE("project_shell examples and P_N P~_N = P_N") {
  const Grid2D g = build_grid(2 * pi, 2 * pi, 256, 16);
  const double N = 8.0;
  const Field2D hi = Field2D::from_function(g, [&](double x, double y) { return std::cos(2 * N * x + y); }, true);
  CHECK(rel_diff(project_shell(hi, N), hi) < 1e-13);

  const Grid2D wide = build_grid(200 * pi, 2 * pi, 4096, 8);
  const double M = 8.0;
  const Field2D lo =
      Field2D::from_function(wide, [&](double x, double) { return std::cos(M / 100 * x); }, true);
  CHECK(l2_norm(project_shell(lo, M)) < 1e-13 * l2_norm(lo));

  const ShellSystem shells(g);
  for (int k = 0; k < 10; ++k) {
    const Field2D u = remove_x_mean(white_field(g, 50 + k));
    for (double S : shells.scales()) {
      const Field2D pn = project_shell(u, S);
      if (l2_norm(pn) == 0.0) continue;
      CHECK(l2_norm(project_shell(project_tilde(u, S), S) - pn) <= 1e-12 * l2_norm(pn));
    }
    Field2D sum = Field2D::zeros(g);
    for (double S : shells.scales()) sum += project_shell(u, S);
    sum += project_below(u, shells.N_min() / 2);
    CHECK(rel_diff(sum, u) < 1e-12);
  }

  CHECK_THROWS_AS(project_shell(hi, 3.0), RangeError);
  CHECK_THROWS_AS(project_shell(hi, 2 * shells.N_max()), RangeError);
  CHECK_THROWS_AS(project_shell(hi, shells.N_min() / 2), RangeError);
}

TEST_CASE("sobolev_norm") {
  const Grid2D g = build_grid(2 * pi, 2 * pi, 32, 32);
  CHECK(sobolev_norm(Field2D::zeros(g), 1.0, 2.0) == 0.0);
  const Field2D u = white_field(g, 11);
  CHECK(sobolev_norm(u, 0.0, 0.0) == l2_norm(u));

  // cos(2x + 3y) normalised to L2 norm 1
  Field2D m = Field2D::from_function(g, [](double x, double y) { return std::cos(2 * x + 3 * y); });
  m *= 1.0 / l2_norm(m);
  for (auto [s1, s2] : {std::pair{1.0, 0.0}, {0.5, 0.5}, {2.0, -1.0}}) {
    const double expect = std::pow(5.0, s1 / 2) * std::pow(10.0, s2 / 2);
    CHECK(sobolev_norm(m, s1, s2) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("dyadic Sobolev equivalence constant is bounded") {
  const Grid2D g = build_grid(2 * pi, 2 * pi, 128, 16);
  double lo = 1e300, hi = 0.0;
  for (int k = 0; k < 20; ++k) {
    const Field2D u = remove_x_mean(white_field(g, 200 + k));
    for (double s : {0.0, 0.25, 0.5, 1.0}) {
      const double r = sobolev_norm(u, s, 0.0) / dyadic_sobolev_norm(u, s);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  MESSAGE("H^{s,0} / dyadic ratio range [" << lo << ", " << hi << "]");
  CHECK(lo > 0.5);
  CHECK(hi < 4.0);
}

TEST_CASE("fractional derivatives") {
  const Grid2D g = build_grid(2 * pi, 2 * pi, 32, 16);
  const Field2D u = remove_x_mean(white_field(g, 5));
  CHECK(rel_diff(frac_deriv_x(u, 0.0), u) == 0.0);

  const Field2D m = Field2D::from_function(g, [](double x, double) { return std::sin(2 * x); }, true);
  CHECK(rel_diff(frac_deriv_x(m, 1.0), std::sqrt(5.0) * m) < 1e-13);

  // D_x^{-1} D_x u = u; D_x^{-1} d_x is the x-Hilbert rotation i sgn(xi), an isometry squaring to -1
  const Field2D v = gaussian_random_field(g, 9, 1.0, {10.0, 10.0});
  CHECK(rel_diff(homogeneous_deriv_x(homogeneous_deriv_x(v, 1.0), -1.0), v) < 1e-13);
  const Field2D h = homogeneous_deriv_x(deriv_x(v), -1.0);
  CHECK(std::abs(l2_norm(h) - l2_norm(v)) < 1e-12 * l2_norm(v));
  CHECK(rel_diff(homogeneous_deriv_x(deriv_x(h), -1.0), -1.0 * v) < 1e-13);

  const Field2D mean = Field2D::from_function(g, [](double, double y) { return 1.0 + std::cos(y); });
  CHECK_THROWS_AS(homogeneous_deriv_x(mean, -0.5), ConstraintError);
  CHECK_NOTHROW(homogeneous_deriv_x(mean, 0.5));
}

TEST_CASE("x antiderivative") {
  const Grid2D g = build_grid(2 * pi, 2 * pi, 32, 16);
  const Field2D c = Field2D::from_function(g, [](double x, double) { return std::cos(x); }, true);
  const Field2D s = Field2D::from_function(g, [](double x, double) { return std::sin(x); }, true);
  CHECK(rel_diff(x_antiderivative(c), s) < 1e-13);

  const Field2D v = gaussian_random_field(g, 21, 1.0, {15.0, 15.0});
  CHECK(rel_diff(deriv_x(x_antiderivative(v)), v) < 1e-12);

  const Field2D bad = Field2D::from_function(g, [](double x, double y) { return std::cos(x) + std::sin(y); });
  CHECK_THROWS_AS(x_antiderivative(bad), ConstraintError);
}

TEST_CASE("fractional product rule ratio stays bounded") {
  const Grid2D g = build_grid(2 * pi, 2 * pi, 128, 8);
  const double band = g.nx() / 6.0;
  for (double theta : {0.1, 0.5, 1.0}) {
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const Field2D f = gaussian_random_field(g, 300 + k, 1.0, {band, 0.0});
      const Field2D gg = gaussian_random_field(g, 900 + k, 1.0, {band, 0.0});
      std::vector<double> s(g.size());
      for (std::size_t q = 0; q < s.size(); ++q) s[q] = f.samples()[q] * gg.samples()[q];
      const Field2D prod(g, std::move(s));
      const double lhs = l2_norm(frac_deriv_x(prod, theta));
      const double rhs = lp_norm(frac_deriv_x(f, theta), 4) * lp_norm(gg, 4) +
                         lp_norm(f, 4) * lp_norm(frac_deriv_x(gg, theta), 4);
      worst = std::max(worst, lhs / rhs);
    }
    MESSAGE("theta=" << theta << " max product-rule ratio " << worst);
    CHECK(worst < 10.0);
  }
}

TEST_CASE("time partition of unity") {
  CHECK(bump_eta(0.0) == 1.0);
  CHECK(bump_eta(0.8) == 0.0);
  double s = 0.0;
  for (int k = -3; k <= 3; ++k) s += bump_eta(0.5 - k);
  CHECK(s == doctest::Approx(1.0).epsilon(1e-15));
  for (double t = -0.25; t <= 0.25; t += 0.01) CHECK(bump_eta(t) == 1.0);
  for (double t = 0.75; t <= 2.0; t += 0.01) CHECK(bump_eta(t) == 0.0);

  std::vector<double> mesh(10000);
  const double T = 2.0;
  for (int k = 0; k < 10000; ++k) mesh[k] = T * k / 9999.0;
  const TimePartition p = time_partition(8, T, mesh);
  CHECK(partition_defect(p) <= 1e-10);
  for (int j = 0; j <= p.N1; ++j)
    for (std::size_t k = 0; k < mesh.size(); ++k) {
      CHECK(p.eta[j][k] * p.eta_tilde[j][k] == doctest::Approx(p.eta[j][k]).epsilon(1e-15));
      if (std::abs(mesh[k] - p.center(j)) >= 0.75 * T / p.N1) CHECK(p.eta[j][k] == 0.0);
    }
  CHECK_THROWS_AS(time_partition(1, 1.0, mesh), DomainError);
  CHECK_THROWS_AS(time_partition(4, 0.0, mesh), DomainError);
}

TEST_CASE("field container round trip") {
  const Grid2D g = build_grid(3.0, 5.0, 16, 8);
  const Field2D u = gaussian_random_field(g, 4, 0.5, {6.0, 6.0});
  std::stringstream buf;
  write_field(buf, u);
  const Field2D v = read_field(buf);
  CHECK(v.grid() == g);
  CHECK(v.zero_x_mean());
  CHECK(std::equal(u.samples().begin(), u.samples().end(), v.samples().begin()));
  std::stringstream bad("{\"format\":\"other\"}\n");
  CHECK_THROWS_AS(read_field(bad), ContractError);
}
