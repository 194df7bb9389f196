#include "kp5/multipliers.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <tuple>

#include "kp5/errors.hpp"
#include "kp5/random_fields.hpp"
#include "kp5/shells.hpp"

namespace kp5 {
namespace {

constexpr double pi = std::numbers::pi;

void require_dyadic(double N, const char* what) {
  if (!is_dyadic(N)) throw ParameterError(std::string(what) + " must be dyadic");
}

}  // namespace

SymbolSpec symbol_one() { return {"1", [](double, double) { return cplx(1.0); }, 1.0}; }

SymbolSpec symbol_derivative() {
  return {"d_x", [](double a, double b) { return cplx(0.0, a + b); }, 0.0};
}

SymbolSpec symbol_a1(double N, double N3) {
  require_dyadic(N, "N");
  require_dyadic(N3, "N3");
  if (N3 > N / 8) throw ParameterError("a1 needs N3 <= N/8");
  SymbolSpec s;
  s.name = "a1";
  s.N = N;
  s.N3 = N3;
  s.bound = 15.0;  // measured sup 14.56 at (32, 2); see tests
  s.eval = [N, N3](double x1, double x2) {
    const double p3 = shell::phi_N(x1, N3);
    if (p3 == 0.0) return cplx(0.0);
    const double pt = shell::phi_tilde_N(x2, N);
    if (pt == 0.0) return cplx(0.0);
    const double x = x1 + x2;
    return cplx(p3 * pt * (shell::phi_N(x, N) * x - shell::phi_N(x2, N) * x2) / N3);
  };
  return s;
}

SymbolSpec symbol_a2(double N1) {
  require_dyadic(N1, "N1");
  SymbolSpec s;
  s.name = "a2";
  s.N = N1;
  s.bound = 6.4 * 3;  // |xi1/N1| <= 6.4 on supp, phi~ <= 3... loose
  s.eval = [N1](double x1, double) { return cplx(x1 / N1 * shell::phi_tilde_N(x1, N1)); };
  return s;
}

SymbolSpec symbol_a3(double N) {
  require_dyadic(N, "N");
  SymbolSpec s;
  s.name = "a3";
  s.N = N;
  s.bound = 3.2;
  s.eval = [N](double x1, double x2) {
    const double x = x1 + x2;
    return cplx(x / N * shell::phi_N(x, N));
  };
  return s;
}

SymbolSpec role_switch_tilde(const SymbolSpec& a) {
  SymbolSpec s = a;
  s.name = a.name + "~";
  auto f = a.eval;
  s.eval = [f](double x1, double x2) { return f(-x1 - x2, x1); };
  return s;
}

SymbolSpec role_switch_double_tilde(const SymbolSpec& a) {
  SymbolSpec s = a;
  s.name = a.name + "~~";
  auto f = a.eval;
  s.eval = [f](double x1, double x2) { return f(x2, -x1 - x2); };
  return s;
}

double sampled_sup(const SymbolSpec& a, double dxi, int kmax) {
  double m = 0.0;
  for (int k1 = -kmax; k1 <= kmax; ++k1)
    for (int k2 = -kmax; k2 <= kmax; ++k2) m = std::max(m, std::abs(a(k1 * dxi, k2 * dxi)));
  return m;
}

Signal1D lambda_apply(const SymbolSpec& a, const Signal1D& u, const Signal1D& v) {
  if (u.L != v.L || u.n() != v.n()) throw ContractError("signals live on different lattices");
  const int n = u.n();
  const auto cu = series_coefficients(u), cv = series_coefficients(v);
  const int eu = spectral_extent(u), ev = spectral_extent(v);
  if (eu + ev >= n / 2) throw AliasingError("Lambda_a output band would wrap; band-limit the inputs");
  const double dxi = 2.0 * pi / u.L;
  auto at = [n](const std::vector<cplx>& c, int k) { return c[k >= 0 ? k : k + n]; };
  std::vector<cplx> out(n, 0.0);
  for (int k1 = -eu; k1 <= eu; ++k1) {
    const cplx c1 = at(cu, k1);
    if (c1 == 0.0) continue;
    for (int k2 = -ev; k2 <= ev; ++k2) {
      const cplx c2 = at(cv, k2);
      if (c2 == 0.0) continue;
      const cplx w = a(k1 * dxi, k2 * dxi);
      if (w == 0.0) continue;
      const int k = k1 + k2;
      out[k >= 0 ? k : k + n] += w * c1 * c2;
    }
  }
  return from_series(u.L, out);
}

Signal1D commutator_spectral(const Signal1D& g, const Signal1D& h, double N, double N3) {
  symbol_a1(N, N3);  // parameter validation
  const Signal1D G = project_shell_1d(g, N3);
  const Signal1D H = project_tilde_1d(h, N);
  const Signal1D lhs = deriv_1d(project_shell_1d(pointwise(G, H), N));
  const Signal1D rhs = pointwise(G, deriv_1d(project_shell_1d(H, N)));
  return lhs - rhs;
}

Signal1D commutator_via_symbol(const Signal1D& g, const Signal1D& h, double N, double N3) {
  return cplx(0.0, N3) * lambda_apply(symbol_a1(N, N3), g, h);
}

double phi_kernel(double x, double N) {
  // Phi_N(x) = (1/2pi) int i xi phi_N(xi) e^{i x xi} d xi = -(1/pi) int_0^inf xi phi_N(xi) sin(xi x) d xi
  const double a = shell::kPlateau * N, b = 2.0 * shell::kSupport * N;
  if (x == 0.0) return 0.0;
  // pieces no wider than half an oscillation and 0.1 N (the profile's transitions)
  const double piece = std::min(0.1 * N, pi / std::abs(x));
  const int m = static_cast<int>(std::ceil((b - a) / piece));
  double acc = 0.0;
  for (int k = 0; k < m; ++k) {
    const double lo = a + (b - a) * k / m, hi = a + (b - a) * (k + 1) / m;
    acc += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [&](double xi) { return xi * shell::phi_N(xi, N) * std::sin(xi * x); }, lo, hi, 0, 0);
  }
  return -acc / pi;
}

/// Relative L1 mass of Phi_N beyond |x| = X. Phi_N(x) = N^2 Phi_1(N x), so
/// this is the Phi_1 tail beyond Y = N X: estimated as twice the mass on
/// [Y, 3Y/2] (the kernel decays monotonically in envelope there) over the
/// mass on [0, 200] (which holds all but ~1e-4 of the total).
double kernel_tail_mass(double N, double X) {
  static const double total = [] {
    double acc = 0.0;
    const double h = 0.02;
    for (double x = 0.5 * h; x < 200.0; x += h) acc += std::abs(phi_kernel(x, 1.0)) * h;
    return acc;
  }();
  const double Y = N * X;
  const double h = 0.2;
  double acc = 0.0;
  for (double x = Y + 0.5 * h; x < 1.5 * Y; x += h) acc += std::abs(phi_kernel(x, 1.0)) * h;
  return 2.0 * acc / total;
}

namespace {

struct KernelTable {
  std::vector<double> values;  // Phi_N at offsets k dx, k in [0, n), representative in [-L/2, L/2)
  double tail_mass;
};

/// Phi_N on the lattice offsets, representative in [-L/2, L/2), odd.
const KernelTable& kernel_table(double N, double L, int n) {
  static std::mutex mu;
  static std::map<std::tuple<double, double, int>, KernelTable> cache;
  std::lock_guard lock(mu);
  auto key = std::make_tuple(N, L, n);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  KernelTable t;
  t.values.assign(n, 0.0);
  const double dx = L / n;
  for (int k = 1; k < n / 2; ++k) {
    const double v = phi_kernel(k * dx, N);
    t.values[k] = v;
    t.values[n - k] = -v;
  }
  // x = L/2 is its own mirror image; the periodised odd kernel vanishes there
  t.tail_mass = kernel_tail_mass(N, L / 2);
  return cache.emplace(key, std::move(t)).first->second;
}

}  // namespace

KernelOracleResult commutator_kernel_oracle(const Signal1D& g, const Signal1D& h, double N, double N3,
                                            double tail_tol) {
  symbol_a1(N, N3);
  if (g.L != h.L || g.n() != h.n()) throw ContractError("signals live on different lattices");
  const int n = g.n();
  const KernelTable& tab = kernel_table(N, g.L, n);
  if (tab.tail_mass > tail_tol)
    throw OracleInvalidError("kernel tails unresolved: tail mass " + std::to_string(tab.tail_mass) +
                             " exceeds tolerance; enlarge the period");
  const Signal1D G = project_shell_1d(g, N3);
  const Signal1D H = project_tilde_1d(h, N);
  const double dx = g.dx();
  std::vector<cplx> out(n);
  double row_max = 0.0;
  std::vector<double> col(n, 0.0);
  for (int i = 0; i < n; ++i) {
    cplx acc = 0.0;
    double row = 0.0;
    const cplx gi = G.samples[i];
    for (int j = 0; j < n; ++j) {
      const int d = i - j >= 0 ? i - j : i - j + n;
      const double K = tab.values[d];
      const cplx diff = G.samples[j] - gi;
      acc += diff * K * H.samples[j];
      const double aK = std::abs(diff * K) * dx;
      row += aK;
      col[j] += aK;
    }
    out[i] = acc * dx;
    row_max = std::max(row_max, row);
  }
  return {Signal1D(g.L, std::move(out)), tab.tail_mass, row_max, *std::max_element(col.begin(), col.end())};
}

AcceptabilityReport acceptability_probe(const SymbolSpec& a, int samples, std::uint64_t seed, double L, int n,
                                        double band, double normalisation) {
  if (samples < 1) throw ConfigError("acceptability probe needs at least one sample");
  AcceptabilityReport r;
  r.symbol = a.name;
  r.samples = samples;
  r.seed = seed;
  r.normalisation = normalisation;
  for (int s = 0; s < samples; ++s) {
    const Signal1D u = random_signal(L, n, 0.0, band, derive_seed(seed, {1, static_cast<std::uint64_t>(s)}));
    const Signal1D v = random_signal(L, n, 0.0, band, derive_seed(seed, {2, static_cast<std::uint64_t>(s)}));
    const double ratio = l2_norm(lambda_apply(a, u, v)) / (sup_norm(u) * l2_norm(v)) / normalisation;
    r.max_ratio = std::max(r.max_ratio, ratio);
  }
  return r;
}

CommutatorConstantReport commutator_constant(double N, double N3, int samples, std::uint64_t seed, double L,
                                             int n) {
  CommutatorConstantReport r;
  r.samples = samples;
  for (int s = 0; s < samples; ++s) {
    const auto tag = static_cast<std::uint64_t>(s);
    const Signal1D g = random_signal(L, n, 0.0, 2.0 * shell::kSupport * N3, derive_seed(seed, {3, tag}));
    const Signal1D h =
        random_signal(L, n, 0.5 * shell::kPlateau * N, 4.0 * shell::kSupport * N, derive_seed(seed, {4, tag}));
    const double ratio = l2_norm(commutator_spectral(g, h, N, N3)) / (N3 * sup_norm(g) * l2_norm(h));
    r.max_ratio = std::max(r.max_ratio, ratio);
  }
  return r;
}

namespace {

Signal1D x_line(const Field2D& u, int j) {
  const Grid2D& g = u.grid();
  std::vector<cplx> s(g.nx());
  for (int i = 0; i < g.nx(); ++i) s[i] = u(i, j);
  return Signal1D(g.Lx(), std::move(s));
}

}  // namespace

cplx gamma_a(const SymbolSpec& a, const TrajectoryRecord& u1, const TrajectoryRecord& u2,
             const TrajectoryRecord& u3) {
  for (const TrajectoryRecord* r : {&u1, &u2, &u3})
    if (r->fields.empty()) throw ContractError("empty trajectory");
  if (u1.times != u2.times || u1.times != u3.times) throw ContractError("trajectories use different time meshes");
  if (u1.grid() != u2.grid() || u1.grid() != u3.grid()) throw ContractError("trajectories use different grids");
  const std::size_t nt = u1.times.size();
  if (nt < 2) throw ContractError("Gamma needs at least two record times");
  const Grid2D& g = u1.grid();
  cplx total = 0.0;
  for (std::size_t k = 0; k < nt; ++k) {
    const double wt =
        (k == 0 ? u1.times[1] - u1.times[0] : k + 1 == nt ? u1.times[k] - u1.times[k - 1]
                                                          : u1.times[k + 1] - u1.times[k - 1]) *
        0.5;
    cplx slice = 0.0;
    for (int j = 0; j < g.ny(); ++j) {
      const Signal1D lam = lambda_apply(a, x_line(u2.fields[k], j), x_line(u3.fields[k], j));
      for (int i = 0; i < g.nx(); ++i) slice += u1.fields[k](i, j) * lam.samples[i];
    }
    total += wt * slice * g.cell_area();
  }
  return total;
}

}  // namespace kp5
