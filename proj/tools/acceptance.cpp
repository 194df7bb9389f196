// Acceptance harness: one PASS/FAIL line per criterion.
//   kp5_acceptance            run everything
//   kp5_acceptance <name>...  run the named criteria only
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kp5/dilation.hpp"
#include "kp5/dispersion.hpp"
#include "kp5/errors.hpp"
#include "kp5/invariants.hpp"
#include "kp5/kernel.hpp"
#include "kp5/lab/config.hpp"
#include "kp5/lab/experiments.hpp"
#include "kp5/multipliers.hpp"
#include "kp5/random_fields.hpp"
#include "kp5/resonance.hpp"
#include "kp5/shells.hpp"
#include "kp5/strichartz.hpp"
#include "kp5/time_partition.hpp"

using namespace kp5;
constexpr double pi = std::numbers::pi;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string g(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.4g", v);
  return b;
}

const lab::RunConfig& config() {
  static const lab::RunConfig cfg = lab::parse_run_config(nlohmann::json::object());
  return cfg;
}

// reference run: 128^2, T = 1, dt = 1e-3, small Gaussian data
const TrajectoryRecord& reference(int delta, bool nonlinear = true) {
  static std::map<std::pair<int, bool>, TrajectoryRecord> cache;
  auto it = cache.find({delta, nonlinear});
  if (it != cache.end()) return it->second;
  ModelParams p = config().params;
  p.delta = DispersionSign(delta);
  p.nonlinear = nonlinear;
  return cache.emplace(std::pair{delta, nonlinear}, evolve(lab::make_initial_data(config()), p)).first->second;
}

Outcome resonance_bounds() {
  const auto t0 = std::chrono::steady_clock::now();
  const ResonanceSweep s = resonance_sweep(1000000, 42);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {s.failures == 0 && secs < 10.0, std::to_string(s.failures) + " failures / " + std::to_string(s.samples) +
                                              ", slack lo " + g(s.max_lower_slack) + " hi " + g(s.max_upper_slack) +
                                              ", " + g(secs) + " s"};
}

Outcome omega_identities() {
  // both equalities as stated; the second is false (Omega(2,1) = 30, -Omega(1,1) = 0)
  const IdentitySweep s = omega_identity_sweep(100000, 43);
  return {s.swap_defect <= 1e-12 && s.literal_defect <= 1e-12,
          "swap " + g(s.swap_defect) + ", negation " + g(s.literal_defect) + " (tol 1e-12)"};
}

Outcome sign_coherence() {
  const SignCoherenceReport s = sign_coherence_check(100000, 44);
  return {s.kp2_compound == s.samples,
          std::to_string(s.kp2_compound) + "/" + std::to_string(s.samples) + " exact for KP-II"};
}

Outcome commutator_triple() {
  const double L = 2 * pi * 36, N = 8, N3 = 1;
  double e_sym = 0, e_ker = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Signal1D gs = random_signal(L, 4096, 0, 3.2 * N3, derive_seed(45, {0, s}));
    const Signal1D hs = random_signal(L, 4096, 0.625 * N, 6.4 * N, derive_seed(45, {1, s}));
    const Signal1D ref = commutator_spectral(gs, hs, N, N3);
    e_sym = std::max(e_sym, l2_norm(commutator_via_symbol(gs, hs, N, N3) - ref) / l2_norm(ref));
    e_ker = std::max(e_ker, l2_norm(commutator_kernel_oracle(gs, hs, N, N3).value - ref) / l2_norm(ref));
  }
  double lo = 1e300, hi = 0;
  for (double N3s : {1.0, 2.0})
    for (double ratio : {8.0, 16.0, 32.0, 64.0, 128.0}) {
      const double r = commutator_constant(ratio * N3s, N3s, 100, derive_seed(46, {std::uint64_t(ratio), std::uint64_t(N3s)}),
                                           2 * pi * 4, 8192).max_ratio;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  return {e_sym <= 1e-10 && e_ker <= 1e-6 && hi / lo <= 4.0,
          "symbol " + g(e_sym) + ", kernel oracle " + g(e_ker) + ", constant spread " + g(hi / lo)};
}

TrajectoryRecord linear_record(std::uint64_t seed) {
  static const Grid2D grid(2 * pi, 2 * pi, 32, 8);
  const Field2D u0 = gaussian_random_field(grid, seed, 1.0, Band{7, 3});
  TrajectoryRecord r;
  r.params.dt = 0.01;
  r.params.T = 0.04;
  for (int k = 0; k <= 4; ++k) {
    r.times.push_back(0.01 * k);
    r.fields.push_back(propagate_linear(u0, 0.01 * k, DispersionSign::kp2()));
  }
  return r;
}

Outcome role_switch() {
  const std::vector<SymbolSpec> symbols = {symbol_one(), symbol_a1(16, 1), symbol_a2(2), symbol_a3(2)};
  double worst = 0;
  for (std::uint64_t k = 0; k < 20; ++k) {
    const auto u1 = linear_record(derive_seed(47, {k, 1})), u2 = linear_record(derive_seed(47, {k, 2})),
               u3 = linear_record(derive_seed(47, {k, 3}));
    for (const auto& a : symbols) {
      const cplx v = gamma_a(a, u1, u2, u3);
      worst = std::max(worst, std::abs(gamma_a(role_switch_tilde(a), u2, u3, u1) - v) / std::abs(v));
      worst = std::max(worst, std::abs(gamma_a(role_switch_double_tilde(a), u3, u1, u2) - v) / std::abs(v));
    }
  }
  return {worst <= 1e-10, "max rel " + g(worst) + " over 20 triples x 4 symbols"};
}

Outcome kernel_decay() {
  const KernelDecayReport r = kernel_decay_sweep({0.01, 0.1, 1, 10}, {2, 4, 8, 16}, DispersionSign::kp2());
  struct C {
    double x, y, t, N;
    int d;
  };
  double worst = 0;
  for (C k : {C{0.3, 0.7, 0.5, 2, 1}, C{-1.0, 0.2, 0.1, 2, 1}, C{2.0, -1.5, 1.0, 1, -1}, C{0.0, 0.0, 0.2, 1, 1},
              C{1.0, 0.5, 0.3, 2, -1}}) {
    const cplx a = kernel_G(k.x, k.y, k.t, k.N, DispersionSign(k.d));
    const cplx b = kernel_G_direct(k.x, k.y, k.t, k.N, DispersionSign(k.d));
    worst = std::max(worst, std::abs(a - b) / std::abs(b));
  }
  const double s1 = r.spread(0.0), s2 = r.spread(0.5);
  return {s1 <= 5 && s2 <= 5 && worst <= 1e-4,
          "first-bound spread " + g(s1) + ", second-bound spread " + g(s2) + ", 1D vs 2D " + g(worst)};
}

Outcome strichartz() {
  const AdmissiblePair p44{Exponent(4), Exponent(4)}, p2{Exponent::infinity(), Exponent(2)};
  double lo = 1e300, hi = 0, unit = 0;
  for (double N : {4.0, 8.0, 16.0, 32.0}) {
    const double T = kSaturatedHorizon / std::pow(N, 5);
    const auto r = strichartz_probe(N, p44, T, 2, ProbeMode::homogeneous, derive_seed(48, {std::uint64_t(N)}));
    lo = std::min(lo, r.max_ratio);
    hi = std::max(hi, r.max_ratio);
    const auto u = strichartz_probe(N, p2, T, 1, ProbeMode::homogeneous, derive_seed(49, {std::uint64_t(N)}));
    unit = std::max(unit, std::abs(u.max_ratio - 1.0));
  }
  return {hi / lo <= 3.0 && unit <= 1e-12, "(4,4) ratios in [" + g(lo) + ", " + g(hi) + "], spread " + g(hi / lo) +
                                               ", (inf,2) |ratio-1| " + g(unit)};
}

double series_drift(const TrajectoryRecord& r, bool energy_series) {
  std::vector<double> v;
  for (const auto& d : r.diagnostics) v.push_back(energy_series ? d.energy : d.mass);
  return relative_drift(v);
}

Outcome conservation() {
  double md = 0, ed = 0;
  for (int d : {1, -1}) {
    md = std::max(md, series_drift(reference(d), false));
    ed = std::max(ed, series_drift(reference(d), true));
  }
  return {md < 1e-8 && ed < 1e-6, "mass drift " + g(md) + ", energy drift " + g(ed) + " (both signs)"};
}

Outcome shell_identity() {
  double nl = 0, lin = 0;
  for (int d : {1, -1}) {
    const ShellSystem shells(reference(d).grid());
    for (const auto& r : shell_energy_identities(reference(d), shells.scales()))
      if (r.resolvable) nl = std::max(nl, r.residual);
    for (const auto& r : shell_energy_identities(reference(d, false), shells.scales())) lin = std::max(lin, r.residual);
  }
  return {nl < 1e-3 && lin <= 1e-10, "nonlinear " + g(nl) + ", linear-only " + g(lin)};
}

Outcome duhamel_convergence() {
  double res = 0;
  for (int d : {1, -1}) {
    const auto& rec = reference(d);
    for (double frac : {0.1, 0.5, 0.9})
      res = std::max(res, duhamel_residual_window(rec, rec.times[std::lround(frac * (rec.times.size() - 1))], 0.1).residual);
  }
  lab::RunConfig c = config();
  c.uniqueness.levels = 3;
  const lab::UniquenessReport u = lab::uniqueness_experiment(c);
  const double order = std::log2(u.ratios.back());
  return {res < 1e-4 && std::abs(order - 4.0) <= 0.3, "Duhamel " + g(res) + ", order " + g(order)};
}

Outcome dilation() {
  const Field2D u0 = lab::make_initial_data(config());
  const double l2 = std::abs(l2_norm(dilate(u0, 2.0)) / (4.0 * l2_norm(u0)) - 1.0);
  ModelParams p = config().params;
  p.T = 0.05;
  const double comm = dilation_flow_commutation(u0, 2.0, p).discrepancy;
  const lab::ScalingBook b = lab::scaling_bookkeeping({0.0}, 0.25, 1.0);
  bool book = b.lambda == 0.5 && b.T_eps == 32.0;
  for (double e : {0.5, 0.25, 0.1, 0.01}) {
    const lab::ScalingBook k = lab::scaling_bookkeeping({0.0}, e, 0.5);
    book = book && k.lambda == std::sqrt(e) && std::abs(k.T_eps - 0.5 / std::pow(k.lambda, 5)) <= 1e-15 * k.T_eps;
    if (e < std::pow(0.5, 0.4)) book = book && k.T_eps > 1.0;
  }
  return {l2 <= 1e-12 && comm < 1e-6 && book,
          "norm " + g(l2) + ", commutation " + g(comm) + ", bookkeeping " + (book ? "exact" : "wrong")};
}

Outcome time_splitting() {
  std::vector<double> mesh(10000);
  for (int k = 0; k < 10000; ++k) mesh[k] = k / 9999.0;
  double defect = 0;
  for (int N1 : {2, 4, 8, 16, 32}) defect = std::max(defect, partition_defect(time_partition(N1, 1.0, mesh)));
  int total = 0, bad = 0;
  const auto& rec = reference(-1);
  const ShellSystem shells(rec.grid());
  for (double N : shells.scales())
    for (int n : {2, 4, 8, 16, 32})
      for (const auto& row : lab::time_split_centers(rec, N, n).rows) {
        ++total;
        bad += !row.holds;
      }
  return {defect <= 1e-10 && bad == 0,
          "partition " + g(defect) + ", centre inequality " + std::to_string(total - bad) + "/" + std::to_string(total)};
}

Outcome uniqueness() {
  const lab::UniquenessReport u = lab::uniqueness_experiment(config());
  bool ok = u.identical_max_w == 0.0 && !u.ratios.empty();
  std::string rs;
  for (double q : u.ratios) {
    ok = ok && std::abs(q - 16.0) <= 0.3 * 16.0;
    rs += " " + g(q);
  }
  return {ok, "identical " + g(u.identical_max_w) + ", ratios" + rs};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"resonance_bounds", resonance_bounds},
      {"omega_identities", omega_identities},
      {"kp2_sign_coherence", sign_coherence},
      {"commutator_triple", commutator_triple},
      {"role_switch", role_switch},
      {"kernel_decay", kernel_decay},
      {"strichartz", strichartz},
      {"conservation", conservation},
      {"shell_energy_identity", shell_identity},
      {"duhamel_and_convergence", duhamel_convergence},
      {"dilation", dilation},
      {"time_splitting", time_splitting},
      {"uniqueness", uniqueness},
  };
  std::vector<std::string> wanted(argv + 1, argv + argc);
  for (const auto& w : wanted)
    if (std::none_of(criteria.begin(), criteria.end(), [&](const auto& c) { return c.first == w; })) {
      std::fprintf(stderr, "unknown criterion '%s'\n", w.c_str());
      return 2;
    }
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), name) == wanted.end()) continue;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
