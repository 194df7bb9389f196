#include "kp5/lab/suites.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "kp5/dilation.hpp"
#include "kp5/errors.hpp"
#include "kp5/field_io.hpp"
#include "kp5/invariants.hpp"
#include "kp5/kernel.hpp"
#include "kp5/lab/experiments.hpp"
#include "kp5/modulation.hpp"
#include "kp5/multipliers.hpp"
#include "kp5/resonance.hpp"
#include "kp5/shells.hpp"
#include "kp5/strichartz.hpp"
#include "kp5/time_partition.hpp"

namespace kp5::lab {
namespace {

using nlohmann::json;
constexpr double pi = std::numbers::pi;

std::string g(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

Check check(std::string name, bool pass, std::string detail) { return {std::move(name), pass, std::move(detail)}; }

SuiteResult finish(std::string name, std::vector<Check> checks, json report, std::uint64_t seed,
                   ArtifactWriter& out) {
  SuiteResult r{std::move(name), std::move(checks), std::move(report)};
  r.report["suite"] = r.name;
  r.report["seed"] = seed;
  r.report["checks"] = checks_json(r.checks);
  r.report["pass"] = r.pass();
  out.json(r.name + ".json", r.report);
  return r;
}

std::string exponent(const Exponent& e) { return e.is_infinite() ? "inf" : fmt(e.value()); }

// ---- resonance ------------------------------------------------------------

SuiteResult resonance(const RunConfig& cfg, int samples, ArtifactWriter& out) {
  const std::uint64_t n = samples > 0 ? samples : 1000000;
  const std::uint64_t side = std::min<std::uint64_t>(n, 100000);
  const ResonanceSweep sw = resonance_sweep(n, cfg.seed);
  const IdentitySweep id = omega_identity_sweep(side, derive_seed(cfg.seed, {1}));
  const SignCoherenceReport sc = sign_coherence_check(side, derive_seed(cfg.seed, {2}));
  std::vector<Check> c;
  c.push_back(check("gap_bounds", sw.failures == 0,
                    fmt(static_cast<long>(sw.failures)) + " failures in " + fmt(static_cast<long>(sw.samples))));
  c.push_back(check("swap_identity", id.swap_defect <= 1e-12, "max rel defect " + g(id.swap_defect)));
  c.push_back(check("reversal_identity", id.reversal_defect <= 1e-12, "max rel defect " + g(id.reversal_defect)));
  c.push_back(check("reflection_identity", id.reflection_defect <= 1e-12,
                    "max rel defect " + g(id.reflection_defect)));
  c.push_back(check("kp2_sign_coherence", sc.kp2_compound == sc.samples,
                    fmt(static_cast<long>(sc.kp2_compound)) + "/" + fmt(static_cast<long>(sc.samples)) +
                        " compound exactly"));
  c.push_back(check("kp1_conflicts_reported", sc.kp1_conflicts > 0,
                    fmt(static_cast<long>(sc.kp1_conflicts)) + " conflicting samples"));
  json rep = {{"samples", sw.samples},
              {"failures", sw.failures},
              {"max_lower_slack", sw.max_lower_slack},
              {"max_upper_slack", sw.max_upper_slack},
              {"identities",
               {{"samples", id.samples},
                {"swap_defect", id.swap_defect},
                {"reversal_defect", id.reversal_defect},
                {"reflection_defect", id.reflection_defect},
                // Omega(xi, xi1) = -Omega(xi - xi1, xi1) as printed; false, e.g. (2, 1): 30 vs 0
                {"stated_negation_defect", id.literal_defect},
                {"stated_negation_counterexample", {{"xi", 2}, {"xi1", 1}, {"lhs", omega_gap(2, 1)},
                                                    {"rhs", -omega_gap(1, 1)}}}}},
              {"sign_coherence",
               {{"samples", sc.samples}, {"kp2_compound", sc.kp2_compound}, {"kp1_conflicts", sc.kp1_conflicts}}}};
  return finish("resonance", std::move(c), std::move(rep), cfg.seed, out);
}

// ---- commutator -----------------------------------------------------------

SuiteResult commutator(const RunConfig& cfg, int samples, ArtifactWriter& out) {
  const int pairs = samples > 0 ? samples : 50;
  const double N = 8, N3 = 1, L = 2 * pi * 36;
  const int n = 4096;
  double worst_sym = 0.0, worst_oracle = 0.0, schur = 0.0;
  std::vector<CsvRow> rows;
  for (int s = 0; s < pairs; ++s) {
    const Signal1D gs = random_signal(L, n, 0, 3.2 * N3, derive_seed(cfg.seed, {10, std::uint64_t(s)}));
    const Signal1D hs = random_signal(L, n, 0.625 * N, 6.4 * N, derive_seed(cfg.seed, {11, std::uint64_t(s)}));
    const Signal1D spec = commutator_spectral(gs, hs, N, N3);
    const double ref = l2_norm(spec);
    const double e1 = l2_norm(commutator_via_symbol(gs, hs, N, N3) - spec) / ref;
    const KernelOracleResult o = commutator_kernel_oracle(gs, hs, N, N3);
    const double e2 = l2_norm(o.value - spec) / ref;
    worst_sym = std::max(worst_sym, e1);
    worst_oracle = std::max(worst_oracle, e2);
    schur = std::max({schur, o.schur_row, o.schur_col});
    rows.push_back({fmt(s), fmt(e1), fmt(e2), fmt(o.schur_row), fmt(o.schur_col)});
  }
  out.csv("commutator_pairs.csv", {"pair", "symbol_rel_err", "oracle_rel_err", "schur_row", "schur_col"}, rows);

  struct P {
    double N, N3;
  };
  std::vector<CsvRow> crow;
  double lo = 1e300, hi = 0.0;
  for (P p : {P{8, 1}, P{16, 1}, P{32, 1}, P{64, 1}, P{128, 1}, P{16, 2}, P{32, 2}, P{64, 2}, P{128, 2}, P{256, 2}}) {
    const auto r = commutator_constant(p.N, p.N3, 100, derive_seed(cfg.seed, {12, std::uint64_t(p.N), std::uint64_t(p.N3)}),
                                       2 * pi * 4, 8192);
    lo = std::min(lo, r.max_ratio);
    hi = std::max(hi, r.max_ratio);
    crow.push_back({fmt(p.N), fmt(p.N3), fmt(r.samples), fmt(r.max_ratio)});
  }
  out.csv("commutator_constant.csv", {"N", "N3", "samples", "max_ratio"}, crow);
  std::vector<Check> c;
  c.push_back(check("spectral_vs_symbol", worst_sym <= 1e-10, "max rel " + g(worst_sym)));
  c.push_back(check("spectral_vs_kernel_oracle", worst_oracle <= 1e-6, "max rel " + g(worst_oracle)));
  c.push_back(check("schur_sums_finite", std::isfinite(schur), "max " + g(schur)));
  c.push_back(check("constant_stable", hi / lo <= 4.0, "max/min " + g(hi / lo) + " over N/N3 in 8..128"));
  json rep = {{"pairs", pairs},          {"N", N},           {"N3", N3},
              {"max_symbol_rel_err", worst_sym}, {"max_oracle_rel_err", worst_oracle}, {"max_schur", schur},
              {"constant_min", lo},      {"constant_max", hi}};
  return finish("commutator", std::move(c), std::move(rep), cfg.seed, out);
}

// ---- acceptability --------------------------------------------------------

SuiteResult acceptability(const RunConfig& cfg, int samples, ArtifactWriter& out) {
  const int k = samples > 0 ? samples : 20;
  const double L = 2 * pi;
  std::vector<CsvRow> rows;
  std::vector<Check> c;
  std::uint64_t tag = 0;
  auto probe = [&](const SymbolSpec& a, double norm, int n, double band) {
    const auto r = acceptability_probe(a, k, derive_seed(cfg.seed, {20, tag++}), L, n, band, norm);
    rows.push_back({a.name, fmt(a.N), fmt(a.N3), fmt(r.samples), fmt(r.normalisation), fmt(r.max_ratio)});
    return r.max_ratio;
  };
  c.push_back(check("one_holder", probe(symbol_one(), 1.0, 256, 30) <= 1.0 + 1e-12, "ratio <= 1"));
  double worst = 0.0;
  for (double N : {2.0, 4.0, 8.0}) {
    worst = std::max(worst, probe(symbol_a2(N), 1.0, 256, 30));
    worst = std::max(worst, probe(role_switch_tilde(symbol_a2(N)), 1.0, 256, 30));
    worst = std::max(worst, probe(symbol_a3(N), 1.0, 256, 30));
    worst = std::max(worst, probe(role_switch_tilde(symbol_a3(N)), 1.0, 256, 30));
  }
  c.push_back(check("a2_a3_bounded", worst < 10.0, "max ratio " + g(worst)));
  double lo = 1e300, hi = 0.0;
  for (double N : {8.0, 16.0, 32.0}) {
    const double r = probe(role_switch_tilde(symbol_a1(N, 1.0)), N, 512, 100);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  c.push_back(check("a1_tilde_bounded", std::isfinite(hi) && hi / lo <= 4.0,
                    "N/N3-normalised max " + g(hi) + ", spread " + g(hi / lo)));
  out.csv("acceptability.csv", {"symbol", "N", "N3", "samples", "normalisation", "max_ratio"}, rows);
  return finish("acceptability", std::move(c), {{"samples", k}, {"max_ratio_a2_a3", worst}}, cfg.seed, out);
}

// ---- decay ----------------------------------------------------------------

SuiteResult decay(const RunConfig& cfg, int, ArtifactWriter& out) {
  const DispersionSign d = cfg.params.delta;
  const KernelDecayReport rep = kernel_decay_sweep({0.01, 0.1, 1, 10}, {2, 4, 8, 16}, d);
  std::vector<CsvRow> rows;
  double over = 0.0;
  for (const auto& r : rep.rows) {
    rows.push_back({fmt(r.N), fmt(r.t), fmt(r.sup_abs_G), fmt(r.c1_ratio), fmt(r.c2_ratio)});
    over = std::max(over, r.sup_abs_G / kernel_G_ceiling(r.t, r.N));
  }
  out.csv("decay.csv", {"N", "t", "sup_abs_G", "c1_ratio", "c2_ratio"}, rows);
  struct C {
    double x, y, t, N;
    int d;
  };
  double worst = 0.0;
  json cases = json::array();
  for (C k : {C{0.3, 0.7, 0.5, 2, 1}, C{-1.0, 0.2, 0.1, 2, 1}, C{2.0, -1.5, 1.0, 1, -1}, C{0.0, 0.0, 0.2, 1, 1},
              C{1.0, 0.5, 0.3, 2, -1}}) {
    const cplx a = kernel_G(k.x, k.y, k.t, k.N, DispersionSign(k.d));
    const cplx b = kernel_G_direct(k.x, k.y, k.t, k.N, DispersionSign(k.d));
    const double e = std::abs(a - b) / std::abs(b);
    worst = std::max(worst, e);
    cases.push_back({{"x", k.x}, {"y", k.y}, {"t", k.t}, {"N", k.N}, {"delta", k.d}, {"reduced", a.real()},
                     {"direct", b.real()}, {"rel_err", e}});
  }
  const double s0 = rep.spread(0.0), s14 = rep.spread(0.25), s12 = rep.spread(0.5);
  std::vector<Check> c;
  c.push_back(check("decay_sqrt_t_single_constant", s0 <= 5.0, "max/min of sup|G| t^{1/2} N^{-3/2} = " + g(s0)));
  c.push_back(check("decay_1_over_t_single_constant", s12 <= 5.0, "max/min of sup|G| t N = " + g(s12)));
  c.push_back(check("below_triangle_ceiling", over <= 1.0, "max sup/ceiling " + g(over)));
  c.push_back(check("reduced_vs_2d", worst <= 1e-4, "max rel " + g(worst) + " on 5 cases"));
  json r = {{"delta", d.value()},
            {"spread_theta0", s0},
            {"spread_theta_quarter", s14},
            {"spread_theta_half", s12},
            {"cases", cases}};
  return finish("decay", std::move(c), std::move(r), cfg.seed, out);
}

// ---- strichartz -----------------------------------------------------------

SuiteResult strichartz(const RunConfig& cfg, int samples, ArtifactWriter& out) {
  const int k = samples > 0 ? samples : 4;
  const auto& sc = cfg.strichartz;
  const DispersionSign d = cfg.params.delta;
  const AdmissiblePair p44{Exponent(4), Exponent(4)}, p2{Exponent::infinity(), Exponent(2)};
  std::vector<CsvRow> rows;
  std::vector<Check> c;
  json rep = {{"samples", k}, {"horizon_unit", sc.horizon}, {"delta", d.value()}};
  double lo = 1e300, hi = 0.0, rlo = 1e300, rhi = 0.0, unit = 0.0;
  try {
    for (double N : {4.0, 8.0, 16.0, 32.0}) {
      const double T = sc.horizon / std::pow(N, 5);
      const std::uint64_t s = derive_seed(cfg.seed, {30, std::uint64_t(N)});
      for (auto [pair, mode, n] : {std::tuple{p44, ProbeMode::homogeneous, k}, std::tuple{p44, ProbeMode::retarded, k},
                                   std::tuple{p2, ProbeMode::homogeneous, 1}}) {
        const StrichartzReport r = strichartz_probe(N, pair, T, n, mode, s, d, sc.geometry);
        rows.push_back({fmt(N), exponent(pair.q), exponent(pair.r), to_string(mode), fmt(r.sample_count),
                        fmt(r.max_ratio), fmt(r.median_ratio), fmt(r.boundary_mass)});
        if (pair.q.is_infinite()) {
          unit = std::max(unit, std::abs(r.max_ratio - 1.0));
        } else if (mode == ProbeMode::homogeneous) {
          lo = std::min(lo, r.max_ratio);
          hi = std::max(hi, r.max_ratio);
        } else {
          rlo = std::min(rlo, r.max_ratio);
          rhi = std::max(rhi, r.max_ratio);
        }
      }
    }
  } catch (const ProbeInvalidError& e) {
    out.csv("strichartz.csv", {"N", "q", "r", "mode", "sample_count", "max_ratio", "median_ratio", "boundary_mass"},
            rows);
    rep["probe_invalid"] = e.what();
    c.push_back(check("boundary_monitor", false, e.what()));
    return finish("strichartz", std::move(c), std::move(rep), cfg.seed, out);
  }
  out.csv("strichartz.csv", {"N", "q", "r", "mode", "sample_count", "max_ratio", "median_ratio", "boundary_mass"},
          rows);
  c.push_back(check("boundary_monitor", true, "all probes below 1e-6 boundary-layer mass"));
  c.push_back(check("homogeneous_44_spread", hi / lo <= 3.0, "max/min over N=4..32 " + g(hi / lo)));
  c.push_back(check("retarded_44_spread", rhi / rlo <= 3.0, "max/min over N=4..32 " + g(rhi / rlo)));
  c.push_back(check("unitarity_inf_2", unit <= 1e-12, "max |ratio - 1| " + g(unit)));
  rep["homogeneous_spread"] = hi / lo;
  rep["retarded_spread"] = rhi / rlo;
  rep["unitarity_defect"] = unit;
  return finish("strichartz", std::move(c), std::move(rep), cfg.seed, out);
}

// ---- partition ------------------------------------------------------------

TrajectoryRecord reference_run(const RunConfig& cfg, DispersionSign d, bool nonlinear = true) {
  ModelParams p = cfg.params;
  p.delta = d;
  p.nonlinear = nonlinear;
  return evolve(make_initial_data(cfg), p);
}

TrajectoryRecord thin(const TrajectoryRecord& r, int stride) {
  TrajectoryRecord t;
  t.params = r.params;
  t.params.record_stride *= stride;
  for (std::size_t k = 0; k < r.times.size(); k += stride) {
    t.times.push_back(r.times[k]);
    t.fields.push_back(r.fields[k]);
  }
  return t;
}

SuiteResult partition(const RunConfig& cfg, int, ArtifactWriter& out) {
  std::vector<Check> c;
  std::vector<double> mesh(10000);
  const double T = cfg.params.T;
  for (int k = 0; k < 10000; ++k) mesh[k] = T * k / 9999.0;
  double defect = 0.0, absorb = 0.0;
  for (int N1 : {2, 4, 8, 16, 32}) {
    const TimePartition p = time_partition(N1, T, mesh);
    defect = std::max(defect, partition_defect(p));
    for (int j = 0; j <= N1; ++j)
      for (std::size_t k = 0; k < mesh.size(); ++k)
        absorb = std::max(absorb, std::abs(p.eta[j][k] * p.eta_tilde[j][k] - p.eta[j][k]));
  }
  c.push_back(check("partition_of_unity", defect <= 1e-10, "max defect " + g(defect) + " on 1e4 points"));
  c.push_back(check("eta_tilde_absorbs", absorb <= 1e-15, "max |eta eta~ - eta| " + g(absorb)));

  const TrajectoryRecord rec = reference_run(cfg, cfg.params.delta);
  const ShellSystem shells(rec.grid());
  std::vector<CsvRow> rows;
  int bad = 0, total = 0;
  for (double N : shells.scales())
    for (int n : {2, 4, 8, 16, 32}) {
      const CenterReport r = time_split_centers(rec, N, n);
      for (const auto& row : r.rows) {
        ++total;
        bad += !row.holds;
        rows.push_back({fmt(N), fmt(n), fmt(row.j), fmt(row.lo), fmt(row.hi), fmt(row.samples), fmt(row.center),
                        fmt(row.at_center), fmt(row.mean), row.holds ? "1" : "0"});
      }
    }
  out.csv("centers.csv", {"N", "intervals", "j", "lo", "hi", "samples", "center", "norm2_at_center", "mean_norm2", "holds"},
          rows);
  c.push_back(check("c_ij_inequality", bad == 0, fmt(total - bad) + "/" + fmt(total) + " (N, j) hold"));

  // modulation diagnostics on the same run, every 4th record
  const ModulationDecomposition m = modulation_besov(thin(rec, 4), {}, cfg.params.delta);
  double sum = 0.0;
  std::vector<CsvRow> mrow;
  for (std::size_t k = 0; k < m.L.size(); ++k) {
    sum += m.shell_mass[k];
    mrow.push_back({fmt(m.L[k]), fmt(m.shell_mass[k]), fmt(m.shell_norm[k])});
  }
  out.csv("modulation.csv", {"L", "shell_mass", "shell_norm"}, mrow);
  const double plancherel = std::abs(sum - m.total_mass) / m.total_mass;
  c.push_back(check("modulation_partition", m.partition_defect <= 1e-10, "max defect " + g(m.partition_defect)));
  c.push_back(check("modulation_plancherel", plancherel <= 1e-10, "rel " + g(plancherel)));
  json rep = {{"partition_defect", defect},
              {"centers_checked", total},
              {"centers_failed", bad},
              {"modulation", {{"total_mass", m.total_mass}, {"besov", m.besov}, {"sigma_nyquist", m.sigma_nyquist}}}};
  return finish("partition", std::move(c), std::move(rep), cfg.seed, out);
}

// ---- energy identity / conservation --------------------------------------

std::vector<CsvRow> conservation_rows(const TrajectoryRecord& rec) {
  std::vector<CsvRow> rows;
  const double m0 = rec.diagnostics.front().mass, e0 = rec.diagnostics.front().energy;
  for (const auto& s : rec.diagnostics)
    rows.push_back({fmt(s.t), fmt(s.mass), fmt(s.energy), fmt(m0 != 0 ? (s.mass - m0) / std::abs(m0) : 0.0),
                    fmt(e0 != 0 ? (s.energy - e0) / std::abs(e0) : 0.0)});
  return rows;
}

double drift(const TrajectoryRecord& rec, bool energy_series) {
  std::vector<double> v;
  for (const auto& s : rec.diagnostics) v.push_back(energy_series ? s.energy : s.mass);
  return relative_drift(v);
}

double order_study(const RunConfig& cfg, std::vector<double>& diffs) {
  // three-level self-convergence at dt 0.005 / 0.0025 / 0.00125 against dt / 2 each
  RunConfig c = cfg;
  c.uniqueness.a = {0.005, cfg.params.dealias};
  c.uniqueness.b = {0.0025, cfg.params.dealias};
  c.uniqueness.levels = 3;
  c.uniqueness.record_dt = 0.005;
  const UniquenessReport r = uniqueness_experiment(c);
  for (const auto& L : r.levels) diffs.push_back(L.max_w);
  return std::log2(r.ratios.back());
}

SuiteResult energy_identity(const RunConfig& cfg, int, ArtifactWriter& out) {
  std::vector<Check> c;
  json rep = json::object();
  std::vector<CsvRow> srows;
  for (int dv : {1, -1}) {
    const DispersionSign d(dv);
    const std::string tag = dv > 0 ? "kp1" : "kp2";
    const TrajectoryRecord rec = reference_run(cfg, d);
    out.csv("conservation_" + tag + ".csv", {"t", "mass", "energy", "mass_drift", "energy_drift"},
            conservation_rows(rec));
    const double md = drift(rec, false), ed = drift(rec, true);
    c.push_back(check("mass_drift_" + tag, md < 1e-8, "relative " + g(md)));
    c.push_back(check("energy_drift_" + tag, ed < 1e-6, "relative " + g(ed) + " with c3 = " + g(rec.params.c3)));

    const ShellSystem shells(rec.grid());
    double worst = 0.0;
    for (const auto& r : shell_energy_identities(rec, shells.scales())) {
      srows.push_back({tag, fmt(r.N), fmt(r.residual), r.resolvable ? "1" : "0", r.empty ? "1" : "0"});
      if (r.resolvable) worst = std::max(worst, r.residual);
    }
    c.push_back(check("shell_identity_" + tag, worst < 1e-3, "max resolvable residual " + g(worst)));

    const TrajectoryRecord lin = reference_run(cfg, d, false);
    double lworst = 0.0;
    for (const auto& r : shell_energy_identities(lin, shells.scales())) lworst = std::max(lworst, r.residual);
    c.push_back(check("shell_identity_linear_" + tag, lworst <= 1e-10, "max residual " + g(lworst)));

    double dw = 0.0;
    for (double frac : {0.1, 0.5, 0.9}) {
      const double cc = rec.times[std::lround(frac * (rec.times.size() - 1))];
      dw = std::max(dw, duhamel_residual_window(rec, cc, 0.1).residual);
    }
    c.push_back(check("duhamel_" + tag, dw < 1e-4, "max residual " + g(dw) + " for |t - c| <= 0.1"));
    rep[tag] = {{"mass_drift", md}, {"energy_drift", ed}, {"shell_residual", worst},
                {"linear_shell_residual", lworst}, {"duhamel_residual", dw}};
  }
  out.csv("shell_energy.csv", {"model", "N", "residual", "resolvable", "empty"}, srows);
  std::vector<double> diffs;
  const double order = order_study(cfg, diffs);
  c.push_back(check("self_convergence_order", std::abs(order - 4.0) <= 0.3, "order " + g(order)));
  rep["self_convergence"] = {{"dt", {0.005, 0.0025, 0.00125}}, {"max_diff", diffs}, {"order", order}};
  return finish("energy_identity", std::move(c), std::move(rep), cfg.seed, out);
}

}  // namespace

bool SuiteResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

json checks_json(const std::vector<Check>& checks) {
  json a = json::array();
  for (const auto& c : checks) a.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return a;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"resonance", "commutator", "acceptability", "decay",
                                              "strichartz", "partition",  "energy_identity"};
  return names;
}

SuiteResult run_suite(const std::string& which, const RunConfig& cfg, int samples, ArtifactWriter& out) {
  if (which == "resonance") return resonance(cfg, samples, out);
  if (which == "commutator") return commutator(cfg, samples, out);
  if (which == "acceptability") return acceptability(cfg, samples, out);
  if (which == "decay") return decay(cfg, samples, out);
  if (which == "strichartz") return strichartz(cfg, samples, out);
  if (which == "partition") return partition(cfg, samples, out);
  if (which == "energy_identity") return energy_identity(cfg, samples, out);
  throw ConfigError("unknown suite '" + which + "'");
}

SuiteResult run_simulate(const RunConfig& cfg, ArtifactWriter& out) {
  const TrajectoryRecord rec = evolve(make_initial_data(cfg), cfg.params);
  out.csv("conservation.csv", {"t", "mass", "energy", "mass_drift", "energy_drift"}, conservation_rows(rec));
  const ShellSystem shells(rec.grid());
  std::vector<CsvRow> rows;
  for (const auto& r : shell_energy_identities(rec, shells.scales()))
    rows.push_back({fmt(r.N), fmt(r.residual), r.resolvable ? "1" : "0", r.empty ? "1" : "0"});
  out.csv("shell_energy.csv", {"N", "residual", "resolvable", "empty"}, rows);
  std::ostringstream bin;
  write_fields(bin, rec.times, rec.fields);
  out.bytes("trajectory.kp5t", bin.str(), "trajectory");
  json rep = {{"records", rec.times.size()},
              {"mass_drift", drift(rec, false)},
              {"energy_drift", drift(rec, true)},
              {"final_max_amplitude", rec.diagnostics.back().max_amplitude}};
  return finish("simulate", {}, std::move(rep), cfg.seed, out);
}

SuiteResult run_uniqueness(const RunConfig& cfg, ArtifactWriter& out) {
  const UniquenessReport r = uniqueness_experiment(cfg);
  std::vector<CsvRow> rows;
  for (std::size_t l = 0; l < r.levels.size(); ++l) {
    const auto& L = r.levels[l];
    for (std::size_t k = 0; k < L.times.size(); ++k)
      for (std::size_t s = 0; s < r.sobolev.size(); ++s)
        rows.push_back({fmt(static_cast<long>(l)), fmt(L.dt_a), fmt(L.dt_b), fmt(L.times[k]), fmt(r.sobolev[s]),
                        fmt(L.w_norm[s][k]), fmt(L.z_norm[s][k])});
  }
  out.csv("uniqueness.csv", {"level", "dt_a", "dt_b", "t", "s", "w_norm", "z_norm"}, rows);
  std::vector<Check> c;
  c.push_back(check("identical_schemes_zero", r.identical_max_w == 0.0, "max |w| " + g(r.identical_max_w)));
  bool ratios_ok = !r.ratios.empty();
  std::string rs;
  for (double q : r.ratios) {
    ratios_ok = ratios_ok && std::abs(q - 16.0) <= 0.3 * 16.0;
    rs += g(q) + " ";
  }
  c.push_back(check("refinement_ratio", ratios_ok, "max_t ||w|| ratios " + rs));
  json levels = json::array();
  bool diverged = false;
  double wres = 0.0, zres = 0.0, recon = 0.0;
  for (const auto& L : r.levels) {
    diverged = diverged || L.diverged;
    wres = std::max(wres, L.w_residual_z);
    zres = std::max(zres, L.z_residual);
    recon = std::max(recon, L.reconstruction);
    levels.push_back({{"dt_a", L.dt_a}, {"dt_b", L.dt_b}, {"max_w", L.max_w}, {"w_residual_rel_w", L.w_residual},
                      {"w_residual_rel_z", L.w_residual_z}, {"z_residual", L.z_residual},
                      {"reconstruction", L.reconstruction}, {"diverged", L.diverged}});
  }
  c.push_back(check("no_divergence", !diverged, diverged ? "a scheme pair diverged" : "all levels stable"));
  c.push_back(check("w_equation_residual", wres < 1e-4, "max " + g(wres) + " (relative to max ||z||)"));
  c.push_back(check("z_equation_residual", zres < 1e-4, "max " + g(zres)));
  c.push_back(check("reconstruction_exact", recon <= 1e-15 * 8, "max " + g(recon)));
  json rep = {{"sobolev", r.sobolev}, {"ratios", r.ratios}, {"identical_max_w", r.identical_max_w}, {"levels", levels}};
  return finish("uniqueness", std::move(c), std::move(rep), cfg.seed, out);
}

SuiteResult run_scaling(const RunConfig& cfg, ArtifactWriter& out) {
  const ScalingConfig& s = cfg.scaling;
  const double T = cfg.params.T;
  std::vector<double> eps = s.epsilon;
  std::sort(eps.begin(), eps.end(), std::greater<>());
  std::vector<CsvRow> rows;
  bool monotone = true, threshold = true;
  double prev = 0.0;
  for (double e : eps) {
    const ScalingBook b = scaling_bookkeeping(s.norms, e, T);
    rows.push_back({fmt(b.epsilon), fmt(b.max_norm), fmt(b.T), fmt(b.lambda), fmt(b.T_eps)});
    monotone = monotone && b.T_eps > prev;
    prev = b.T_eps;
    if (e < std::pow(T, 0.4)) threshold = threshold && b.T_eps > 1.0;
  }
  out.csv("scaling.csv", {"epsilon", "max_norm", "T", "lambda", "T_eps"}, rows);
  std::vector<Check> c;
  const ScalingBook ref = scaling_bookkeeping({0.0}, 0.25, 1.0);
  c.push_back(check("reference_values", ref.lambda == 0.5 && ref.T_eps == 32.0,
                    "eps 1/4: lambda " + g(ref.lambda) + ", T_eps " + g(ref.T_eps)));
  c.push_back(check("T_eps_monotone", monotone, "T_eps increases as eps decreases"));
  c.push_back(check("threshold", threshold, "eps < T^{2/5} gives T_eps > 1"));
  bool domain = true;
  for (double e : {0.0, 1.0, -0.5}) {
    try {
      scaling_bookkeeping(s.norms, e, T);
      domain = false;
    } catch (const DomainError&) {
    }
  }
  c.push_back(check("epsilon_domain", domain, "eps outside (0, 1) rejected"));

  const Field2D u0 = make_initial_data(cfg);
  const double l2 = std::abs(l2_norm(dilate(u0, s.lambda)) / (s.lambda * s.lambda * l2_norm(u0)) - 1.0);
  c.push_back(check("dilation_l2_scaling", l2 <= 1e-12, "rel " + g(l2)));
  ModelParams p = cfg.params;
  p.T = s.T;
  p.record_stride = 1;
  const CommutationReport cr = dilation_flow_commutation(u0, s.lambda, p);
  c.push_back(check("flow_commutation", cr.discrepancy < 1e-6, "max rel " + g(cr.discrepancy)));
  json rep = {{"lambda", s.lambda}, {"l2_defect", l2}, {"commutation", cr.discrepancy}, {"horizon", s.T}};
  return finish("scaling", std::move(c), std::move(rep), cfg.seed, out);
}

}  // namespace kp5::lab
