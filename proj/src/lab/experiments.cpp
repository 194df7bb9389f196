#include "kp5/lab/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "kp5/errors.hpp"
#include "kp5/invariants.hpp"
#include "kp5/shells.hpp"
#include "kp5/spectral_ops.hpp"

namespace kp5::lab {

ScalingBook scaling_bookkeeping(const std::vector<double>& norms, double epsilon, double T) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("scaling_bookkeeping: epsilon must lie in (0, 1)");
  if (!(T > 0.0)) throw DomainError("scaling_bookkeeping: T must be positive");
  double m = 0.0;
  for (double n : norms) {
    if (!(n >= 0.0)) throw DomainError("scaling_bookkeeping: norms must be >= 0");
    m = std::max(m, n);
  }
  ScalingBook b{epsilon, m, T};
  b.lambda = std::sqrt(epsilon) / std::sqrt(1.0 + m);
  b.T_eps = T / std::pow(b.lambda, 5);
  return b;
}

bool CenterReport::all_hold() const {
  return std::all_of(rows.begin(), rows.end(), [](const CenterRow& r) { return r.holds; });
}

CenterReport time_split_centers(const TrajectoryRecord& traj, double N, int intervals) {
  if (intervals < 1) throw ContractError("time_split_centers: need at least one interval");
  const auto& t = traj.times;
  const double T = t.back() - t.front();
  std::vector<double> n2(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double v = l2_norm(project_shell(traj.fields[k], N));
    n2[k] = v * v;
  }
  CenterReport rep{N, intervals, {}};
  const double h = T / intervals, tol = 1e-9 * traj.record_dt();
  for (int j = 0; j <= intervals; ++j) {
    const double lo = std::max(t.front(), t.front() + h * (j - 0.5)), hi = std::min(t.back(), t.front() + h * (j + 0.5));
    std::vector<std::size_t> in;
    for (std::size_t k = 0; k < t.size(); ++k)
      if (t[k] >= lo - tol && t[k] <= hi + tol) in.push_back(k);
    if (in.size() < 4) throw ContractError("time_split_centers: fewer than 4 record times in an interval");
    CenterRow r;
    r.j = j;
    r.lo = t[in.front()];
    r.hi = t[in.back()];
    r.samples = static_cast<int>(in.size());
    std::size_t best = in.front();
    double integral = 0.0;
    for (std::size_t q = 0; q < in.size(); ++q) {
      if (n2[in[q]] < n2[best]) best = in[q];
      if (q) integral += 0.5 * (t[in[q]] - t[in[q - 1]]) * (n2[in[q]] + n2[in[q - 1]]);
    }
    r.center = t[best];
    r.at_center = n2[best];
    r.mean = integral / (r.hi - r.lo);
    r.holds = r.at_center <= r.mean * (1.0 + 1e-10);
    rep.rows.push_back(r);
  }
  return rep;
}

namespace {

TrajectoryRecord run_scheme(const Field2D& u0, const RunConfig& cfg, const SchemeConfig& s, double record_dt) {
  ModelParams p = cfg.params;
  p.dt = s.dt;
  p.dealias = s.dealias;
  p.record_stride = static_cast<int>(std::lround(record_dt / s.dt));
  return evolve(u0, p);
}

TrajectoryRecord combine(const TrajectoryRecord& a, const TrajectoryRecord& b, double sign) {
  TrajectoryRecord r;
  r.params = a.params;
  r.times = a.times;
  for (std::size_t k = 0; k < a.fields.size(); ++k) {
    std::vector<double> s(a.fields[k].samples().begin(), a.fields[k].samples().end());
    const auto bs = b.fields[k].samples();
    for (std::size_t q = 0; q < s.size(); ++q) s[q] += sign * bs[q];
    r.fields.push_back(Field2D(a.grid(), std::move(s)));
  }
  return r;
}

double max_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); }

// worst Duhamel residual over windows of 0.1 centred on a few record times
double equation_residual(const TrajectoryRecord& rec, const DuhamelFlux& flux) {
  const double T = rec.times.back();
  const double window = std::min(0.1, T);
  double worst = 0.0, norm = 0.0;
  for (const auto& f : rec.fields) norm = std::max(norm, l2_norm(f));
  for (double frac : {0.0, 0.5, 1.0}) {
    const double c = rec.times[rec.index_of(rec.times[std::lround(frac * (rec.times.size() - 1))])];
    const auto r = duhamel_residual_forced(rec, flux, c, window);
    // back to an absolute size, the report normalises per time
    worst = std::max(worst, r.residual * l2_norm(rec.fields[rec.index_of(r.t)]));
  }
  return norm > 0.0 ? worst / norm : worst;
}

UniquenessLevel compare(const Field2D& u0, const RunConfig& cfg, const SchemeConfig& sa, const SchemeConfig& sb,
                        const std::vector<double>& sobolev) {
  const double rdt = cfg.uniqueness.record_dt;
  const TrajectoryRecord u1 = run_scheme(u0, cfg, sa, rdt), u2 = run_scheme(u0, cfg, sb, rdt);
  if (u1.times.size() != u2.times.size()) throw ContractError("uniqueness: record meshes differ");
  UniquenessLevel L;
  L.dt_a = sa.dt;
  L.dt_b = sb.dt;
  L.times = u1.times;
  const TrajectoryRecord w = combine(u1, u2, -1.0), z = combine(u1, u2, 1.0);
  L.w_norm.assign(sobolev.size(), {});
  L.z_norm.assign(sobolev.size(), {});
  for (std::size_t k = 0; k < w.fields.size(); ++k) {
    for (std::size_t s = 0; s < sobolev.size(); ++s) {
      L.w_norm[s].push_back(sobolev_norm(w.fields[k], sobolev[s], 0.0));
      L.z_norm[s].push_back(sobolev_norm(z.fields[k], sobolev[s], 0.0));
    }
    for (std::size_t q = 0; q < w.grid().size(); ++q) {
      const double a = u1.fields[k].samples()[q], b = u2.fields[k].samples()[q];
      const double wq = w.fields[k].samples()[q], zq = z.fields[k].samples()[q];
      L.reconstruction = std::max(L.reconstruction, std::abs(a - 0.5 * (zq + wq)) + std::abs(b - 0.5 * (zq - wq)));
    }
  }
  std::vector<double> wl2, zl2;
  for (std::size_t k = 0; k < w.fields.size(); ++k) {
    wl2.push_back(l2_norm(w.fields[k]));
    zl2.push_back(l2_norm(z.fields[k]));
  }
  L.max_w = max_of(wl2);
  // one record interval of truncation, accumulated linearly, with a 10x margin
  const double first = wl2.size() > 1 ? wl2[1] : 0.0;
  L.diverged = !std::isfinite(L.max_w) || (first > 0.0 && L.max_w > 10.0 * first * (wl2.size() - 1));

  if (cfg.params.nonlinear) {
    // w_t + d_x^5 w + d_x P(w z) + ... = 0 with P(wz) = P(u1^2) - P(u2^2); z with u1^2 + u2^2
    const double da = sa.dealias;
    const DuhamelFlux fw = [&](std::size_t k) {
      Spectrum2D s = nonlinear_spectrum(u1.fields[k], da);
      const Spectrum2D b = nonlinear_spectrum(u2.fields[k], da);
      for (std::size_t q = 0; q < s.coeffs.size(); ++q) s.coeffs[q] -= b.coeffs[q];
      return s;
    };
    const DuhamelFlux fz = [&](std::size_t k) {
      Spectrum2D s = nonlinear_spectrum(u1.fields[k], da);
      const Spectrum2D b = nonlinear_spectrum(u2.fields[k], da);
      for (std::size_t q = 0; q < s.coeffs.size(); ++q) s.coeffs[q] += b.coeffs[q];
      return s;
    };
    const double wres = L.max_w > 0.0 ? equation_residual(w, fw) : 0.0;  // relative to max ||w||
    L.w_residual = wres;
    L.w_residual_z = wres * L.max_w / max_of(zl2);
    L.z_residual = equation_residual(z, fz);
  }
  return L;
}

}  // namespace

UniquenessReport uniqueness_experiment(const RunConfig& cfg) {
  const Field2D u0 = make_initial_data(cfg);
  const UniquenessConfig& uc = cfg.uniqueness;
  UniquenessReport rep;
  rep.sobolev = uc.sobolev;
  for (int k = 0; k < uc.levels; ++k) {
    const double f = std::ldexp(1.0, -k);
    rep.levels.push_back(compare(u0, cfg, {uc.a.dt * f, uc.a.dealias}, {uc.b.dt * f, uc.b.dealias}, uc.sobolev));
  }
  for (std::size_t k = 0; k + 1 < rep.levels.size(); ++k)
    rep.ratios.push_back(rep.levels[k].max_w / rep.levels[k + 1].max_w);
  // identical schemes: same dt, same mask, same data
  RunConfig same = cfg;
  same.uniqueness.levels = 1;
  const double rdt = uc.record_dt;
  const TrajectoryRecord a = run_scheme(u0, same, uc.a, rdt), b = run_scheme(u0, same, uc.a, rdt);
  for (std::size_t k = 0; k < a.fields.size(); ++k)
    rep.identical_max_w = std::max(rep.identical_max_w, max_abs(a.fields[k] - b.fields[k]));
  return rep;
}

}  // namespace kp5::lab
