#include "kp5/strichartz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "kp5/errors.hpp"
#include "kp5/parallel.hpp"
#include "kp5/random_fields.hpp"
#include "kp5/shells.hpp"

namespace kp5 {
namespace {

constexpr double pi = std::numbers::pi;

// unit-time mesh: uniform 0.002 up to 0.05, then geometric 1.05 up to S
std::vector<double> unit_mesh(double S) {
  std::vector<double> m;
  for (double s = 0.0; s < std::min(S, 0.05) - 1e-12; s += 0.002) m.push_back(s);
  double s = std::max(m.back(), 0.05);
  if (s < S) m.push_back(s);
  while (s * 1.05 < S) m.push_back(s *= 1.05);
  m.push_back(S);
  return m;
}

// int f dt over a non-uniform mesh: Simpson on pairs, trapezoid on a leftover step
double integrate(const std::vector<double>& t, const std::vector<double>& f) {
  double acc = 0.0;
  std::size_t k = 0;
  for (; k + 2 < t.size(); k += 2) {
    const double h0 = t[k + 1] - t[k], h1 = t[k + 2] - t[k + 1];
    acc += (h0 + h1) / 6.0 *
           ((2.0 - h1 / h0) * f[k] + (h0 + h1) * (h0 + h1) / (h0 * h1) * f[k + 1] + (2.0 - h0 / h1) * f[k + 2]);
  }
  if (k + 1 < t.size()) acc += 0.5 * (t[k + 1] - t[k]) * (f[k] + f[k + 1]);
  return acc;
}

// ||.||_{L^q} in time of a sampled norm series
double time_norm(const std::vector<double>& t, const std::vector<double>& v, const Exponent& q) {
  if (q.is_infinite()) return *std::max_element(v.begin(), v.end());
  const double qq = q.value();
  std::vector<double> p(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) p[k] = std::pow(v[k], qq);
  return std::pow(integrate(t, p), 1.0 / qq);
}

double space_norm(const Field2D& u, const Exponent& r) {
  return r.is_infinite() ? max_abs(u) : lp_norm(u, r.value());
}

double boundary_fraction(const Field2D& u, double layer) {
  const Grid2D& g = u.grid();
  const int bx = std::max(1, static_cast<int>(layer * g.nx())), by = std::max(1, static_cast<int>(layer * g.ny()));
  double edge = 0.0, total = 0.0;
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) {
      const double v = u(i, j) * u(i, j);
      total += v;
      if (i < bx || i >= g.nx() - bx || j < by || j >= g.ny() - by) edge += v;
    }
  return total > 0.0 ? edge / total : 0.0;
}

// random wave packet, exactly P_N-localised
Field2D packet(const Grid2D& g, double N, const ProbeGeometry& geo, std::uint64_t seed) {
  const double N3 = N * N * N;
  const Field2D noise = gaussian_random_field(g, seed, 1.0, Band{2.0 * shell::kSupport * N, geo.mu_band * N3});
  const double x0 = geo.packet_x / N, wx = geo.packet_width_x / N;
  const double y0 = 0.5 * g.Ly(), wy = geo.packet_width_y / N3;
  std::vector<double> s(g.size());
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) {
      const double ax = (g.x(i) - x0) / wx, ay = (g.y(j) - y0) / wy;
      s[g.index(i, j)] = noise(i, j) * std::exp(-ax * ax - ay * ay);
    }
  return apply_multiplier(
      Field2D(g, std::move(s)), [&](int i, int) { return cplx(shell::phi_N(g.xi(i), N)); }, true);
}

// int_0^tau e^{i a s} ds, stable at a = 0
cplx phase_integral(double a, double tau) {
  const double h = 0.5 * a * tau;
  const double sinc = std::abs(h) < 1e-8 ? 1.0 - h * h / 6.0 : std::sin(h) / h;
  return tau * sinc * std::polar(1.0, h);
}

}  // namespace

cplx pulse_weight(double w, double tau, double sf) {
  // sin^2(pi s / sf) = (1 - cos(2 pi s / sf)) / 2
  const double nu = 2.0 * pi / sf;
  tau = std::min(tau, sf);
  return 0.5 * phase_integral(w, tau) - 0.25 * (phase_integral(w + nu, tau) + phase_integral(w - nu, tau));
}

std::string to_string(ProbeMode m) { return m == ProbeMode::homogeneous ? "homogeneous" : "retarded"; }

StrichartzReport strichartz_probe(double N, const AdmissiblePair& pair, double T, int samples, ProbeMode mode,
                                  std::uint64_t seed, DispersionSign delta, const ProbeGeometry& geo) {
  if (!is_dyadic(N)) throw ParameterError("strichartz_probe: N must be dyadic");
  if (!(T > 0.0) || samples < 1) throw ConfigError("strichartz_probe: need T > 0 and samples >= 1");
  if (!is_admissible(pair.q, pair.r)) throw DomainError("strichartz_probe: pair not admissible");

  const double N5 = std::pow(N, 5);
  const Grid2D g(geo.Lx / N, geo.Ly / (N * N * N), geo.nx, geo.ny);
  std::vector<double> mesh = unit_mesh(T * N5);
  for (double& t : mesh) t /= N5;
  const double beta = pair.beta().value();
  const double sf = geo.forcing_duration / N5;
  if (mode == ProbeMode::retarded && sf > T) throw ConfigError("strichartz_probe: forcing pulse longer than T");

  StrichartzReport rep;
  rep.N = N;
  rep.pair = pair;
  rep.mode = mode;
  rep.T = T;
  rep.sample_count = samples;
  rep.ratios.assign(samples, 0.0);
  std::vector<double> edge(samples, 0.0);

  parallel_chunks(samples, [&](std::size_t k) {
    const std::uint64_t tag = derive_seed(seed, {static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(mode), k});
    const Field2D psi = packet(g, N, geo, tag);
    const Spectrum2D s0 = to_spectrum(psi);
    std::vector<double> w(g.size());
    for (int i = 0; i < g.nx(); ++i)
      for (int j = 0; j < g.ny(); ++j) w[g.index(i, j)] = lattice_omega(g, i, j, delta);

    std::vector<double> norms(mesh.size());
    double worst = 0.0;
    for (std::size_t m = 0; m < mesh.size(); ++m) {
      const double t = mesh[m];
      Spectrum2D st = s0;
      for (std::size_t p = 0; p < st.coeffs.size(); ++p) {
        if (mode == ProbeMode::homogeneous) {
          st.coeffs[p] *= std::polar(1.0, -t * w[p]);
        } else {
          // int_0^t U(t - s) b(s) ds, mode by mode
          st.coeffs[p] *= std::polar(1.0, -t * w[p]) * pulse_weight(w[p], t, sf);
        }
      }
      const Field2D u = to_field(st, true);
      norms[m] = space_norm(u, pair.r);
      worst = std::max(worst, boundary_fraction(u, geo.boundary_layer));
    }
    const double lhs = time_norm(mesh, norms, pair.q);
    double rhs;
    if (mode == ProbeMode::homogeneous) {
      rhs = std::pow(N, beta) * l2_norm(psi);
    } else {
      // ||b||_{L^{q'}} ||psi||_{L^{r'}}
      const Exponent qc = pair.q.conjugate(), rc = pair.r.conjugate();
      double bn;
      if (qc.is_infinite()) {
        bn = 1.0;
      } else {
        std::vector<double> ts(401), bs(401);
        for (int i = 0; i <= 400; ++i) {
          ts[i] = sf * i / 400.0;
          bs[i] = std::pow(std::sin(pi * i / 400.0), 2.0 * qc.value());
        }
        bn = std::pow(integrate(ts, bs), 1.0 / qc.value());
      }
      rhs = std::pow(N, 2.0 * beta) * bn * space_norm(psi, rc);
    }
    rep.ratios[k] = lhs / rhs;
    edge[k] = std::max(worst, boundary_fraction(psi, geo.boundary_layer));
  });

  rep.boundary_mass = *std::max_element(edge.begin(), edge.end());
  if (rep.boundary_mass > geo.boundary_tol) {
    std::ostringstream os;
    os << "strichartz probe invalid: boundary-layer mass fraction " << rep.boundary_mass << " > " << geo.boundary_tol
       << " (N=" << N << ", T=" << T << ", unit horizon " << T * N5 << "); enlarge the box or shorten T";
    throw ProbeInvalidError(os.str());
  }
  std::vector<double> sorted = rep.ratios;
  std::sort(sorted.begin(), sorted.end());
  rep.max_ratio = sorted.back();
  rep.median_ratio = sorted.size() % 2 ? sorted[sorted.size() / 2]
                                       : 0.5 * (sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2]);
  return rep;
}

}  // namespace kp5
