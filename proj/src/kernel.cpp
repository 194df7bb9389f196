#include "kp5/kernel.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "kp5/errors.hpp"
#include "kp5/fft.hpp"
#include "kp5/parallel.hpp"
#include "kp5/shells.hpp"

namespace kp5 {
namespace {

constexpr double pi = std::numbers::pi;
constexpr double kLo = shell::kPlateau;       // supp phi = (5/4, 16/5)
constexpr double kHi = 2.0 * shell::kSupport;
// phase allowed per Gauss-Kronrod piece
constexpr double kPiecePhase = 8.0;
// full-support quadrature up to this much total phase; beyond it, a window
// of kWindow / sqrt(h'') around the stationary point with a smooth taper
constexpr double kDirectPhase = 2.0e3;
constexpr double kWindow = 25.0;
// below this T the sup search adds a dense FFT scan in X
constexpr double kScanT = 200.0;

double amplitude(double eta) { return std::sqrt(eta) * shell::phi(eta); }

double quartic_sum(double e, double u) {
  return e * e * e * e + e * e * e * u + e * e * u * u + e * u * u * u + u * u * u * u;
}

struct Phase {
  double X, T;
  double h(double e) const { return X * e + T * std::pow(e, 5); }
  // h(e) - h(u) without cancellation
  double diff(double e, double u) const {
    return (e - u) * (X + T * quartic_sum(e, u));
  }
  double dh(double e) const { return X + 5.0 * T * std::pow(e, 4); }
  double d2h(double e) const { return 20.0 * T * e * e * e; }
};

// e^{-i h(ref)} int_a^b f(eta) e^{i h(eta)} on pieces of bounded phase; err is
// the worst per-piece GK estimate.
template <class F>
cplx oscillatory(const F& f, const Phase& ph, double ref, double a, double b, double& err, double& where) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  cplx acc = 0.0;
  // C-infinity joins of phi
  std::vector<double> cuts = {a, b};
  for (double c : {shell::kSupport, 2.0 * shell::kPlateau})
    if (c > a && c < b) cuts.push_back(c);
  std::sort(cuts.begin(), cuts.end());
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    double u = cuts[p];
    const double end = cuts[p + 1];
    while (u < end) {
      // |h'| is unimodal, so its max on a piece sits at an end
      double w = std::min(0.02, end - u);
      while (w > 1e-14 && std::max(std::abs(ph.dh(u)), std::abs(ph.dh(u + w))) * w > kPiecePhase) w *= 0.5;
      const double v = std::min(end, u + w);
      // on s in [-1, 1] with e = u + (s+1) w/2: keeps e - u exact, and boost
      // does not rescale its non-adaptive error estimate on [u, v]
      const double half = 0.5 * (v - u);
      const auto local = [&](double s) {
        const double d = (s + 1.0) * half;
        return d * (ph.X + ph.T * quartic_sum(u + d, u));
      };
      double e = 0;
      const cplx piece =
          GK::integrate([&](double s) { return f(u + (s + 1.0) * half) * std::polar(1.0, local(s)); }, -1.0, 1.0, 0, 0, &e);
      acc += half * piece * std::polar(1.0, ph.diff(u, ref));
      if (half * e > err) err = half * e, where = u;
      u = v;
    }
  }
  return acc;
}

// K(X, T) = int eta^{1/2} phi(eta) e^{i(X eta + T eta^5)} d eta
cplx K_integral(double X, double T) {
  const Phase ph{X, T};
  const double total = std::abs(X) * (kHi - kLo) + T * (std::pow(kHi, 5) - std::pow(kLo, 5));
  double err = 0.0, where = 0.0;
  cplx value;
  if (total <= kDirectPhase) {
    value = oscillatory(amplitude, ph, kLo, kLo, kHi, err, where) * std::polar(1.0, ph.h(kLo));
  } else {
    // stationary point, or the support end nearest to one
    const double ec = X < 0 ? std::clamp(std::pow(-X / (5.0 * T), 0.25), kLo, kHi) : kLo;
    const double W = kWindow / std::sqrt(ph.d2h(ec));
    const auto windowed = [&](double e) {
      return amplitude(e) * (1.0 - shell::smooth_step((std::abs(e - ec) - W) / W));
    };
    value = oscillatory(windowed, ph, ec, std::max(kLo, ec - 2 * W), std::min(kHi, ec + 2 * W), err, where) *
            std::polar(1.0, ph.h(ec));
  }
  if (!(err <= 1e-13)) {
    std::ostringstream os;
    os << "kernel quadrature did not converge: X=" << X << " T=" << T << " worst piece estimate " << err << " at eta=" << where;
    throw NumericalError(os.str());
  }
  return value;
}

// G from K: 2 sqrt(pi/t) N^{3/2} Re(e^{i s pi/4} K)
double G_from_K(cplx K, double t, double N, int s) {
  return 2.0 * std::sqrt(pi / t) * std::pow(N, 1.5) * std::real(std::polar(1.0, s * pi / 4) * K);
}

void check_args(double t, double N) {
  if (!(t > 0.0)) throw DomainError("kernel_G needs t > 0");
  if (!(N > 0.0)) throw DomainError("kernel_G needs N > 0");
}

}  // namespace

cplx kernel_G(double x, double y, double t, double N, DispersionSign delta) {
  check_args(t, N);
  const int s = delta.value();
  const double xe = x - s * y * y / (4.0 * t);
  return G_from_K(K_integral(xe * N, t * std::pow(N, 5)), t, N, s);
}

cplx kernel_G_direct(double x, double y, double t, double N, DispersionSign delta) {
  check_args(t, N);
  const int s = delta.value();
  // trapezoid in xi: the integrand is flat at the ends of supp phi_N
  const double rate_xi = std::abs(x) + 5.0 * t * std::pow(kHi * N, 4) + y * y / (4.0 * t * kLo * N) + 1.0;
  const int nxi = static_cast<int>(std::ceil((kHi - kLo) * N * rate_xi * 3.0 / pi)) + 16;
  const double hxi = (kHi - kLo) * N / nxi;

  const auto slice = [&](double c) {
    cplx total = 0.0;
    for (int sign : {1, -1}) {
      for (int k = 1; k < nxi; ++k) {
        const double xi = sign * (kLo * N + k * hxi);
        const double a = s * t / xi;  // mu^2 coefficient of the phase
        const double eps = c * std::abs(a);
        // mu-integral: h (1 + 2 sum_k e^{(ia - eps) k^2 h^2} cos(y k h))
        const double mu_max = std::sqrt(45.0 / eps);
        const double rate = std::abs(y) + 2.0 * std::abs(a) * mu_max;
        const int nmu = static_cast<int>(std::ceil(mu_max * rate * 2.0 / pi)) + 8;
        const double h = mu_max / nmu;
        const cplx q(-eps * h * h, a * h * h);
        // e^{q m^2} and cos(y m h) by recurrence, re-seeded every 256 terms
        cplx sum = 0.0;
        for (int m0 = 1; m0 <= nmu; m0 += 256) {
          const double d0 = static_cast<double>(m0);
          cplx e = std::exp(q * (d0 * d0));
          cplx ratio = std::exp(q * (2.0 * d0 + 1.0));
          const cplx step = std::exp(2.0 * q);
          const double c1 = std::cos(y * h);
          double cm = std::cos(y * d0 * h), cprev = std::cos(y * (d0 - 1.0) * h);
          for (int m = m0; m <= std::min(nmu, m0 + 255); ++m) {
            sum += e * cm;
            e *= ratio;
            ratio *= step;
            const double cn = 2.0 * c1 * cm - cprev;
            cprev = cm;
            cm = cn;
          }
        }
        const cplx F = h * (1.0 + 2.0 * sum);
        total += hxi * shell::phi_N(xi, N) * std::polar(1.0, x * xi + t * std::pow(xi, 5)) * F;
      }
    }
    return total;
  };

  // Neville extrapolation to c = 0 from c = c0 / 2^k
  constexpr int levels = 5;
  double c[levels];
  cplx P[levels];
  for (int k = 0; k < levels; ++k) {
    c[k] = 0.1 / std::pow(2.0, k);
    P[k] = slice(c[k]);
  }
  for (int m = 1; m < levels; ++m)
    for (int k = levels - 1; k >= m; --k) P[k] = (c[k - m] * P[k] - c[k] * P[k - 1]) / (c[k - m] - c[k]);
  return P[levels - 1];
}

double kernel_G_ceiling(double t, double N) {
  check_args(t, N);
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  double m = 0.0;
  const double cuts[] = {kLo, shell::kSupport, 2.0 * shell::kPlateau, kHi};
  for (int p = 0; p < 3; ++p) m += GK::integrate(amplitude, cuts[p], cuts[p + 1], 10, 1e-14);
  return std::sqrt(pi / t) * 2.0 * std::pow(N, 1.5) * m;
}

double KernelSupSample::ratio(double theta) const {
  return sup_abs_G * std::pow(t, 0.5 + theta) * std::pow(N, -1.5 + 5.0 * theta);
}

namespace {

// maximise f on [a, b] by golden section; returns (argmax, max)
template <class F>
std::pair<double, double> golden_max(const F& f, double a, double b, int iterations = 40) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < iterations; ++it) {
    if (f1 > f2) {
      b = x2, x2 = x1, f2 = f1, x1 = b - g * (b - a), f1 = f(x1);
    } else {
      a = x1, x1 = x2, f1 = f2, x2 = a + g * (b - a), f2 = f(x2);
    }
  }
  return f1 > f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

}  // namespace

KernelSupSample kernel_sup(double t, double N, DispersionSign delta) {
  check_args(t, N);
  const int s = delta.value();
  const double T = t * std::pow(N, 5);
  const auto absG = [&](double X) { return std::abs(G_from_K(K_integral(X, T), t, N, s)); };
  const auto stationary_X = [&](double eta) { return -5.0 * T * std::pow(eta, 4); };

  // 1. stationary point with the largest envelope |K|: coarse scan, then golden in eta
  constexpr int n_eta = 32;
  std::vector<double> env(n_eta);
  const double d_eta = (kHi - kLo) / n_eta;
  parallel_chunks(n_eta, [&](std::size_t i) { env[i] = std::abs(K_integral(stationary_X(kLo + d_eta * (i + 0.5)), T)); });
  const std::size_t ib = std::max_element(env.begin(), env.end()) - env.begin();
  const double eta_c = kLo + d_eta * (ib + 0.5);
  const double eta_star =
      golden_max([&](double e) { return std::abs(K_integral(stationary_X(e), T)); }, std::max(kLo, eta_c - d_eta),
                 std::min(kHi, eta_c + d_eta))
          .first;

  // 2. the envelope is reached by |Re(e^{i pi/4} K)| once per half period of
  //    the e^{i X eta} rotation: scan one period, then golden
  constexpr int n_rot = 16;
  const double X0 = stationary_X(eta_star), step = 2.0 * pi / (eta_star * n_rot);
  std::vector<double> rot(n_rot);
  parallel_chunks(n_rot, [&](std::size_t r) { rot[r] = absG(X0 + r * step); });
  const std::size_t rb = std::max_element(rot.begin(), rot.end()) - rot.begin();
  auto best = golden_max(absG, X0 + (rb - 1.0) * step, X0 + (rb + 1.0) * step);

  // 3. small T is not in the stationary-phase regime: a dense FFT scan over
  //    every X, by one trapezoid sum in eta (spectrally accurate, the
  //    amplitude is flat at the support ends)
  if (T <= kScanT) {
    const double Xmax = 5.0 * T * std::pow(kHi, 4) + 40.0;
    const double deta = 2.0 * pi / (2.0 * (Xmax + 100.0));
    const int J = static_cast<int>(std::ceil((kHi - kLo) / deta));
    int M = 1;
    while (M < J + 1 || 2.0 * pi / (M * deta) > 0.25) M *= 2;
    std::vector<cplx> f(M, 0.0), F(M);
    for (int j = 0; j <= J; ++j) {
      const double e = kLo + j * deta;
      f[j] = amplitude(e) * std::polar(1.0, T * std::pow(e, 5));
    }
    fft::backward_1d(f, F, M);
    const double dX = 2.0 * pi / (M * deta);
    double Xb = 0.0, vb = -1.0;
    for (int k = -M / 2; k < M / 2; ++k) {
      const double X = k * dX;
      if (X < -Xmax || X > 40.0) continue;
      const cplx K = deta * std::polar(1.0, X * kLo) * F[(k + M) % M];
      const double v = std::abs(G_from_K(K, t, N, s));
      if (v > vb) vb = v, Xb = X;
    }
    const auto scan = golden_max(absG, Xb - dX, Xb + dX);
    if (scan.second > best.second) best = scan;
  }

  KernelSupSample out;
  out.N = N;
  out.t = t;
  out.sup_abs_G = best.second;
  out.x = best.first / N;
  out.c1_ratio = out.ratio(0.0);
  out.c2_ratio = out.ratio(0.5);
  return out;
}

double KernelDecayReport::spread(double theta) const {
  double lo = INFINITY, hi = 0.0;
  for (const auto& r : rows) {
    lo = std::min(lo, r.ratio(theta));
    hi = std::max(hi, r.ratio(theta));
  }
  return hi / lo;
}

KernelDecayReport kernel_decay_sweep(const std::vector<double>& ts, const std::vector<double>& Ns,
                                     DispersionSign delta) {
  KernelDecayReport rep;
  for (double N : Ns)
    for (double t : ts) rep.rows.push_back(kernel_sup(t, N, delta));
  return rep;
}

}  // namespace kp5
