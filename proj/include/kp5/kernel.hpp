#pragma once

#include <vector>

#include "kp5/dispersion.hpp"

namespace kp5 {

/// Dispersive kernel of U(t) P_N:
///   G(x, y, t) = int int e^{i(x xi + y mu)} e^{it(xi^5 + delta mu^2 / xi)} phi_N(xi) dxi dmu.
/// The time sign is the defining one (e^{+itw}); |G| does not depend on it.
///
/// The mu integral is a Fresnel integral, which leaves
///   G = sqrt(pi/t) int |xi|^{1/2} e^{i sgn(delta xi) pi/4} e^{i(x_e xi + t xi^5)} phi_N dxi,
///   x_e = x - delta y^2 / (4t).
/// The xi < 0 half is the conjugate of the xi > 0 half, so G is real, and after
/// xi = N eta it depends on (t, N) only through X = x_e N and T = t N^5.
cplx kernel_G(double x, double y, double t, double N, DispersionSign delta);

/// Same integral by direct 2D trapezoid sums with a Gaussian damping
/// exp(-c |t/xi| mu^2), extrapolated to c = 0. Independent of the Fresnel step;
/// cost grows like t N^5, so only coarse cases are practical.
cplx kernel_G_direct(double x, double y, double t, double N, DispersionSign delta);

/// Triangle-inequality ceiling sqrt(pi/t) int |xi|^{1/2} phi_N(xi) dxi >= |G|.
double kernel_G_ceiling(double t, double N);

struct KernelSupSample {
  double N = 0.0;
  double t = 0.0;
  double sup_abs_G = 0.0;
  double x = 0.0;  // where the sup was sampled (y = 0)
  double c1_ratio = 0.0;  // sup|G| / (t^{-1/2} N^{3/2})
  double c2_ratio = 0.0;  // sup|G| / (t^{-1} N^{-1})
  /// sup|G| / (t^{-(1/2+theta)} N^{3/2-5 theta})
  double ratio(double theta) const;
};

/// Sampled sup over (x, y) of |G|: stationary-point scan of x_e plus local refinement.
KernelSupSample kernel_sup(double t, double N, DispersionSign delta);

struct KernelDecayReport {
  std::vector<KernelSupSample> rows;
  /// max / min of the ratio across rows.
  double spread(double theta) const;
};

KernelDecayReport kernel_decay_sweep(const std::vector<double>& ts, const std::vector<double>& Ns,
                                     DispersionSign delta);

}  // namespace kp5
