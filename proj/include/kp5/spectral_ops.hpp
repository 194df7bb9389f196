#pragma once

#include "kp5/field.hpp"

namespace kp5 {

/// Japanese bracket <x> = (1 + x^2)^{1/2}.
double bracket(double x);

/// Anisotropic Sobolev norm with weight <xi>^s1 <mu>^s2.
double sobolev_norm(const Field2D& u, double s1, double s2);
/// Littlewood-Paley form (sum_N <N>^{2s} ||P_N u||^2)^{1/2} over the grid's band.
double dyadic_sobolev_norm(const Field2D& u, double s);

/// J_x^theta, multiplier <xi>^theta.
Field2D frac_deriv_x(const Field2D& u, double theta);
/// D_x^gamma, multiplier |xi|^gamma with the xi = 0 line sent to zero.
/// Negative gamma requires a zero-x-mean field (ConstraintError otherwise).
Field2D homogeneous_deriv_x(const Field2D& u, double gamma);

/// Spectral d/dx. The x-Nyquist line is dropped so the output stays real.
Field2D deriv_x(const Field2D& u, int order = 1);
Field2D deriv_y(const Field2D& u, int order = 1);
/// d/dx^{-1}: divide by i xi off the xi = 0 line. Requires zero x-mean.
Field2D x_antiderivative(const Field2D& u);

}  // namespace kp5
