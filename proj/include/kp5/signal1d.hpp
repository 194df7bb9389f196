#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace kp5 {

using cplx = std::complex<double>;

/// Periodic signal on [0, L) with n = 2^k samples. Values are complex so that
/// bilinear operators with general symbols can return their exact output.
struct Signal1D {
  double L;
  std::vector<cplx> samples;

  Signal1D(double L, std::vector<cplx> samples);
  static Signal1D from_real(double L, const std::vector<double>& v);
  static Signal1D from_function(double L, int n, const std::function<double(double)>& f);

  int n() const { return static_cast<int>(samples.size()); }
  double dx() const { return L / n(); }
  double x(int i) const { return i * dx(); }
  int k(int i) const { return i < n() / 2 ? i : i - n(); }
  double xi(int i) const;
};

/// Fourier-series coefficients c_k = (1/n) sum_j u_j e^{-i xi_k x_j}, FFT order.
std::vector<cplx> series_coefficients(const Signal1D& u);
Signal1D from_series(double L, const std::vector<cplx>& c);

/// Multiply the spectrum by m(xi).
Signal1D apply_multiplier_1d(const Signal1D& u, const std::function<cplx(double)>& m);

Signal1D operator+(const Signal1D& a, const Signal1D& b);
Signal1D operator-(const Signal1D& a, const Signal1D& b);
Signal1D operator*(cplx s, const Signal1D& a);
/// Pointwise product.
Signal1D pointwise(const Signal1D& a, const Signal1D& b);

double l2_norm(const Signal1D& u);
double sup_norm(const Signal1D& u);
/// Largest |imag| relative to the sup norm.
double imag_defect(const Signal1D& u);
/// Largest |k| with |c_k| above rel_floor * max |c|.
int spectral_extent(const Signal1D& u, double rel_floor = 1e-13);

Signal1D project_shell_1d(const Signal1D& u, double N);
Signal1D project_tilde_1d(const Signal1D& u, double N);
Signal1D deriv_1d(const Signal1D& u);

/// Real random signal with Gaussian spectrum on 0 < |xi| <= band (plus optional
/// lower cutoff), scaled to unit sup norm.
Signal1D random_signal(double L, int n, double band_lo, double band_hi, std::uint64_t seed);

}  // namespace kp5
