#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "kp5/grid.hpp"

namespace kp5 {

using cplx = std::complex<double>;

/// Real scalar field sampled on a Grid2D.
///
/// When zero_x_mean is set every y-column sums to zero over x, which is the
/// same as a vanishing xi = 0 spectral line. The constructor verifies this
/// to relative 1e-12 of the field's norm.
class Field2D {
 public:
  Field2D(Grid2D grid, std::vector<double> samples, bool zero_x_mean = false);

  static Field2D zeros(const Grid2D& grid, bool zero_x_mean = true);
  static Field2D from_function(const Grid2D& grid, const std::function<double(double, double)>& f,
                               bool zero_x_mean = false);

  const Grid2D& grid() const { return grid_; }
  std::span<const double> samples() const { return samples_; }
  bool zero_x_mean() const { return zero_x_mean_; }
  double operator()(int i, int j) const { return samples_[grid_.index(i, j)]; }

  Field2D with_samples(std::vector<double> samples) const;

  Field2D& operator+=(const Field2D& other);
  Field2D& operator-=(const Field2D& other);
  Field2D& operator*=(double s);

 private:
  Grid2D grid_;
  std::vector<double> samples_;
  bool zero_x_mean_;
};

Field2D operator+(Field2D a, const Field2D& b);
Field2D operator-(Field2D a, const Field2D& b);
Field2D operator*(double s, Field2D a);

/// Subtract every y-column's x-average; the result carries the zero_x_mean flag.
Field2D remove_x_mean(const Field2D& u);

/// Fourier coefficients with unitary normalisation, FFT-ordered like Grid2D.
struct Spectrum2D {
  Grid2D grid;
  std::vector<cplx> coeffs;

  cplx& at(int i, int j) { return coeffs[grid.index(i, j)]; }
  cplx at(int i, int j) const { return coeffs[grid.index(i, j)]; }
};

Spectrum2D to_spectrum(const Field2D& u);
/// Real part of the inverse transform. With zero_x_mean the xi = 0 line must
/// already vanish (ConstraintError otherwise) and the result is flagged.
Field2D to_field(const Spectrum2D& s, bool zero_x_mean = false);

/// Multiply the spectrum of u by m(i, j) and transform back.
Field2D apply_multiplier(const Field2D& u, const std::function<cplx(int, int)>& m,
                         bool zero_x_mean);

double l2_norm(const Field2D& u);
double l2_norm(const Spectrum2D& s);
double inner(const Field2D& u, const Field2D& v);
double lp_norm(const Field2D& u, double p);
double max_abs(const Field2D& u);
double integral(const Field2D& u);
/// Root-mean-square of the xi = 0 spectral line relative to the field norm.
double x_mean_defect(const Field2D& u);

}  // namespace kp5
