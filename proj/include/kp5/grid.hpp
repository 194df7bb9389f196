#pragma once

#include <cstddef>
#include <vector>

namespace kp5 {

/// Periodic box [0,Lx) x [0,Ly) sampled on nx x ny points.
///
/// Storage is row-major with x as the slow index: sample (i, j) lives at
/// i * ny + j. Spectral index i in [0, nx) maps to the signed wavenumber
/// j in [-nx/2, nx/2) in FFT order, giving xi = 2 pi j / Lx.
class Grid2D {
 public:
  Grid2D(double Lx, double Ly, int nx, int ny);

  double Lx() const { return Lx_; }
  double Ly() const { return Ly_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * ny_ + j; }

  double dx() const { return Lx_ / nx_; }
  double dy() const { return Ly_ / ny_; }
  double cell_area() const { return dx() * dy(); }
  double x(int i) const { return i * dx(); }
  double y(int j) const { return j * dy(); }

  /// Signed wavenumber for FFT-ordered index.
  int kx(int i) const { return i < nx_ / 2 ? i : i - nx_; }
  int ky(int j) const { return j < ny_ / 2 ? j : j - ny_; }
  double xi(int i) const;
  double mu(int j) const;
  double dxi() const;
  double dmu() const;

  bool is_x_nyquist(int i) const { return i == nx_ / 2; }
  bool is_y_nyquist(int j) const { return j == ny_ / 2; }

  /// Largest |xi| kept by a dealiasing mask of the given fraction.
  double dealias_radius(double fraction = 2.0 / 3.0) const;

  bool operator==(const Grid2D& other) const;
  bool operator!=(const Grid2D& other) const { return !(*this == other); }

 private:
  double Lx_;
  double Ly_;
  int nx_;
  int ny_;
};

Grid2D build_grid(double Lx, double Ly, int nx, int ny);

bool is_power_of_two(long n);

}  // namespace kp5
