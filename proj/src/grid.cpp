#include "kp5/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "kp5/errors.hpp"

namespace kp5 {

bool is_power_of_two(long n) { return n > 0 && (n & (n - 1)) == 0; }

Grid2D::Grid2D(double Lx, double Ly, int nx, int ny) : Lx_(Lx), Ly_(Ly), nx_(nx), ny_(ny) {
  if (!(Lx > 0.0) || !(Ly > 0.0) || !std::isfinite(Lx) || !std::isfinite(Ly)) {
    std::ostringstream msg;
    msg << "grid periods must be positive and finite, got Lx=" << Lx << " Ly=" << Ly;
    throw ConfigError(msg.str());
  }
  if (!is_power_of_two(nx) || !is_power_of_two(ny) || nx < 8 || ny < 8) {
    std::ostringstream msg;
    msg << "grid sizes must be powers of two >= 8, got nx=" << nx << " ny=" << ny;
    throw ConfigError(msg.str());
  }
}

Grid2D build_grid(double Lx, double Ly, int nx, int ny) { return Grid2D(Lx, Ly, nx, ny); }

double Grid2D::dxi() const { return 2.0 * std::numbers::pi / Lx_; }
double Grid2D::dmu() const { return 2.0 * std::numbers::pi / Ly_; }
double Grid2D::xi(int i) const { return 2.0 * std::numbers::pi * kx(i) / Lx_; }
double Grid2D::mu(int j) const { return 2.0 * std::numbers::pi * ky(j) / Ly_; }

double Grid2D::dealias_radius(double fraction) const {
  return std::floor(fraction * nx_ / 2.0) * dxi();
}

bool Grid2D::operator==(const Grid2D& other) const {
  return Lx_ == other.Lx_ && Ly_ == other.Ly_ && nx_ == other.nx_ && ny_ == other.ny_;
}

}  // namespace kp5
