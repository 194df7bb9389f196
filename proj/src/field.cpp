#include "kp5/field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kp5/errors.hpp"
#include "kp5/fft.hpp"

namespace kp5 {
namespace {

constexpr double kMeanTolerance = 1e-12;

void require_same_grid(const Grid2D& a, const Grid2D& b) {
  if (a != b) throw ContractError("fields live on different grids");
}

double sum_squares(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

}  // namespace

double x_mean_defect(const Field2D& u) {
  const Grid2D& g = u.grid();
  std::vector<double> col(g.ny(), 0.0);
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) col[j] += u(i, j);
  const double defect = std::sqrt(sum_squares(col) / g.nx());
  const double norm = std::sqrt(sum_squares(u.samples()));
  return norm > 0.0 ? defect / norm : defect;
}

Field2D::Field2D(Grid2D grid, std::vector<double> samples, bool zero_x_mean)
    : grid_(grid), samples_(std::move(samples)), zero_x_mean_(zero_x_mean) {
  if (samples_.size() != grid_.size()) {
    std::ostringstream msg;
    msg << "field has " << samples_.size() << " samples, grid expects " << grid_.size();
    throw ContractError(msg.str());
  }
  for (double v : samples_)
    if (!std::isfinite(v)) throw ContractError("field contains non-finite samples");
  if (zero_x_mean_) {
    const double defect = x_mean_defect(*this);
    if (defect > kMeanTolerance) {
      std::ostringstream msg;
      msg << "field flagged zero-x-mean has x-mean defect " << defect;
      throw ConstraintError(msg.str());
    }
  }
}

Field2D Field2D::zeros(const Grid2D& grid, bool zero_x_mean) {
  return Field2D(grid, std::vector<double>(grid.size(), 0.0), zero_x_mean);
}

Field2D Field2D::from_function(const Grid2D& grid, const std::function<double(double, double)>& f,
                               bool zero_x_mean) {
  std::vector<double> s(grid.size());
  for (int i = 0; i < grid.nx(); ++i)
    for (int j = 0; j < grid.ny(); ++j) s[grid.index(i, j)] = f(grid.x(i), grid.y(j));
  Field2D raw(grid, std::move(s), false);
  return zero_x_mean ? remove_x_mean(raw) : raw;
}

Field2D Field2D::with_samples(std::vector<double> samples) const {
  return Field2D(grid_, std::move(samples), zero_x_mean_);
}

Field2D& Field2D::operator+=(const Field2D& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t k = 0; k < samples_.size(); ++k) samples_[k] += other.samples_[k];
  zero_x_mean_ = zero_x_mean_ && other.zero_x_mean_;
  return *this;
}

Field2D& Field2D::operator-=(const Field2D& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t k = 0; k < samples_.size(); ++k) samples_[k] -= other.samples_[k];
  zero_x_mean_ = zero_x_mean_ && other.zero_x_mean_;
  return *this;
}

Field2D& Field2D::operator*=(double s) {
  for (double& v : samples_) v *= s;
  return *this;
}

Field2D operator+(Field2D a, const Field2D& b) { return a += b; }
Field2D operator-(Field2D a, const Field2D& b) { return a -= b; }
Field2D operator*(double s, Field2D a) { return a *= s; }

Field2D remove_x_mean(const Field2D& u) {
  const Grid2D& g = u.grid();
  std::vector<double> col(g.ny(), 0.0);
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) col[j] += u(i, j);
  std::vector<double> s(u.samples().begin(), u.samples().end());
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) s[g.index(i, j)] -= col[j] / g.nx();
  return Field2D(g, std::move(s), true);
}

Spectrum2D to_spectrum(const Field2D& u) {
  const Grid2D& g = u.grid();
  std::vector<cplx> in(u.samples().begin(), u.samples().end());
  Spectrum2D out{g, std::vector<cplx>(g.size())};
  fft::forward_2d(in, out.coeffs, g.nx(), g.ny());
  const double scale = 1.0 / std::sqrt(static_cast<double>(g.size()));
  for (auto& c : out.coeffs) c *= scale;
  return out;
}

Field2D to_field(const Spectrum2D& s, bool zero_x_mean) {
  const Grid2D& g = s.grid;
  if (s.coeffs.size() != g.size()) throw ContractError("spectrum size does not match grid");
  if (zero_x_mean) {
    double line = 0.0, total = 0.0;
    for (int j = 0; j < g.ny(); ++j) line += std::norm(s.at(0, j));
    for (const auto& c : s.coeffs) total += std::norm(c);
    if (line > kMeanTolerance * kMeanTolerance * std::max(total, 1e-300))
      throw ConstraintError("spectrum has a non-vanishing xi = 0 line");
  }
  std::vector<cplx> out(g.size());
  fft::backward_2d(s.coeffs, out, g.nx(), g.ny());
  const double scale = 1.0 / std::sqrt(static_cast<double>(g.size()));
  std::vector<double> real(g.size());
  for (std::size_t k = 0; k < real.size(); ++k) real[k] = out[k].real() * scale;
  Field2D u(g, std::move(real), false);
  return zero_x_mean ? remove_x_mean(u) : u;
}

Field2D apply_multiplier(const Field2D& u, const std::function<cplx(int, int)>& m,
                         bool zero_x_mean) {
  Spectrum2D s = to_spectrum(u);
  const Grid2D& g = s.grid;
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) s.at(i, j) *= m(i, j);
  if (zero_x_mean)
    for (int j = 0; j < g.ny(); ++j) s.at(0, j) = 0.0;
  return to_field(s, zero_x_mean);
}

double l2_norm(const Field2D& u) { return std::sqrt(u.grid().cell_area() * sum_squares(u.samples())); }

double l2_norm(const Spectrum2D& s) {
  double acc = 0.0;
  for (const auto& c : s.coeffs) acc += std::norm(c);
  return std::sqrt(s.grid.cell_area() * acc);
}

double inner(const Field2D& u, const Field2D& v) {
  require_same_grid(u.grid(), v.grid());
  double acc = 0.0;
  for (std::size_t k = 0; k < u.samples().size(); ++k) acc += u.samples()[k] * v.samples()[k];
  return acc * u.grid().cell_area();
}

double lp_norm(const Field2D& u, double p) {
  if (std::isinf(p)) return max_abs(u);
  double acc = 0.0;
  for (double v : u.samples()) acc += std::pow(std::abs(v), p);
  return std::pow(acc * u.grid().cell_area(), 1.0 / p);
}

double max_abs(const Field2D& u) {
  double m = 0.0;
  for (double v : u.samples()) m = std::max(m, std::abs(v));
  return m;
}

double integral(const Field2D& u) {
  double acc = 0.0;
  for (double v : u.samples()) acc += v;
  return acc * u.grid().cell_area();
}

}  // namespace kp5
