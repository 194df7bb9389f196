#pragma once

#include <cstddef>
#include <vector>

#include "kp5/dispersion.hpp"
#include "kp5/field.hpp"

namespace kp5 {

/// u_t + d_x^5 u + d_x(u^2) + delta d_x^{-1} d_y^2 u = 0 on the periodic box.
struct ModelParams {
  DispersionSign delta = DispersionSign::kp2();
  double dt = 1e-3;
  double T = 1.0;
  double dealias = 2.0 / 3.0;
  double c3 = 1.0 / 3.0;  // cubic energy coefficient, fitted at bring-up
  int record_stride = 1;
  bool nonlinear = true;  // false: linear flow only (test hook)

  /// ConfigError on dt <= 0, T < dt, dealias outside (0, 2/3], stride < 1.
  void validate() const;
  long steps() const;
};

struct StepDiagnostics {
  double t;
  double mass;
  double energy;
  double max_amplitude;
};

struct TrajectoryRecord {
  ModelParams params;
  std::vector<double> times;
  std::vector<Field2D> fields;
  std::vector<StepDiagnostics> diagnostics;  // every step, including t = 0

  const Grid2D& grid() const { return fields.front().grid(); }
  double record_dt() const { return params.dt * params.record_stride; }
  /// Index of the record time equal to t (ContractError when off the mesh).
  std::size_t index_of(double t) const;
};

/// 0/1 rectangular mask keeping |kx| <= floor(f nx / 2), |ky| <= floor(f ny / 2).
std::vector<double> dealias_mask(const Grid2D& grid, double fraction);

/// Spectrum of -d_x P(u^2), P the dealiasing mask. Unitary normalisation.
Spectrum2D nonlinear_spectrum(const Field2D& u, double dealias = 2.0 / 3.0);
/// P(u^2): the solver's quadratic flux.
Field2D dealiased_square(const Field2D& u, double dealias = 2.0 / 3.0);

/// -d_x^5 u - d_x(u^2) - delta d_x^{-1} d_y^2 u with the 2/3 rule on u^2.
/// BlowUpError when u or the result is not finite.
Field2D rhs_nonlinear(const Field2D& u, DispersionSign delta, double dealias = 2.0 / 3.0);

/// Integrating-factor RK4 in the interaction picture. With the nonlinearity on,
/// u0 is first projected onto the dealiasing mask.
TrajectoryRecord evolve(const Field2D& u0, const ModelParams& params);

/// Empirical largest stable dt for data of the given sup amplitude; see README.
double stability_limit(const Grid2D& grid, double max_amplitude, double dealias = 2.0 / 3.0);

}  // namespace kp5
