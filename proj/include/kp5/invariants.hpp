#pragma once

#include <functional>
#include <vector>

#include "kp5/evolution.hpp"

namespace kp5 {

/// M[u] = int u^2.
double mass(const Field2D& u);

/// E[u] = int (1/2) u_xx^2 + (delta/2) |d_x^{-1} d_y u|^2 + c3 u^3.
/// ConstraintError on fields without zero x-mean.
double energy(const Field2D& u, DispersionSign delta, double c3);

struct EnergyParts {
  double quadratic_x;
  double quadratic_y;  // without the delta factor
  double cubic;        // int u^3, without c3
};
EnergyParts energy_parts(const Field2D& u);

struct ShellEnergyReport {
  double N = 0;
  double residual = 0;       // max over record times of the normalised residual
  double worst_time = 0;
  double shell_mass0 = 0;    // (1/2) ||P_N u(0)||^2
  double flux_magnitude = 0; // int_0^T |int d_x(P_N f) P_N u| dt
  bool empty = false;
  bool resolvable = true;    // see shell_time_resolvable
};

/// Largest |w| over the lattice points of shell N kept by the dealiasing mask.
double shell_phase_rate(const Grid2D& grid, double N, DispersionSign delta, double dealias);

/// Phase advance allowed per record interval for a shell to count as resolved
/// in time by the trapezoid rule.
inline constexpr double kResolvablePhaseStep = 0.5;

/// record_dt * shell_phase_rate <= kResolvablePhaseStep.
bool shell_time_resolvable(const TrajectoryRecord& traj, double N);

/// 1/2 ||P_N u(t)||^2 - 1/2 ||P_N u(0)||^2 + int_0^t int d_x(P_N f) P_N u = 0,
/// f the solver's dealiased u^2 (zero for linear-only runs), trapezoid in t, normalised by
/// 1/2 ||P_N u(0)||^2 + int_0^t |int d_x(P_N f) P_N u| ds.
ShellEnergyReport shell_energy_identity(const TrajectoryRecord& traj, double N);
/// A shell whose (1/2)||P_N u||^2 never exceeds this fraction of (1/2)M[u(0)]
/// holds only transform roundoff and is reported empty with residual 0.
inline constexpr double kEmptyShellFraction = 1e-24;

/// The same for several shells in one pass over the record.
std::vector<ShellEnergyReport> shell_energy_identities(const TrajectoryRecord& traj,
                                                       const std::vector<double>& scales);

struct DuhamelReport {
  double c = 0;
  double t = 0;
  double residual = 0;  // ||u(t) - U(t-c)u(c) - int_c^t U(t-s)(-d_x f(s)) ds|| / ||u(t)||
};

/// c and t must lie on the record mesh (ContractError otherwise).
DuhamelReport duhamel_residual(const TrajectoryRecord& traj, double c, double t);
/// Worst residual over record times with |t - c| <= window.
DuhamelReport duhamel_residual_window(const TrajectoryRecord& traj, double c, double window);

/// Spectrum of the nonlinear term (-d_x P f) at record index k.
using DuhamelFlux = std::function<Spectrum2D(std::size_t)>;
/// Window residual of traj.fields against its Duhamel form with the given
/// flux (empty flux: linear flow). Used for the difference/sum equations.
DuhamelReport duhamel_residual_forced(const TrajectoryRecord& traj, const DuhamelFlux& flux, double c,
                                      double window);

/// Fit c3 so that E is most nearly constant along the record (least squares of
/// the drift of Q(t) + c3 C(t)).
double fit_cubic_coefficient(const TrajectoryRecord& traj);

double relative_drift(const std::vector<double>& series);

}  // namespace kp5
