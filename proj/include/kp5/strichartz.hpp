#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kp5/dispersion.hpp"

namespace kp5 {

enum class ProbeMode { homogeneous, retarded };
std::string to_string(ProbeMode m);

/// Probe box and data, stated for the unit shell N = 1. Shell N uses the
/// dilated box (Lx / N, Ly / N^3) with the same sample counts, so the probe
/// for N is the N = 1 probe seen through u -> N^4 u(N^5 t, N x, N^3 y) and
/// its horizon T corresponds to N^5 T in unit time.
struct ProbeGeometry {
  double Lx = 1400.0;
  double Ly = 40.0;
  int nx = 4096;  // |u|^4 stays alias-free
  int ny = 64;
  double packet_x = 200.0;  // packet centre; it drifts towards +x
  double packet_width_x = 8.0;
  double packet_width_y = 3.0;
  double mu_band = 1.0;
  double forcing_duration = 0.02;  // retarded mode, unit time
  double boundary_layer = 0.05;    // watched fraction of each side
  double boundary_tol = 1e-6;      // of the total L2 mass
};

/// Unit-time horizon past which the (4,4) ratio has saturated for the default geometry.
inline constexpr double kSaturatedHorizon = 1.0;

struct StrichartzReport {
  double N = 0.0;
  AdmissiblePair pair{Exponent(4), Exponent(4)};
  ProbeMode mode = ProbeMode::homogeneous;
  double T = 0.0;
  int sample_count = 0;
  std::vector<double> ratios;
  double max_ratio = 0.0;
  double median_ratio = 0.0;
  double boundary_mass = 0.0;  // worst outer-layer mass fraction over the run
};

/// int_0^{min(tau, sf)} e^{i s w} sin^2(pi s / sf) ds in closed form: the
/// retarded probe's per-mode Duhamel weight.
cplx pulse_weight(double w, double tau, double sf);

/// Homogeneous: ||U(t) phi||_{L^q_T L^r} / (N^{beta(q,r)} ||phi||_2) for random
/// P_N-localised wave packets phi. Retarded ((q, r) doubles as (q~, r~)):
/// ||int_0^t U(t-s) f(s) ds||_{L^q_T L^r} / (N^{2 beta} ||f||_{L^{q'}_T L^{r'}})
/// with f(s) = b(s) psi, b a sin^2 pulse.
/// ProbeInvalidError when the packet reaches the boundary layer.
StrichartzReport strichartz_probe(double N, const AdmissiblePair& pair, double T, int samples, ProbeMode mode,
                                  std::uint64_t seed, DispersionSign delta = DispersionSign::kp2(),
                                  const ProbeGeometry& geometry = {});

}  // namespace kp5
