// Bring-up measurements for the evolution defaults (c3 fit, stability,
// reference-run tolerances). Not part of the test suite.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

#include "kp5/dilation.hpp"
#include "kp5/errors.hpp"
#include "kp5/evolution.hpp"
#include "kp5/invariants.hpp"
#include "kp5/random_fields.hpp"
#include "kp5/shells.hpp"

using namespace kp5;

int main(int argc, char** argv) {
  const double L = argc > 1 ? std::atof(argv[1]) * std::numbers::pi : 16 * std::numbers::pi;
  const double amp = argc > 2 ? std::atof(argv[2]) : 0.1;
  const double band = argc > 3 ? std::atof(argv[3]) : 8;
  const double dt = argc > 4 ? std::atof(argv[4]) : 1e-3;
  const Grid2D g(L, L, 128, 128);
  for (int d : {1, -1}) {
    const Field2D u0 = gaussian_random_field(g, 7, amp, Band{band, band});
    ModelParams p;
    p.delta = DispersionSign(d);
    p.dt = dt;
    p.T = 1.0;
    const auto rec = evolve(u0, p);
    std::vector<double> m, e;
    for (const auto& s : rec.diagnostics) {
      m.push_back(s.mass);
      e.push_back(s.energy);
    }
    const double c3 = fit_cubic_coefficient(rec);
    std::printf("delta=%d mass_drift=%.3e energy_drift(c3=1/3)=%.3e fitted_c3=%.10f\n", d, relative_drift(m),
                relative_drift(e), c3);
    const auto parts = energy_parts(u0);
    std::printf("  parts qx=%.4e qy=%.4e cubic=%.4e\n", parts.quadratic_x, parts.quadratic_y, parts.cubic);
    const ShellSystem sh(g);
    for (double N : sh.scales()) {
      const auto r = shell_energy_identity(rec, N);
      double mx = 0; for (const auto& f : rec.fields) mx = std::max(mx, l2_norm(project_shell(f, N)));
      std::printf("  shell N=%g res=%d residual=%.3e mass0=%.3e maxnorm=%.3e flux=%.3e empty=%d\n", N, (int)r.resolvable, r.residual, r.shell_mass0, mx,
                  r.flux_magnitude, r.empty);
    }
    if (std::getenv("NO_DUHAMEL")) continue;
    for (double c : {0.0, 0.5, 0.9}) {
      const auto r = duhamel_residual_window(rec, c, 0.1);
      std::printf("  duhamel c=%g worst t=%g residual=%.3e\n", c, r.t, r.residual);
    }
  }
  return 0;
}
