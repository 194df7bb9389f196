#include "kp5/dilation.hpp"

#include <cmath>

#include "kp5/errors.hpp"

namespace kp5 {
namespace {

void require_dyadic_ratio(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ParameterError("dilation factor must be positive");
  int e = 0;
  const double m = std::frexp(lambda, &e);
  if (m != 0.5) throw ParameterError("dilation factor must be a power of two");
}

}  // namespace

Field2D dilate(const Field2D& u, double lambda) {
  require_dyadic_ratio(lambda);
  const Grid2D& g = u.grid();
  const Grid2D h(g.Lx() / lambda, g.Ly() / (lambda * lambda * lambda), g.nx(), g.ny());
  const double amp = lambda * lambda * lambda * lambda;
  std::vector<double> s(u.samples().begin(), u.samples().end());
  for (auto& v : s) v *= amp;
  return Field2D(h, std::move(s), u.zero_x_mean());
}

ModelParams dilate_params(const ModelParams& p, double lambda) {
  require_dyadic_ratio(lambda);
  const double l5 = std::pow(lambda, 5);
  ModelParams q = p;
  q.dt = p.dt / l5;
  q.T = p.T / l5;
  return q;
}

CommutationReport dilation_flow_commutation(const Field2D& u0, double lambda, const ModelParams& params) {
  const TrajectoryRecord a = evolve(u0, params);
  const TrajectoryRecord b = evolve(dilate(u0, lambda), dilate_params(params, lambda));
  CommutationReport r{lambda, 0.0};
  if (a.fields.size() != b.fields.size()) throw NumericalError("dilated run recorded a different number of frames");
  for (std::size_t k = 0; k < a.fields.size(); ++k) {
    const Field2D da = dilate(a.fields[k], lambda);
    const double ref = l2_norm(da);
    const double diff = l2_norm(da - b.fields[k]);
    r.discrepancy = std::max(r.discrepancy, ref > 0.0 ? diff / ref : diff);
  }
  return r;
}

}  // namespace kp5
