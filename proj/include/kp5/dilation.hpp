#pragma once

#include "kp5/evolution.hpp"

namespace kp5 {

/// u_lambda(x, y) = lambda^4 u(lambda x, lambda^3 y) on the box (Lx/lambda, Ly/lambda^3).
/// lambda must be an integer power of two (ParameterError otherwise), which
/// makes the map exact: samples are scaled by lambda^4 and nothing is resampled.
Field2D dilate(const Field2D& u, double lambda);

/// Time rescaling that goes with dilate: dt and T divide by lambda^5.
ModelParams dilate_params(const ModelParams& p, double lambda);

struct CommutationReport {
  double lambda = 1;
  double discrepancy = 0;  // max over record of relative L2 difference
};

/// evolve(dilate(u0)) against dilate(evolve(u0)) at every record time.
CommutationReport dilation_flow_commutation(const Field2D& u0, double lambda, const ModelParams& params);

}  // namespace kp5
