#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "kp5/evolution.hpp"
#include "kp5/signal1d.hpp"

namespace kp5 {

/// Two-frequency symbol a(xi1, xi2) with a declared sup bound.
struct SymbolSpec {
  std::string name;
  std::function<cplx(double, double)> eval;
  double bound = 0.0;  // declared sup |a|; 0 when not declared
  double N = 0.0;
  double N3 = 0.0;

  cplx operator()(double xi1, double xi2) const { return eval(xi1, xi2); }
};

SymbolSpec symbol_one();
/// a(xi1, xi2) = i (xi1 + xi2), i.e. Lambda_a(u, v) = d_x(uv).
SymbolSpec symbol_derivative();
/// N3^{-1} phi_{N3}(xi1) phi~_N(xi2) [phi_N(xi1+xi2)(xi1+xi2) - phi_N(xi2) xi2].
/// ParameterError unless N3 <= N / 8 (both dyadic).
SymbolSpec symbol_a1(double N, double N3);
/// xi1 / N1 phi~_{N1}(xi1).
SymbolSpec symbol_a2(double N1);
/// (xi1 + xi2) / N phi_N(xi1 + xi2).
SymbolSpec symbol_a3(double N);

/// a~(xi1, xi2) = a(-xi1 - xi2, xi1).
SymbolSpec role_switch_tilde(const SymbolSpec& a);
/// a~~(xi1, xi2) = a(xi2, -xi1 - xi2).
SymbolSpec role_switch_double_tilde(const SymbolSpec& a);

/// Largest |a| over lattice pairs xi1, xi2 = k dxi with |k| <= kmax.
double sampled_sup(const SymbolSpec& a, double dxi, int kmax);

/// F[Lambda_a(u, v)](xi) = sum_{xi1 + xi2 = xi} a(xi1, xi2) u^(xi1) v^(xi2), by
/// direct weighted convolution. AliasingError when the output band would wrap.
Signal1D lambda_apply(const SymbolSpec& a, const Signal1D& u, const Signal1D& v);

/// [d_x P_N, P_{N3} g] P~_N h computed with FFT multipliers.
Signal1D commutator_spectral(const Signal1D& g, const Signal1D& h, double N, double N3);
/// i N3 Lambda_{a1}(g, h).
Signal1D commutator_via_symbol(const Signal1D& g, const Signal1D& h, double N, double N3);

struct KernelOracleResult {
  Signal1D value;
  double tail_mass;   // relative mass of Phi_N outside one period
  double schur_row;   // max_x int |K(x, y)| dy
  double schur_col;   // max_y int |K(x, y)| dx
};

/// Phi_N(x) = F^{-1}[i xi phi(xi / N)](x) on the real line, by adaptive quadrature.
double phi_kernel(double x, double N);

/// Relative L1 mass of Phi_N outside [-X, X].
double kernel_tail_mass(double N, double X);

/// comm(x) = int (G(y) - G(x)) Phi_N(x - y) H(y) dy with the periodised
/// real-line kernel. OracleInvalidError when tail_mass > tail_tol.
KernelOracleResult commutator_kernel_oracle(const Signal1D& g, const Signal1D& h, double N, double N3,
                                            double tail_tol = 1e-8);

struct AcceptabilityReport {
  std::string symbol;
  int samples = 0;
  double max_ratio = 0.0;
  double normalisation = 1.0;  // the ratio is divided by this (N / N3 for a~1)
  std::uint64_t seed = 0;
};

/// max ||Lambda_a(u, v)||_2 / (||u||_inf ||v||_2) / normalisation over random
/// band-limited pairs on the given lattice.
AcceptabilityReport acceptability_probe(const SymbolSpec& a, int samples, std::uint64_t seed, double L, int n,
                                        double band, double normalisation = 1.0);

struct CommutatorConstantReport {
  int samples = 0;
  double max_ratio = 0.0;  // N3^{-1} ||comm||_2 / (||g||_inf ||h||_2)
};
CommutatorConstantReport commutator_constant(double N, double N3, int samples, std::uint64_t seed, double L,
                                             int n);

/// Gamma_a(u1, u2, u3) = int u1 Lambda_a(u2(., y, t), u3(., y, t))(x) dt dx dy,
/// trapezoid in t and lattice sums in x, y. ContractError on mesh mismatch.
/// Complex in general (odd real symbols such as a1 give imaginary values).
cplx gamma_a(const SymbolSpec& a, const TrajectoryRecord& u1, const TrajectoryRecord& u2,
               const TrajectoryRecord& u3);

}  // namespace kp5
