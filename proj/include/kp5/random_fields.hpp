#pragma once

#include <cstdint>
#include <vector>

#include "kp5/field.hpp"

namespace kp5 {

/// Frequency box |xi| <= kx_max, |mu| <= ky_max in physical units.
struct Band {
  double kx_max;
  double ky_max;
};

/// White noise filtered to the band (xi = 0 line and Nyquist lines removed),
/// scaled so that max |u| equals amplitude. Deterministic in seed.
Field2D gaussian_random_field(const Grid2D& grid, std::uint64_t seed, double amplitude, Band band);

/// Line-soliton proxy A sech^4(k (x - x0)) (1 + m cos(2 pi y / Ly)), projected to zero x-mean.
Field2D line_soliton_proxy(const Grid2D& grid, double amplitude, double width, double modulation);

struct Mode {
  int jx;
  int jy;
  double amplitude;
  double phase;
};
/// Sum of A cos(xi_j x + mu_k y + phase) over the listed lattice modes (jx != 0).
Field2D mode_combination(const Grid2D& grid, const std::vector<Mode>& modes);

/// Derive an independent 64-bit stream seed from a base seed and tags.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags);

}  // namespace kp5
