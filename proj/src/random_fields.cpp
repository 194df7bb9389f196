#include "kp5/random_fields.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "kp5/errors.hpp"

namespace kp5 {

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags) {
  // splitmix64 finaliser folded over the tags
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(base);
  for (auto t : tags) h = mix(h ^ mix(t));
  return h;
}

Field2D gaussian_random_field(const Grid2D& grid, std::uint64_t seed, double amplitude, Band band) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> noise(grid.size());
  for (auto& v : noise) v = normal(rng);
  Field2D white(grid, std::move(noise), false);
  Field2D filtered = apply_multiplier(
      white,
      [&](int i, int j) {
        if (i == 0 || grid.is_x_nyquist(i) || grid.is_y_nyquist(j)) return cplx(0.0, 0.0);
        const bool inside = std::abs(grid.xi(i)) <= band.kx_max && std::abs(grid.mu(j)) <= band.ky_max;
        return cplx(inside ? 1.0 : 0.0, 0.0);
      },
      true);
  const double peak = max_abs(filtered);
  if (peak == 0.0) throw ConfigError("random field band contains no resolvable modes");
  return (amplitude / peak) * filtered;
}

Field2D line_soliton_proxy(const Grid2D& grid, double amplitude, double width, double modulation) {
  const double x0 = grid.Lx() / 2.0;
  return Field2D::from_function(
      grid,
      [&](double x, double y) {
        const double s = 1.0 / std::cosh((x - x0) / width);
        return amplitude * s * s * s * s *
               (1.0 + modulation * std::cos(2.0 * std::numbers::pi * y / grid.Ly()));
      },
      true);
}

Field2D mode_combination(const Grid2D& grid, const std::vector<Mode>& modes) {
  std::vector<double> s(grid.size(), 0.0);
  for (const auto& m : modes) {
    if (m.jx == 0) throw ConfigError("mode combination needs nonzero x-wavenumbers");
    const double kx = 2.0 * std::numbers::pi * m.jx / grid.Lx();
    const double ky = 2.0 * std::numbers::pi * m.jy / grid.Ly();
    for (int i = 0; i < grid.nx(); ++i)
      for (int j = 0; j < grid.ny(); ++j)
        s[grid.index(i, j)] += m.amplitude * std::cos(kx * grid.x(i) + ky * grid.y(j) + m.phase);
  }
  return remove_x_mean(Field2D(grid, std::move(s), false));
}

}  // namespace kp5
