#include "morreykit/functions.hpp"

#include <cmath>

#include "morreykit/errors.hpp"
#include "morreykit/rng.hpp"

namespace morreykit {

GridFunction sample_bump(const Grid& grid, Vec center, double width) {
  if (!(width > 0.0)) throw config_error("bump: width must be positive");
  GridFunction f(grid.cell_count(), 0.0);
  for (int i = 0; i < grid.cell_count(); ++i) {
    const double u = distance(grid.center(i), center, grid.n) / width;
    if (u < 1.0) f[static_cast<std::size_t>(i)] = std::exp(1.0 - 1.0 / (1.0 - u * u));
  }
  return f;
}

GridFunction sample_indicator(const Grid& grid, const Ball& ball) {
  GridFunction f(grid.cell_count(), 0.0);
  for (int c : ball_cells(grid, ball)) f[static_cast<std::size_t>(c)] = 1.0;
  return f;
}

GridFunction sample_bandlimited(const Grid& grid, std::uint64_t seed,
                                std::uint64_t stream, int cutoff) {
  if (cutoff < 1) throw config_error("bandlimited: cutoff must be >= 1");
  SplitRng rng(seed, stream);
  const double L = grid.half_width;
  GridFunction f(grid.cell_count(), 0.0);
  double coef_mass = 0.0;
  std::vector<double> a(static_cast<std::size_t>(cutoff)),
      b(static_cast<std::size_t>(cutoff));
  for (int k = 0; k < cutoff; ++k) {
    a[static_cast<std::size_t>(k)] = rng.next_in(-1.0, 1.0);
    b[static_cast<std::size_t>(k)] = rng.next_in(-1.0, 1.0);
    coef_mass += std::fabs(a[static_cast<std::size_t>(k)]) +
                 std::fabs(b[static_cast<std::size_t>(k)]);
  }
  if (coef_mass == 0.0) coef_mass = 1.0;
  for (int i = 0; i < grid.cell_count(); ++i) {
    const Vec x = grid.center(i);
    double v = 0.0;
    for (int k = 1; k <= cutoff; ++k) {
      const double phase = k * M_PI / L;
      double mode_c = std::cos(phase * x.x);
      double mode_s = std::sin(phase * x.x);
      if (grid.n == 2) {
        mode_c *= std::cos(phase * x.y);
        mode_s *= std::sin(phase * x.y);
      }
      v += a[static_cast<std::size_t>(k - 1)] * mode_c +
           b[static_cast<std::size_t>(k - 1)] * mode_s;
    }
    f[static_cast<std::size_t>(i)] = v / coef_mass;
  }
  return f;
}

GridFunction sample_log_abs(const Grid& grid) {
  GridFunction f(grid.cell_count());
  for (int i = 0; i < grid.cell_count(); ++i)
    f[static_cast<std::size_t>(i)] =
        std::log(distance(grid.center(i), Vec{}, grid.n));
  return f;
}

GridFunction sample_linear(const Grid& grid, double slope) {
  GridFunction f(grid.cell_count());
  for (int i = 0; i < grid.cell_count(); ++i)
    f[static_cast<std::size_t>(i)] = slope * grid.center(i).x;
  return f;
}

std::vector<GridFunction> seeded_test_family(const Grid& grid, std::uint64_t seed,
                                             int count) {
  std::vector<GridFunction> out;
  out.reserve(static_cast<std::size_t>(count));
  const double L = grid.half_width;
  for (int i = 0; i < count; ++i) {
    SplitRng rng(seed, static_cast<std::uint64_t>(i));
    Vec c{rng.next_in(-0.75 * L, 0.75 * L), 0.0};
    if (grid.n == 2) c.y = rng.next_in(-0.75 * L, 0.75 * L);
    const double extent = rng.next_in(4.0 * grid.spacing, 0.5 * L);
    switch (i % 3) {
      case 0:
        out.push_back(sample_bump(grid, c, extent));
        break;
      case 1:
        out.push_back(sample_indicator(grid, Ball{c, extent}));
        break;
      default:
        out.push_back(sample_bandlimited(grid, seed, static_cast<std::uint64_t>(i),
                                         2 + static_cast<int>(rng.next_below(7))));
        break;
    }
  }
  return out;
}

}  // namespace morreykit
