#include "morreykit/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "morreykit/errors.hpp"

namespace morreykit {

Grid make_grid(int n, double half_width, double spacing) {
  if (n != 1 && n != 2) throw config_error("grid: dimension must be 1 or 2");
  if (!(half_width > 0.0)) throw config_error("grid: half-width must be positive");
  if (!(spacing > 0.0)) throw config_error("grid: spacing must be positive");
  if (spacing > half_width)
    throw config_error("grid: spacing exceeds half-width");
  const double m_real = 2.0 * half_width / spacing;
  const long m = std::lround(m_real);
  if (m < 2 || std::fabs(m_real - static_cast<double>(m)) > 1e-9 * m_real)
    throw config_error("grid: 2L/h is not a positive integer (L=" +
                       std::to_string(half_width) + ", h=" + std::to_string(spacing) + ")");
  if (m % 2 != 0)
    throw config_error("grid: 2L/h must be even so no cell center sits at the origin");
  Grid g;
  g.n = n;
  g.half_width = half_width;
  g.spacing = spacing;
  g.cells_per_axis = static_cast<int>(m);
  return g;
}

double lebesgue_ball_measure(int n, double r) {
  if (!(r > 0.0)) throw std::domain_error("ball measure: radius must be positive");
  return n == 1 ? 2.0 * r : M_PI * r * r;
}

namespace {

// Axis index range [k_lo, k_hi) of centers within (c - r, c + r).
std::pair<int, int> axis_range(const Grid& g, double c, double r) {
  // centers at (k + 1/2) h - L
  const double lo = (c - r + g.half_width) / g.spacing - 0.5;
  const double hi = (c + r + g.half_width) / g.spacing - 0.5;
  int k_lo = std::max(0, static_cast<int>(std::floor(lo)));
  int k_hi = std::min(g.cells_per_axis - 1, static_cast<int>(std::ceil(hi)));
  return {k_lo, k_hi};
}

}  // namespace

std::vector<int> ball_cells(const Grid& grid, const Ball& ball) {
  if (!(ball.radius > 0.0))
    throw std::domain_error("ball_cells: radius must be positive");
  const double L = grid.half_width;
  if (std::fabs(ball.center.x) >= L + 1e-12 ||
      (grid.n == 2 && std::fabs(ball.center.y) >= L + 1e-12))
    throw std::invalid_argument("ball_cells: ball center outside the grid box");

  std::vector<int> out;
  const auto [kx_lo, kx_hi] = axis_range(grid, ball.center.x, ball.radius);
  if (grid.n == 1) {
    for (int k = kx_lo; k <= kx_hi; ++k) {
      if (std::fabs(grid.axis_center(k) - ball.center.x) < ball.radius)
        out.push_back(k);
    }
    return out;
  }
  const auto [ky_lo, ky_hi] = axis_range(grid, ball.center.y, ball.radius);
  const double r2 = ball.radius * ball.radius;
  for (int ky = ky_lo; ky <= ky_hi; ++ky) {
    const double dy = grid.axis_center(ky) - ball.center.y;
    for (int kx = kx_lo; kx <= kx_hi; ++kx) {
      const double dx = grid.axis_center(kx) - ball.center.x;
      if (dx * dx + dy * dy < r2) out.push_back(ky * grid.cells_per_axis + kx);
    }
  }
  return out;
}

std::vector<int> all_cells(const Grid& grid) {
  std::vector<int> out(grid.cell_count());
  for (int i = 0; i < grid.cell_count(); ++i) out[i] = i;
  return out;
}

std::vector<double> dyadic_radii(const Grid& grid, double r_min, double r_max) {
  if (r_max <= 0.0) r_max = 2.0 * grid.half_width;
  if (r_min <= 0.0) r_min = grid.spacing;
  std::vector<double> radii;
  for (double r = grid.spacing; r <= r_max * (1.0 + 1e-12); r *= 2.0) {
    if (r >= r_min * (1.0 - 1e-12)) radii.push_back(r);
  }
  if (radii.empty()) throw config_error("ball family: empty radius ladder");
  return radii;
}

BallFamily make_ball_family(const Grid& grid, int center_stride, double r_min,
                            double r_max) {
  if (center_stride < 1) throw config_error("ball family: stride must be >= 1");
  BallFamily fam;
  fam.radii = dyadic_radii(grid, r_min, r_max);
  for (int i = 0; i < grid.cell_count(); i += center_stride)
    fam.centers.push_back(grid.center(i));
  return fam;
}

SphereQuadrature make_sphere_quadrature(int n, int node_count) {
  SphereQuadrature q;
  q.n = n;
  if (n == 1) {
    q.nodes = {{-1.0, 0.0}, {1.0, 0.0}};
    q.weights = {1.0, 1.0};
    return q;
  }
  if (n != 2) throw config_error("sphere quadrature: dimension must be 1 or 2");
  if (node_count < 4) throw config_error("sphere quadrature: need at least 4 nodes");
  const double step = 2.0 * M_PI / node_count;
  q.nodes.resize(node_count);
  q.weights.assign(node_count, step);
  for (int i = 0; i < node_count; ++i) {
    const double theta = i * step;
    q.nodes[i] = {std::cos(theta), std::sin(theta)};
  }
  return q;
}

}  // namespace morreykit
