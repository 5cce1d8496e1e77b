#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace morreykit {

/// Point in the ambient space. For dimension 1 only `x` is used and `y`
/// stays zero, so the Euclidean distance below works for both dimensions.
struct Vec {
  double x = 0.0;
  double y = 0.0;
};

inline Vec operator-(const Vec& a, const Vec& b) { return {a.x - b.x, a.y - b.y}; }
inline Vec operator+(const Vec& a, const Vec& b) { return {a.x + b.x, a.y + b.y}; }

/// Euclidean distance. Dimension 1 uses fabs so lattice distances are exact
/// multiples of the spacing.
inline double distance(const Vec& a, const Vec& b, int n) {
  if (n == 1) return std::fabs(a.x - b.x);
  return std::hypot(a.x - b.x, a.y - b.y);
}

/// Uniform truncated grid on [-L, L]^n with cell centers offset by h/2 from
/// the lattice, so no center coincides with the origin.
struct Grid {
  int n = 1;                 // dimension, 1 or 2
  double half_width = 1.0;   // L
  double spacing = 1.0;      // h
  int cells_per_axis = 0;    // 2L/h, positive even integer

  int cell_count() const {
    return n == 1 ? cells_per_axis : cells_per_axis * cells_per_axis;
  }
  double cell_volume() const { return n == 1 ? spacing : spacing * spacing; }
  double axis_center(int k) const {
    return (static_cast<double>(k) + 0.5) * spacing - half_width;
  }
  Vec center(int index) const {
    if (n == 1) return {axis_center(index), 0.0};
    return {axis_center(index % cells_per_axis),
            axis_center(index / cells_per_axis)};
  }
};

/// Builds a grid, rejecting parameters that would put a cell center at the
/// origin (2L/h must be a positive even integer).
Grid make_grid(int n, double half_width, double spacing);

/// v_n r^n with v_1 = 2, v_2 = pi. Throws std::domain_error for r <= 0.
double lebesgue_ball_measure(int n, double r);

struct Ball {
  Vec center;
  double radius = 0.0;
};

/// Indices of cells whose center lies strictly inside the ball. The ball
/// center must be inside the grid box.
std::vector<int> ball_cells(const Grid& grid, const Ball& ball);

/// Discrete measure of a cell set: count * h^n.
inline double discrete_measure(const Grid& grid, std::span<const int> cells) {
  return static_cast<double>(cells.size()) * grid.cell_volume();
}

std::vector<int> all_cells(const Grid& grid);

/// Centers (a stride-subsample of cell centers) crossed with a dyadic radius
/// ladder. Realizes the sup over balls in every norm definition.
struct BallFamily {
  std::vector<Vec> centers;
  std::vector<double> radii;  // strictly increasing
};

/// Radii h*2^j restricted to [r_min, r_max]; defaults cover {h, 2h, ..., 2L}.
std::vector<double> dyadic_radii(const Grid& grid, double r_min, double r_max);

BallFamily make_ball_family(const Grid& grid, int center_stride,
                            double r_min = 0.0, double r_max = 0.0);

/// Quadrature on the unit sphere S^{n-1}. Weights sum to the surface measure
/// (2 for n=1, 2*pi for n=2).
struct SphereQuadrature {
  int n = 1;
  std::vector<Vec> nodes;
  std::vector<double> weights;

  double weight_sum() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }
  double surface_measure() const { return n == 1 ? 2.0 : 2.0 * M_PI; }
};

/// n=1: nodes {-1,+1} with weights {1,1}. n=2: node_count equally spaced
/// angles starting at 0, each with weight 2*pi/node_count.
SphereQuadrature make_sphere_quadrature(int n, int node_count = 256);

/// Scalar samples, one value per grid cell.
using GridFunction = std::vector<double>;

}  // namespace morreykit
