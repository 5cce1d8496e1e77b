#include "morreykit/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "morreykit/errors.hpp"

namespace morreykit {

double conjugate_exponent(double p) {
  if (p == 1.0) return kInfExponent;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

int nearest_node(const SphereQuadrature& quad, const Vec& x) {
  if (x.x == 0.0 && x.y == 0.0)
    throw std::domain_error("kernel evaluation at the origin");
  if (quad.n == 1) return x.x < 0.0 ? 0 : 1;
  // atan2 is scale-free, so the node choice depends only on the direction.
  const int count = static_cast<int>(quad.nodes.size());
  const double step = 2.0 * M_PI / count;
  double theta = std::atan2(x.y, x.x);
  if (theta < 0.0) theta += 2.0 * M_PI;
  int idx = static_cast<int>(std::lround(theta / step));
  idx %= count;
  if (idx < 0) idx += count;
  return idx;
}

double evaluate(const SphereKernel& k, const Vec& x) {
  return k.values[static_cast<std::size_t>(nearest_node(k.quad, x))];
}

SphereKernel make_kernel_from_values(const SphereQuadrature& quad,
                                     std::vector<double> values,
                                     double integrability_s) {
  if (values.size() != quad.nodes.size())
    throw config_error("kernel: value count does not match quadrature nodes");
  if (!(integrability_s > 1.0))
    throw config_error("kernel: integrability exponent must exceed 1");
  SphereKernel k;
  k.quad = quad;
  k.values = std::move(values);
  k.integrability_s = integrability_s;
  return k;
}

SphereKernel make_named_kernel(const std::string& name, const SphereQuadrature& quad) {
  const std::size_t count = quad.nodes.size();
  std::vector<double> values(count);
  SphereKernel k;
  if (name == "one") {
    std::fill(values.begin(), values.end(), 1.0);
  } else if (name == "sign" || name == "sign_cos") {
    for (std::size_t i = 0; i < count; ++i)
      values[i] = quad.nodes[i].x >= 0.0 ? 1.0 : -1.0;
  } else if (name == "cos" && quad.n == 2) {
    for (std::size_t i = 0; i < count; ++i) values[i] = quad.nodes[i].x;
    k.lip_gamma = 1.0;
  } else if (name == "sin" && quad.n == 2) {
    for (std::size_t i = 0; i < count; ++i) values[i] = quad.nodes[i].y;
    k.lip_gamma = 1.0;
  } else {
    throw config_error("kernel: unknown name '" + name + "' for dimension " +
                       std::to_string(quad.n));
  }
  k.quad = quad;
  k.values = std::move(values);
  k.name = name;
  if (name == "one") k.lip_gamma = 1.0;
  return k;
}

double ls_sphere_norm(const SphereKernel& k, double s) {
  if (!(s > 1.0)) throw std::domain_error("sphere norm: exponent must exceed 1");
  if (std::isinf(s)) {
    double m = 0.0;
    for (double v : k.values) m = std::max(m, std::fabs(v));
    return m;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < k.values.size(); ++i)
    sum += k.quad.weights[i] * std::pow(std::fabs(k.values[i]), s);
  return std::pow(sum, 1.0 / s);
}

double cancellation_defect(const SphereKernel& k) {
  double sum = 0.0;
  for (std::size_t i = 0; i < k.values.size(); ++i)
    sum += k.quad.weights[i] * k.values[i];
  return std::fabs(sum);
}

double lip_gamma_seminorm(const SphereKernel& k, double gamma) {
  if (!(gamma > 0.0) || gamma > 1.0)
    throw std::domain_error("Lipschitz seminorm: gamma must be in (0, 1]");
  const std::size_t count = k.values.size();
  if (count < 2) throw std::domain_error("Lipschitz seminorm: need at least 2 nodes");
  double best = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      const double chord = distance(k.quad.nodes[i], k.quad.nodes[j], 2);
      if (chord == 0.0) continue;
      const double slope =
          std::fabs(k.values[i] - k.values[j]) / std::pow(chord, gamma);
      best = std::max(best, slope);
    }
  }
  return best;
}

BallBoundResult ls_ball_bound(const SphereKernel& k, double s, const Vec& x,
                              const Vec& x0, double t, const Grid& grid) {
  if (!(distance(x, x0, grid.n) < t))
    throw std::invalid_argument("ls_ball_bound: x must lie inside B(x0, t)");
  const auto cells = ball_cells(grid, Ball{x0, t});
  const double hn = grid.cell_volume();
  double sum = 0.0;
  double max_abs = 0.0;
  for (int c : cells) {
    const Vec y = grid.center(c);
    const Vec d = x - y;
    if (d.x == 0.0 && d.y == 0.0) continue;  // the cell at x itself
    const double v = std::fabs(evaluate(k, d));
    if (std::isinf(s)) {
      max_abs = std::max(max_abs, v);
    } else {
      sum += std::pow(v, s) * hn;
    }
  }
  BallBoundResult r;
  if (std::isinf(s)) {
    r.lhs = max_abs;
    r.rhs = ls_sphere_norm(k, s);
  } else {
    r.lhs = std::pow(sum, 1.0 / s);
    const SphereQuadrature& q = k.quad;
    r.rhs = ls_sphere_norm(k, s) *
            std::pow(lebesgue_ball_measure(grid.n, 2.0 * t) / q.surface_measure(),
                     1.0 / s);
  }
  r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
  return r;
}

}  // namespace morreykit
