#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "morreykit/grid.hpp"

namespace morreykit {

inline constexpr double kInfExponent = std::numeric_limits<double>::infinity();

/// Conjugate exponent p' = p/(p-1); conj(1) = inf, conj(inf) = 1.
double conjugate_exponent(double p);

/// Kernel sampled at sphere-quadrature nodes, extended to R^n \ {0} as a
/// homogeneous function of degree zero via nearest-node lookup. The lookup
/// depends only on the direction x/|x|, so scale invariance is exact.
struct SphereKernel {
  SphereQuadrature quad;
  std::vector<double> values;            // one per quadrature node
  double integrability_s = kInfExponent; // declared exponent in (1, inf]
  std::optional<double> lip_gamma;       // declared smoothness, if any
  std::string name = "custom";
};

/// Library kernels: "one", "sign" (sign of the first coordinate), and for
/// n=2 also "cos", "sin", "sign_cos" (alias of "sign").
SphereKernel make_named_kernel(const std::string& name, const SphereQuadrature& quad);

SphereKernel make_kernel_from_values(const SphereQuadrature& quad,
                                     std::vector<double> values,
                                     double integrability_s = kInfExponent);

/// Index of the quadrature node nearest to x/|x|. x must be nonzero.
int nearest_node(const SphereQuadrature& quad, const Vec& x);

/// Kernel value at the node nearest to x/|x|. Throws std::domain_error at 0.
double evaluate(const SphereKernel& k, const Vec& x);

/// (sum_i weight_i |value_i|^s)^{1/s}; max modulus when s = inf.
double ls_sphere_norm(const SphereKernel& k, double s);

/// |sum_i weight_i value_i|. Values <= 1e-12 certify mean zero.
double cancellation_defect(const SphereKernel& k);

/// max over node pairs of |v_i - v_j| / |node_i - node_j|^gamma.
double lip_gamma_seminorm(const SphereKernel& k, double gamma);

/// Discrete kernel mass over a ball against the sphere-norm majorant
/// ||Omega||_{L_s(S^{n-1})} (v_n (2t)^n / sigma(S^{n-1}))^{1/s}.
/// Requires x inside B(x0, t); the cell at x itself is skipped.
struct BallBoundResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};
BallBoundResult ls_ball_bound(const SphereKernel& k, double s, const Vec& x,
                              const Vec& x0, double t, const Grid& grid);

}  // namespace morreykit
