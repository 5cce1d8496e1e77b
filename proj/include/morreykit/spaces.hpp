#pragma once

#include <span>
#include <vector>

#include "morreykit/grid.hpp"
#include "morreykit/weights.hpp"

namespace morreykit {

/// Growth profile phi(x, r) normalizing ball-localized norms.
struct PhiModel {
  enum class Form { power, kappa_weight, inv_weight, table };
  Form form = Form::power;
  double beta = 0.0;               // power: phi = r^beta
  double kappa = 0.0;              // kappa_weight: phi = w(B)^{(kappa-1)/p}
  const Weight* weight = nullptr;  // kappa_weight / inv_weight; not owned
  std::vector<std::pair<double, double>> table;  // (radius, value), sorted

  double value(const Vec& x, double r, double p, const Grid& grid) const;
};

PhiModel phi_power(double beta);
PhiModel phi_kappa_weight(double kappa, const Weight& w);
PhiModel phi_inv_weight(const Weight& w);
PhiModel phi_table(std::vector<std::pair<double, double>> entries);

/// (sum over region of |f|^p w h^n)^{1/p}, p in [1, inf).
double lp_w_norm(const GridFunction& f, const Weight& w, double p,
                 std::span<const int> region, const Grid& grid);

/// max over the distinct values v of |f| on the region of
/// v * w({|f| >= v})^{1/p}; equals sup_{t>0} t w({|f|>t})^{1/p} for grid
/// simple functions, with no quadrature tolerance.
double weak_lp_w_norm(const GridFunction& f, const Weight& w, double p,
                      std::span<const int> region, const Grid& grid);

/// Non-increasing rearrangement: sorted |f| values, each carrying measure h^n.
struct Rearrangement {
  std::vector<double> values;  // non-increasing
  double step = 0.0;           // measure per step
};
Rearrangement rearrangement(const GridFunction& f, std::span<const int> region,
                            const Grid& grid);

/// sup_{0<t<=|region|} t^{... } via the rearrangement; agrees with the
/// unweighted weak norm on simple functions.
double weak_lp_norm_via_rearrangement(const GridFunction& f, double p,
                                      std::span<const int> region, const Grid& grid);

struct NormRow {
  Vec center;
  double radius = 0.0;
  double value = 0.0;
};

struct NormReport {
  double value = 0.0;
  Vec argmax_center;
  double argmax_radius = 0.0;
  std::vector<NormRow> per_ball;
};

/// sup over the family of phi(x,r)^{-1} w(B(x,r))^{-1/p} ||f||_{L_{p,w}(B)}.
NormReport generalized_weighted_morrey_norm(const GridFunction& f, double p,
                                            const PhiModel& phi, const Weight& w,
                                            const BallFamily& family,
                                            const Grid& grid);
NormReport weak_generalized_weighted_morrey_norm(const GridFunction& f, double p,
                                                 const PhiModel& phi,
                                                 const Weight& w,
                                                 const BallFamily& family,
                                                 const Grid& grid);

/// Independently coded specializations used to cross-check the generalized
/// functional (they must agree with the matching PhiModel choice).
NormReport weighted_morrey_norm(const GridFunction& f, double p, double kappa,
                                const Weight& w, const BallFamily& family,
                                const Grid& grid);
NormReport classical_morrey_norm(const GridFunction& f, double p, double lambda,
                                 const BallFamily& family, const Grid& grid);
NormReport weak_classical_morrey_norm(const GridFunction& f, double p,
                                      double lambda, const BallFamily& family,
                                      const Grid& grid);

/// Mean oscillation over the family: sup of avg_B |b - b_B|.
double bmo_norm(const GridFunction& b, const BallFamily& family, const Grid& grid);

/// w-weighted ball mean of b.
double weighted_mean(const GridFunction& b, const Weight& w, const Ball& ball,
                     const Grid& grid);

/// sup over the family of w(B)^{-1} sum_B |b - b_{B,w}| w h^n.
double bmo_w_norm(const GridFunction& b, const Weight& w, const BallFamily& family,
                  const Grid& grid);

/// L_p oscillation functionals against the plain mean-oscillation norm.
/// `lp_value` uses Lebesgue averages; `lp_w_value` uses w-averages with the
/// same unweighted ball mean. For constant b both ratios default to 1.
struct JnEquivalenceReport {
  double base = 0.0;        // bmo_norm(b)
  double lp_value = 0.0;
  double lp_ratio = 1.0;    // >= 1 for p > 1
  double lp_w_value = 0.0;
  double lp_w_ratio = 1.0;  // reported only
  double a_inf = 0.0;       // gate value for the weighted form
  bool degenerate = false;  // base == 0
};

JnEquivalenceReport jn_lp_equivalence(const GridFunction& b, const Weight& w,
                                      double p, const BallFamily& family,
                                      const Grid& grid);

/// Oscillation of b on B(x, r1) around the w-mean on B(x, r2), against the
/// log-growth majorant (1 + |ln(r1/r2)|) ||b||_*. With `dual` set the outer
/// average uses w^{1-p'} and exponent p'.
struct BallShiftResult {
  double lhs = 0.0;
  double rhs = 0.0;   // bmo_star * (1 + |ln(r1/r2)|)
  double c_fit = 0.0;
};

BallShiftResult ball_shift_bound(const GridFunction& b, const Weight& w, double p,
                                 const Vec& x, double r1, double r2,
                                 const Grid& grid, double bmo_star,
                                 bool dual = false);

}  // namespace morreykit
