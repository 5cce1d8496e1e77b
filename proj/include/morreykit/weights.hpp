#pragma once

#include <optional>
#include <span>
#include <vector>

#include "morreykit/grid.hpp"

namespace morreykit {

/// Positive density on the grid. A power tag w(x) = scale |x - center|^alpha,
/// when present, provides closed-form ball integrals (constant weights carry
/// alpha = 0); all characteristic scans work on the cell values so the
/// algebraic identities below stay exact.
struct PowerTag {
  double alpha = 0.0;
  Vec center;
  double scale = 1.0;
};

struct Weight {
  std::vector<double> values;      // per cell, strictly positive and finite
  std::optional<PowerTag> power;
};

Weight make_constant_weight(const Grid& grid, double value = 1.0);
/// alpha must lie in (-n, inf) so the weight is locally integrable.
Weight make_power_weight(const Grid& grid, double alpha, Vec center = {},
                         double scale = 1.0);
Weight make_table_weight(const Grid& grid, std::vector<double> values);

/// sum over the cells of w * h^n; empty set gives 0.
double weight_measure(const Weight& w, std::span<const int> cells, const Grid& grid);

double weight_measure_ball(const Weight& w, const Ball& ball, const Grid& grid);

/// Closed-form integral of the tagged density over the ball clipped to the
/// grid box; the refinement oracle matched against cell sums. Dimension 2
/// requires the ball centered at the tag center.
std::optional<double> analytic_ball_measure(const Weight& w, const Ball& ball,
                                            const Grid& grid);

/// Closed-form integral of w^e over the full (unclipped) ball. The weight
/// exists on the whole space, so tail integrals over balls outgrowing the
/// grid box use this instead of the saturating cell sums. Available for
/// power-tagged weights: any ball in dimension 1, and in dimension 2 either
/// alpha e = 0 or a ball centered at the tag center. Returns nothing when
/// alpha e <= -n (the integral diverges) or the weight carries no tag.
std::optional<double> unclipped_ball_measure(const Weight& w, const Ball& ball,
                                             int n, double e = 1.0);

/// Pointwise w^{1 - p'}; a power tag transforms to alpha * (1 - p').
Weight dual_weight(const Weight& w, double p);

struct ApBallValue {
  Vec center;
  double radius = 0.0;
  double value = 0.0;
  int cell_count = 0;
};

struct ApReport {
  double p = 0.0;
  double characteristic = 0.0;  // max of per_ball values, >= 1
  Ball argmax;
  std::vector<ApBallValue> per_ball;
  int skipped = 0;              // balls with fewer than 2 cells
};

/// sup over the family of (avg_B w) (avg_B w^{1-p'})^{p-1}, 1 < p < inf.
ApReport ap_characteristic(const Weight& w, double p, const BallFamily& family,
                           const Grid& grid);

/// sup over the family of (avg_B w) / (min_B w).
ApReport a1_characteristic(const Weight& w, const BallFamily& family,
                           const Grid& grid);

struct AInfReport {
  double characteristic = 0.0;
  double minimizing_p = 0.0;
  std::vector<std::pair<double, double>> per_p;  // (p, characteristic)
};

/// min of ap_characteristic over the fixed grid p in {1.25, 1.5, 2, 4, 8}.
AInfReport a_infinity_characteristic(const Weight& w, const BallFamily& family,
                                     const Grid& grid);

struct DoublingRow {
  Vec center;
  double radius = 0.0;
  double ratio = 0.0;  // w(2B) / w(B)
};

struct DoublingReport {
  double max_ratio = 0.0;
  double bound = 0.0;      // 2^{np} [w]_{A_p}
  double ap_value = 0.0;
  int violations = 0;      // rows with ratio > bound
  int skipped = 0;         // balls whose double does not fit in the box
  std::vector<DoublingRow> rows;
};

DoublingReport doubling_check(const Weight& w, double p, const BallFamily& family,
                              const Grid& grid);

/// Per-ball evaluations of the average/dual-average identities relating the
/// characteristic to mixed norms of w. The *_lhs/. *_rhs pairs are algebraic
/// identities of the same cell sums, so they agree up to rounding; `one_sided`
/// entries report the empirical constant of an inequality instead.
struct HolderIdentityReport {
  double char_root = 0.0;        // per-ball characteristic^{1/p}, >= 1
  double dual_norm_ratio = 0.0;  // ||w^{-1/p}||_{p'} / (|B| w(B)^{-1/p})
  double inf_lhs = 0.0, inf_rhs = 0.0;       // L_inf of 1/w vs 1/min w
  double id7_lhs = 0.0, id7_rhs = 0.0;
  double id8_lhs = 0.0, id8_rhs = 0.0;
  double id9_lhs = 0.0, id9_rhs = 0.0;
};

/// Requires 1 < p < s.
HolderIdentityReport holder_identity_suite(const Weight& w, double p, double s,
                                           const Ball& ball, const Grid& grid);

/// Exhaustive subset comparison on a small ball: checks
/// w(S)/w(B) >= (1/char) (|S|/|B|)^p for every nonempty S inside B, and
/// counts how often the stronger first-power form fails (reported, never
/// asserted; it does fail for genuinely rough weights). Also fits the best
/// exponent delta for the upper half w(S)/w(B) <= C (|S|/|B|)^delta.
struct SubsetBoundReport {
  int tested = 0;
  int violations_power_form = 0;
  int violations_first_power_form = 0;
  double min_slack = 0.0;   // min of w(S)/w(B) - (1/char)(|S|/|B|)^p
  double fitted_delta = 0.0;
  double fitted_c = 0.0;
};

SubsetBoundReport subset_lower_bound_check(const Weight& w, double p,
                                           double characteristic,
                                           const Ball& ball, const Grid& grid,
                                           int max_cells = 12);

}  // namespace morreykit
