#pragma once

#include <vector>

#include "morreykit/grid.hpp"
#include "morreykit/kernels.hpp"

namespace morreykit {

enum class OpKind {
  maximal,
  rough_maximal,
  singular,
  singular_commutator,
  maximal_commutator,
  marcinkiewicz,
  marcinkiewicz_commutator,
};

const char* op_kind_name(OpKind kind);
OpKind op_kind_from_name(const std::string& name);

/// A grid transform. Maximal kinds take the sup over the dyadic radius set;
/// square-function kinds integrate dt/t^3 exactly over the dyadic cells of
/// `radii` with the truncated sum frozen at the left endpoint. Singular and
/// square-function kinds require a mean-zero kernel; commutator kinds
/// require a symbol.
struct OperatorSpec {
  OpKind kind = OpKind::maximal;
  const SphereKernel* kernel = nullptr;
  const GridFunction* symbol = nullptr;  // b
  std::vector<double> radii;             // dyadic, increasing

  bool is_commutator() const {
    return kind == OpKind::singular_commutator ||
           kind == OpKind::maximal_commutator ||
           kind == OpKind::marcinkiewicz_commutator;
  }
  bool is_sublinear() const { return kind != OpKind::singular; }
};

OperatorSpec make_operator(OpKind kind, const Grid& grid,
                           const SphereKernel* kernel = nullptr,
                           const GridFunction* symbol = nullptr);

/// Throws if the spec violates its invariants (cancellation, symbol, radii).
void validate_operator(const OperatorSpec& spec, const Grid& grid);

double apply_at(const OperatorSpec& spec, const GridFunction& f, const Grid& grid,
                int cell);
GridFunction apply(const OperatorSpec& spec, const GridFunction& f, const Grid& grid);

/// Mf(x) = max over t in radii of the average of |f| over B(x, t). With
/// `exclude_center` the cell at x is dropped from both the sum and the
/// normalizing measure, matching the rough variant's convention.
GridFunction maximal(const GridFunction& f, const Grid& grid,
                     const std::vector<double>& radii, bool exclude_center = false);

/// Same sup with the kernel modulus |Omega(x - y)| under the average; the
/// cell at x is always excluded (the kernel is undefined at 0).
GridFunction rough_maximal(const SphereKernel& kernel, const GridFunction& f,
                           const Grid& grid, const std::vector<double>& radii);

/// Principal-value convolution against Omega(x-y)/|x-y|^n, realized by
/// omitting the singular cell. Requires cancellation_defect <= 1e-10.
GridFunction singular(const SphereKernel& kernel, const GridFunction& f,
                      const Grid& grid);

/// Kernel-form commutator sum with the [b(x) - b(y)] factor, plus the
/// algebraic route b * Tf - T(bf) for reconciliation.
struct CommutatorResult {
  GridFunction value;     // kernel form
  double form_gap = 0.0;  // max abs discrepancy against the algebraic form
};
CommutatorResult singular_commutator(const GridFunction& b, const SphereKernel& kernel,
                                     const GridFunction& f, const Grid& grid);

GridFunction maximal_commutator(const GridFunction& b, const SphereKernel& kernel,
                                const GridFunction& f, const Grid& grid,
                                const std::vector<double>& radii);

GridFunction marcinkiewicz(const SphereKernel& kernel, const GridFunction& f,
                           const Grid& grid, const std::vector<double>& t_grid);

GridFunction marcinkiewicz_commutator(const GridFunction& b,
                                      const SphereKernel& kernel,
                                      const GridFunction& f, const Grid& grid,
                                      const std::vector<double>& t_grid);

/// Pointwise comparison of |Tf(x)| against the rough fractional majorant
/// sum_{supp f} |Omega(x-y)| / |x-y|^n |f(y)| h^n (with the |b(x)-b(y)|
/// factor for commutator kinds). Requires dist(x, supp f) >= 2h.
struct SizeConditionResult {
  double value = 0.0;     // |Tf(x)|
  double majorant = 0.0;
  double ratio = 0.0;     // 0 when the majorant vanishes
};
SizeConditionResult size_condition_check(const OperatorSpec& spec,
                                         const GridFunction& f, int cell,
                                         const Grid& grid);

}  // namespace morreykit
