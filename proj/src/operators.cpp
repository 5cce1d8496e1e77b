#include "morreykit/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "morreykit/errors.hpp"

namespace morreykit {

const char* op_kind_name(OpKind kind) {
  switch (kind) {
    case OpKind::maximal: return "maximal";
    case OpKind::rough_maximal: return "rough_maximal";
    case OpKind::singular: return "singular";
    case OpKind::singular_commutator: return "singular_commutator";
    case OpKind::maximal_commutator: return "maximal_commutator";
    case OpKind::marcinkiewicz: return "marcinkiewicz";
    case OpKind::marcinkiewicz_commutator: return "marcinkiewicz_commutator";
  }
  return "?";
}

OpKind op_kind_from_name(const std::string& name) {
  for (OpKind k : {OpKind::maximal, OpKind::rough_maximal, OpKind::singular,
                   OpKind::singular_commutator, OpKind::maximal_commutator,
                   OpKind::marcinkiewicz, OpKind::marcinkiewicz_commutator}) {
    if (name == op_kind_name(k)) return k;
  }
  throw config_error("operator: unknown kind '" + name + "'");
}

OperatorSpec make_operator(OpKind kind, const Grid& grid,
                           const SphereKernel* kernel, const GridFunction* symbol) {
  OperatorSpec spec;
  spec.kind = kind;
  spec.kernel = kernel;
  spec.symbol = symbol;
  spec.radii = dyadic_radii(grid, grid.spacing, 4.0 * grid.half_width);
  validate_operator(spec, grid);
  return spec;
}

void validate_operator(const OperatorSpec& spec, const Grid& grid) {
  const bool needs_kernel = spec.kind != OpKind::maximal;
  if (needs_kernel && spec.kernel == nullptr)
    throw config_error("operator: kind requires a kernel");
  const bool needs_cancellation = spec.kind == OpKind::singular ||
                                  spec.kind == OpKind::singular_commutator ||
                                  spec.kind == OpKind::marcinkiewicz ||
                                  spec.kind == OpKind::marcinkiewicz_commutator;
  if (needs_cancellation) {
    const double defect = cancellation_defect(*spec.kernel);
    if (defect > 1e-10)
      throw config_error("operator: kernel mean-zero defect " +
                         std::to_string(defect) + " exceeds 1e-10");
  }
  if (spec.is_commutator()) {
    if (spec.symbol == nullptr) throw config_error("operator: commutator requires a symbol");
    if (static_cast<int>(spec.symbol->size()) != grid.cell_count())
      throw config_error("operator: symbol size does not match the grid");
  }
  const bool needs_radii = spec.kind != OpKind::singular &&
                           spec.kind != OpKind::singular_commutator;
  if (needs_radii) {
    if (spec.radii.empty()) throw config_error("operator: radius set is empty");
    for (std::size_t i = 1; i < spec.radii.size(); ++i)
      if (spec.radii[i] <= spec.radii[i - 1])
        throw config_error("operator: radii must increase strictly");
  }
}

namespace {

double maximal_at(const GridFunction& f, const Grid& grid,
                  const std::vector<double>& radii, int cell, bool exclude_center,
                  const SphereKernel* kernel, const GridFunction* symbol) {
  const Vec x = grid.center(cell);
  const double bx = symbol ? (*symbol)[static_cast<std::size_t>(cell)] : 0.0;
  double best = 0.0;
  for (double t : radii) {
    const auto cells = ball_cells(grid, Ball{x, t});
    double sum = 0.0;
    long count = 0;
    for (int idx : cells) {
      if ((exclude_center || kernel) && idx == cell) continue;
      const auto i = static_cast<std::size_t>(idx);
      double term = std::fabs(f[i]);
      if (kernel) term *= std::fabs(evaluate(*kernel, x - grid.center(idx)));
      if (symbol) term *= std::fabs(bx - (*symbol)[i]);
      sum += term;
      ++count;
    }
    if (count == 0) continue;
    best = std::max(best, sum / static_cast<double>(count));
  }
  return best;
}

double singular_at(const GridFunction& f, const Grid& grid,
                   const SphereKernel& kernel, int cell,
                   const GridFunction* symbol) {
  const Vec x = grid.center(cell);
  const double hn = grid.cell_volume();
  const double bx = symbol ? (*symbol)[static_cast<std::size_t>(cell)] : 0.0;
  double sum = 0.0;
  const int count = grid.cell_count();
  for (int idx = 0; idx < count; ++idx) {
    if (idx == cell) continue;
    const auto i = static_cast<std::size_t>(idx);
    if (f[i] == 0.0) continue;
    const Vec y = grid.center(idx);
    const double d = distance(x, y, grid.n);
    double term = evaluate(kernel, x - y) / std::pow(d, grid.n) * f[i] * hn;
    if (symbol) term *= bx - (*symbol)[i];
    sum += term;
  }
  return sum;
}

double square_function_at(const GridFunction& f, const Grid& grid,
                          const SphereKernel& kernel,
                          const std::vector<double>& t_grid, int cell,
                          const GridFunction* symbol) {
  const Vec x = grid.center(cell);
  const double hn = grid.cell_volume();
  const double bx = symbol ? (*symbol)[static_cast<std::size_t>(cell)] : 0.0;
  const std::size_t bins = t_grid.size();
  std::vector<double> bin(bins, 0.0);
  const int count = grid.cell_count();
  for (int idx = 0; idx < count; ++idx) {
    if (idx == cell) continue;
    const auto i = static_cast<std::size_t>(idx);
    if (f[i] == 0.0) continue;
    const Vec y = grid.center(idx);
    const double d = distance(x, y, grid.n);
    const auto it = std::lower_bound(t_grid.begin(), t_grid.end(), d);
    if (it == t_grid.end()) continue;  // beyond the largest truncation radius
    double term = evaluate(kernel, x - y) / std::pow(d, grid.n - 1) * f[i] * hn;
    if (symbol) term *= bx - (*symbol)[i];
    bin[static_cast<std::size_t>(it - t_grid.begin())] += term;
  }
  // F_{t_j} is the prefix sum; dt/t^3 is integrated exactly per dyadic cell
  // with F frozen at the left endpoint, and the final cell runs to infinity.
  double total = 0.0;
  double partial = 0.0;
  for (std::size_t j = 0; j < bins; ++j) {
    partial += bin[j];
    const double inv2 = 1.0 / (t_grid[j] * t_grid[j]);
    const double next_inv2 =
        j + 1 < bins ? 1.0 / (t_grid[j + 1] * t_grid[j + 1]) : 0.0;
    total += partial * partial * 0.5 * (inv2 - next_inv2);
  }
  return std::sqrt(total);
}

}  // namespace

double apply_at(const OperatorSpec& spec, const GridFunction& f, const Grid& grid,
                int cell) {
  switch (spec.kind) {
    case OpKind::maximal:
      return maximal_at(f, grid, spec.radii, cell, false, nullptr, nullptr);
    case OpKind::rough_maximal:
      return maximal_at(f, grid, spec.radii, cell, true, spec.kernel, nullptr);
    case OpKind::maximal_commutator:
      return maximal_at(f, grid, spec.radii, cell, true, spec.kernel, spec.symbol);
    case OpKind::singular:
      return singular_at(f, grid, *spec.kernel, cell, nullptr);
    case OpKind::singular_commutator:
      return singular_at(f, grid, *spec.kernel, cell, spec.symbol);
    case OpKind::marcinkiewicz:
      return square_function_at(f, grid, *spec.kernel, spec.radii, cell, nullptr);
    case OpKind::marcinkiewicz_commutator:
      return square_function_at(f, grid, *spec.kernel, spec.radii, cell, spec.symbol);
  }
  return 0.0;
}

GridFunction apply(const OperatorSpec& spec, const GridFunction& f, const Grid& grid) {
  validate_operator(spec, grid);
  if (static_cast<int>(f.size()) != grid.cell_count())
    throw std::invalid_argument("apply: function size does not match the grid");
  GridFunction out(f.size(), 0.0);
  const int count = grid.cell_count();
#pragma omp parallel for schedule(static)
  for (int cell = 0; cell < count; ++cell)
    out[static_cast<std::size_t>(cell)] = apply_at(spec, f, grid, cell);
  return out;
}

GridFunction maximal(const GridFunction& f, const Grid& grid,
                     const std::vector<double>& radii, bool exclude_center) {
  GridFunction out(f.size(), 0.0);
  const int count = grid.cell_count();
#pragma omp parallel for schedule(static)
  for (int cell = 0; cell < count; ++cell)
    out[static_cast<std::size_t>(cell)] =
        maximal_at(f, grid, radii, cell, exclude_center, nullptr, nullptr);
  return out;
}

GridFunction rough_maximal(const SphereKernel& kernel, const GridFunction& f,
                           const Grid& grid, const std::vector<double>& radii) {
  OperatorSpec spec;
  spec.kind = OpKind::rough_maximal;
  spec.kernel = &kernel;
  spec.radii = radii;
  return apply(spec, f, grid);
}

GridFunction singular(const SphereKernel& kernel, const GridFunction& f,
                      const Grid& grid) {
  OperatorSpec spec;
  spec.kind = OpKind::singular;
  spec.kernel = &kernel;
  return apply(spec, f, grid);
}

CommutatorResult singular_commutator(const GridFunction& b, const SphereKernel& kernel,
                                     const GridFunction& f, const Grid& grid) {
  OperatorSpec spec;
  spec.kind = OpKind::singular_commutator;
  spec.kernel = &kernel;
  spec.symbol = &b;
  CommutatorResult res;
  res.value = apply(spec, f, grid);

  GridFunction bf(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) bf[i] = b[i] * f[i];
  const GridFunction tf = singular(kernel, f, grid);
  const GridFunction tbf = singular(kernel, bf, grid);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double algebraic = b[i] * tf[i] - tbf[i];
    res.form_gap = std::max(res.form_gap, std::fabs(res.value[i] - algebraic));
  }
  return res;
}

GridFunction maximal_commutator(const GridFunction& b, const SphereKernel& kernel,
                                const GridFunction& f, const Grid& grid,
                                const std::vector<double>& radii) {
  OperatorSpec spec;
  spec.kind = OpKind::maximal_commutator;
  spec.kernel = &kernel;
  spec.symbol = &b;
  spec.radii = radii;
  return apply(spec, f, grid);
}

GridFunction marcinkiewicz(const SphereKernel& kernel, const GridFunction& f,
                           const Grid& grid, const std::vector<double>& t_grid) {
  OperatorSpec spec;
  spec.kind = OpKind::marcinkiewicz;
  spec.kernel = &kernel;
  spec.radii = t_grid;
  return apply(spec, f, grid);
}

GridFunction marcinkiewicz_commutator(const GridFunction& b,
                                      const SphereKernel& kernel,
                                      const GridFunction& f, const Grid& grid,
                                      const std::vector<double>& t_grid) {
  OperatorSpec spec;
  spec.kind = OpKind::marcinkiewicz_commutator;
  spec.kernel = &kernel;
  spec.symbol = &b;
  spec.radii = t_grid;
  return apply(spec, f, grid);
}

SizeConditionResult size_condition_check(const OperatorSpec& spec,
                                         const GridFunction& f, int cell,
                                         const Grid& grid) {
  validate_operator(spec, grid);
  const Vec x = grid.center(cell);
  const double hn = grid.cell_volume();
  double min_dist = std::numeric_limits<double>::infinity();
  const int count = grid.cell_count();
  for (int idx = 0; idx < count; ++idx) {
    if (f[static_cast<std::size_t>(idx)] != 0.0)
      min_dist = std::min(min_dist, distance(x, grid.center(idx), grid.n));
  }
  SizeConditionResult res;
  if (!std::isfinite(min_dist)) return res;  // f vanishes, both sides 0
  if (min_dist < 2.0 * grid.spacing - 1e-12)
    throw std::invalid_argument(
        "size condition: evaluation point too close to the support of f");

  const double bx =
      spec.symbol ? (*spec.symbol)[static_cast<std::size_t>(cell)] : 0.0;
  double majorant = 0.0;
  for (int idx = 0; idx < count; ++idx) {
    const auto i = static_cast<std::size_t>(idx);
    if (f[i] == 0.0) continue;
    const Vec y = grid.center(idx);
    const double d = distance(x, y, grid.n);
    double term = std::fabs(f[i]) * hn / std::pow(d, grid.n);
    if (spec.kernel) term *= std::fabs(evaluate(*spec.kernel, x - y));
    if (spec.is_commutator()) term *= std::fabs(bx - (*spec.symbol)[i]);
    majorant += term;
  }
  res.value = std::fabs(apply_at(spec, f, grid, cell));
  res.majorant = majorant;
  res.ratio = majorant > 0.0 ? res.value / majorant : 0.0;
  return res;
}

}  // namespace morreykit
