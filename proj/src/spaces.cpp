#include "morreykit/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "morreykit/errors.hpp"
#include "morreykit/kernels.hpp"

namespace morreykit {

PhiModel phi_power(double beta) {
  PhiModel m;
  m.form = PhiModel::Form::power;
  m.beta = beta;
  return m;
}

PhiModel phi_kappa_weight(double kappa, const Weight& w) {
  if (!(kappa > 0.0) || !(kappa < 1.0))
    throw config_error("phi: kappa must lie in (0, 1)");
  PhiModel m;
  m.form = PhiModel::Form::kappa_weight;
  m.kappa = kappa;
  m.weight = &w;
  return m;
}

PhiModel phi_inv_weight(const Weight& w) {
  PhiModel m;
  m.form = PhiModel::Form::inv_weight;
  m.weight = &w;
  return m;
}

PhiModel phi_table(std::vector<std::pair<double, double>> entries) {
  if (entries.empty()) throw config_error("phi: empty table");
  std::sort(entries.begin(), entries.end());
  PhiModel m;
  m.form = PhiModel::Form::table;
  m.table = std::move(entries);
  return m;
}

double PhiModel::value(const Vec& x, double r, double p, const Grid& grid) const {
  switch (form) {
    case Form::power:
      return std::pow(r, beta);
    case Form::kappa_weight: {
      const double wb = weight_measure_ball(*weight, Ball{x, r}, grid);
      if (!(wb > 0.0)) throw config_error("phi: w(B) vanished on an empty ball");
      return std::pow(wb, (kappa - 1.0) / p);
    }
    case Form::inv_weight: {
      const double wb = weight_measure_ball(*weight, Ball{x, r}, grid);
      if (!(wb > 0.0)) throw config_error("phi: w(B) vanished on an empty ball");
      return std::pow(wb, -1.0 / p);
    }
    case Form::table: {
      for (const auto& [rad, val] : table) {
        if (std::fabs(rad - r) <= 1e-9 * std::max(1.0, r)) return val;
      }
      throw config_error("phi: radius missing from table");
    }
  }
  return 0.0;
}

double lp_w_norm(const GridFunction& f, const Weight& w, double p,
                 std::span<const int> region, const Grid& grid) {
  if (!(p >= 1.0) || std::isinf(p))
    throw std::domain_error("lp norm: p must lie in [1, inf)");
  const double hn = grid.cell_volume();
  double sum = 0.0;
  for (int c : region) {
    const auto i = static_cast<std::size_t>(c);
    sum += std::pow(std::fabs(f[i]), p) * w.values[i] * hn;
  }
  return std::pow(sum, 1.0 / p);
}

double weak_lp_w_norm(const GridFunction& f, const Weight& w, double p,
                      std::span<const int> region, const Grid& grid) {
  if (!(p >= 1.0) || std::isinf(p))
    throw std::domain_error("weak norm: p must lie in [1, inf)");
  const double hn = grid.cell_volume();
  std::vector<std::pair<double, double>> level;  // (|f|, w-mass)
  level.reserve(region.size());
  for (int c : region) {
    const auto i = static_cast<std::size_t>(c);
    const double a = std::fabs(f[i]);
    if (a > 0.0) level.emplace_back(a, w.values[i] * hn);
  }
  // stable: ties keep region order so single-level functions reproduce the
  // strong-norm summation exactly
  std::stable_sort(level.begin(), level.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  double best = 0.0;
  double mass = 0.0;
  for (std::size_t i = 0; i < level.size(); ++i) {
    mass += level[i].second;
    // evaluate only at the last index of each distinct value
    if (i + 1 < level.size() && level[i + 1].first == level[i].first) continue;
    best = std::max(best, level[i].first * std::pow(mass, 1.0 / p));
  }
  return best;
}

Rearrangement rearrangement(const GridFunction& f, std::span<const int> region,
                            const Grid& grid) {
  Rearrangement r;
  r.step = grid.cell_volume();
  r.values.reserve(region.size());
  for (int c : region) r.values.push_back(std::fabs(f[static_cast<std::size_t>(c)]));
  std::sort(r.values.begin(), r.values.end(), std::greater<double>());
  return r;
}

double weak_lp_norm_via_rearrangement(const GridFunction& f, double p,
                                      std::span<const int> region,
                                      const Grid& grid) {
  const Rearrangement r = rearrangement(f, region, grid);
  double best = 0.0;
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    if (r.values[i] == 0.0) break;
    const double t = static_cast<double>(i + 1) * r.step;
    best = std::max(best, r.values[i] * std::pow(t, 1.0 / p));
  }
  return best;
}

namespace {

template <typename PerBall>
NormReport family_sup(const BallFamily& family, const Grid& grid, PerBall&& fn) {
  if (family.centers.empty() || family.radii.empty())
    throw config_error("norm: empty ball family");
  NormReport report;
  for (const Vec& c : family.centers) {
    for (double r : family.radii) {
      const auto cells = ball_cells(grid, Ball{c, r});
      if (cells.empty()) continue;
      const double v = fn(c, r, cells);
      report.per_ball.push_back({c, r, v});
      if (v > report.value) {
        report.value = v;
        report.argmax_center = c;
        report.argmax_radius = r;
      }
    }
  }
  return report;
}

}  // namespace

NormReport generalized_weighted_morrey_norm(const GridFunction& f, double p,
                                            const PhiModel& phi, const Weight& w,
                                            const BallFamily& family,
                                            const Grid& grid) {
  return family_sup(family, grid, [&](const Vec& c, double r, const auto& cells) {
    const double ph = phi.value(c, r, p, grid);
    if (!(ph > 0.0)) throw config_error("norm: phi must be positive on the family");
    const double wb = weight_measure(w, cells, grid);
    return std::pow(wb, -1.0 / p) / ph * lp_w_norm(f, w, p, cells, grid);
  });
}

NormReport weak_generalized_weighted_morrey_norm(const GridFunction& f, double p,
                                                 const PhiModel& phi,
                                                 const Weight& w,
                                                 const BallFamily& family,
                                                 const Grid& grid) {
  return family_sup(family, grid, [&](const Vec& c, double r, const auto& cells) {
    const double ph = phi.value(c, r, p, grid);
    if (!(ph > 0.0)) throw config_error("norm: phi must be positive on the family");
    const double wb = weight_measure(w, cells, grid);
    return std::pow(wb, -1.0 / p) / ph * weak_lp_w_norm(f, w, p, cells, grid);
  });
}

NormReport weighted_morrey_norm(const GridFunction& f, double p, double kappa,
                                const Weight& w, const BallFamily& family,
                                const Grid& grid) {
  if (!(kappa > 0.0) || !(kappa < 1.0))
    throw std::domain_error("weighted Morrey norm: kappa must lie in (0, 1)");
  return family_sup(family, grid, [&](const Vec&, double, const auto& cells) {
    const double wb = weight_measure(w, cells, grid);
    return std::pow(wb, -kappa / p) * lp_w_norm(f, w, p, cells, grid);
  });
}

NormReport classical_morrey_norm(const GridFunction& f, double p, double lambda,
                                 const BallFamily& family, const Grid& grid) {
  if (lambda < 0.0 || lambda > grid.n)
    throw std::domain_error("Morrey norm: lambda must lie in [0, n]");
  const Weight ones = make_constant_weight(grid);
  return family_sup(family, grid, [&](const Vec&, double r, const auto& cells) {
    return std::pow(r, -lambda / p) * lp_w_norm(f, ones, p, cells, grid);
  });
}

NormReport weak_classical_morrey_norm(const GridFunction& f, double p,
                                      double lambda, const BallFamily& family,
                                      const Grid& grid) {
  if (lambda < 0.0 || lambda > grid.n)
    throw std::domain_error("Morrey norm: lambda must lie in [0, n]");
  const Weight ones = make_constant_weight(grid);
  return family_sup(family, grid, [&](const Vec&, double r, const auto& cells) {
    return std::pow(r, -lambda / p) * weak_lp_w_norm(f, ones, p, cells, grid);
  });
}

double bmo_norm(const GridFunction& b, const BallFamily& family, const Grid& grid) {
  double best = 0.0;
  for (const Vec& c : family.centers) {
    for (double r : family.radii) {
      const auto cells = ball_cells(grid, Ball{c, r});
      if (cells.empty()) continue;
      double mean = 0.0;
      for (int idx : cells) mean += b[static_cast<std::size_t>(idx)];
      mean /= static_cast<double>(cells.size());
      double osc = 0.0;
      for (int idx : cells) osc += std::fabs(b[static_cast<std::size_t>(idx)] - mean);
      osc /= static_cast<double>(cells.size());
      best = std::max(best, osc);
    }
  }
  return best;
}

double weighted_mean(const GridFunction& b, const Weight& w, const Ball& ball,
                     const Grid& grid) {
  const auto cells = ball_cells(grid, ball);
  if (cells.empty()) throw std::invalid_argument("weighted mean: empty ball");
  double mass = 0.0, sum = 0.0;
  for (int idx : cells) {
    const auto i = static_cast<std::size_t>(idx);
    mass += w.values[i];
    sum += b[i] * w.values[i];
  }
  return sum / mass;
}

double bmo_w_norm(const GridFunction& b, const Weight& w, const BallFamily& family,
                  const Grid& grid) {
  double best = 0.0;
  for (const Vec& c : family.centers) {
    for (double r : family.radii) {
      const auto cells = ball_cells(grid, Ball{c, r});
      if (cells.empty()) continue;
      double mass = 0.0, sum = 0.0;
      for (int idx : cells) {
        const auto i = static_cast<std::size_t>(idx);
        mass += w.values[i];
        sum += b[i] * w.values[i];
      }
      const double mean = sum / mass;
      double osc = 0.0;
      for (int idx : cells) {
        const auto i = static_cast<std::size_t>(idx);
        osc += std::fabs(b[i] - mean) * w.values[i];
      }
      best = std::max(best, osc / mass);
    }
  }
  return best;
}

JnEquivalenceReport jn_lp_equivalence(const GridFunction& b, const Weight& w,
                                      double p, const BallFamily& family,
                                      const Grid& grid) {
  if (!(p >= 1.0) || std::isinf(p))
    throw std::domain_error("oscillation equivalence: p must lie in [1, inf)");
  JnEquivalenceReport rep;
  rep.base = bmo_norm(b, family, grid);
  rep.a_inf = a_infinity_characteristic(w, family, grid).characteristic;
  for (const Vec& c : family.centers) {
    for (double r : family.radii) {
      const auto cells = ball_cells(grid, Ball{c, r});
      if (cells.empty()) continue;
      double mean = 0.0;
      for (int idx : cells) mean += b[static_cast<std::size_t>(idx)];
      mean /= static_cast<double>(cells.size());
      double osc_p = 0.0, osc_pw = 0.0, mass = 0.0;
      for (int idx : cells) {
        const auto i = static_cast<std::size_t>(idx);
        const double d = std::pow(std::fabs(b[i] - mean), p);
        osc_p += d;
        osc_pw += d * w.values[i];
        mass += w.values[i];
      }
      rep.lp_value = std::max(
          rep.lp_value, std::pow(osc_p / static_cast<double>(cells.size()), 1.0 / p));
      rep.lp_w_value = std::max(rep.lp_w_value, std::pow(osc_pw / mass, 1.0 / p));
    }
  }
  if (rep.base > 0.0) {
    rep.lp_ratio = rep.lp_value / rep.base;
    rep.lp_w_ratio = rep.lp_w_value / rep.base;
  } else {
    rep.degenerate = true;  // constant b, ratios default to 1
  }
  return rep;
}

BallShiftResult ball_shift_bound(const GridFunction& b, const Weight& w, double p,
                                 const Vec& x, double r1, double r2,
                                 const Grid& grid, double bmo_star, bool dual) {
  const double ref_mean = weighted_mean(b, w, Ball{x, r2}, grid);
  const auto cells = ball_cells(grid, Ball{x, r1});
  if (cells.empty()) throw std::invalid_argument("ball shift: empty ball");
  double q = p;
  const Weight* outer = &w;
  Weight dual_w;
  if (dual) {
    q = conjugate_exponent(p);
    dual_w = dual_weight(w, p);
    outer = &dual_w;
  }
  double mass = 0.0, sum = 0.0;
  for (int idx : cells) {
    const auto i = static_cast<std::size_t>(idx);
    mass += outer->values[i];
    sum += std::pow(std::fabs(b[i] - ref_mean), q) * outer->values[i];
  }
  BallShiftResult res;
  res.lhs = std::pow(sum / mass, 1.0 / q);
  res.rhs = bmo_star * (1.0 + std::fabs(std::log(r1 / r2)));
  res.c_fit = res.rhs > 0.0 ? res.lhs / res.rhs : 0.0;
  return res;
}

}  // namespace morreykit
