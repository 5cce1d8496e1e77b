#include "morreykit/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "morreykit/errors.hpp"
#include "morreykit/kernels.hpp"

namespace morreykit {

namespace {

void validate_positive(const std::vector<double>& values) {
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw config_error("weight: cell values must be strictly positive and finite");
  }
}

}  // namespace

Weight make_constant_weight(const Grid& grid, double value) {
  if (!(value > 0.0)) throw config_error("weight: constant must be positive");
  Weight w;
  w.values.assign(grid.cell_count(), value);
  w.power = PowerTag{0.0, Vec{}, value};
  return w;
}

Weight make_power_weight(const Grid& grid, double alpha, Vec center, double scale) {
  if (alpha <= -static_cast<double>(grid.n))
    throw config_error("weight: power exponent must exceed -n");
  if (!(scale > 0.0)) throw config_error("weight: scale must be positive");
  Weight w;
  w.values.resize(grid.cell_count());
  for (int i = 0; i < grid.cell_count(); ++i) {
    const double d = distance(grid.center(i), center, grid.n);
    w.values[i] = scale * std::pow(d, alpha);
  }
  validate_positive(w.values);
  w.power = PowerTag{alpha, center, scale};
  return w;
}

Weight make_table_weight(const Grid& grid, std::vector<double> values) {
  if (static_cast<int>(values.size()) != grid.cell_count())
    throw config_error("weight: table size does not match the grid");
  validate_positive(values);
  Weight w;
  w.values = std::move(values);
  return w;
}

double weight_measure(const Weight& w, std::span<const int> cells, const Grid& grid) {
  double sum = 0.0;
  for (int c : cells) sum += w.values[static_cast<std::size_t>(c)];
  return sum * grid.cell_volume();
}

double weight_measure_ball(const Weight& w, const Ball& ball, const Grid& grid) {
  const auto cells = ball_cells(grid, ball);
  return weight_measure(w, cells, grid);
}

std::optional<double> analytic_ball_measure(const Weight& w, const Ball& ball,
                                            const Grid& grid) {
  if (!w.power) return std::nullopt;
  const PowerTag& tag = *w.power;
  if (distance(ball.center, tag.center, grid.n) > 1e-12) return std::nullopt;
  const double a = tag.alpha;
  const double L = grid.half_width;
  if (grid.n == 1) {
    const double lo = std::max(-L, ball.center.x - ball.radius);
    const double hi = std::min(L, ball.center.x + ball.radius);
    if (hi <= lo) return 0.0;
    auto prim = [&](double u) {
      const double d = u - tag.center.x;
      return std::copysign(std::pow(std::fabs(d), a + 1.0), d) / (a + 1.0);
    };
    return tag.scale * (prim(hi) - prim(lo));
  }
  // Polar form, only for balls that fit inside the box.
  if (std::fabs(ball.center.x) + ball.radius > L ||
      std::fabs(ball.center.y) + ball.radius > L)
    return std::nullopt;
  return tag.scale * 2.0 * M_PI * std::pow(ball.radius, a + 2.0) / (a + 2.0);
}

std::optional<double> unclipped_ball_measure(const Weight& w, const Ball& ball,
                                             int n, double e) {
  if (!w.power) return std::nullopt;
  const PowerTag& tag = *w.power;
  const double a = tag.alpha * e;
  const double scale = std::pow(tag.scale, e);
  if (a <= -static_cast<double>(n)) return std::nullopt;
  if (a == 0.0) return scale * lebesgue_ball_measure(n, ball.radius);
  if (n == 1) {
    auto prim = [&](double u) {
      const double d = u - tag.center.x;
      return std::copysign(std::pow(std::fabs(d), a + 1.0), d) / (a + 1.0);
    };
    return scale *
           (prim(ball.center.x + ball.radius) - prim(ball.center.x - ball.radius));
  }
  if (distance(ball.center, tag.center, 2) > 1e-12) return std::nullopt;
  return scale * 2.0 * M_PI * std::pow(ball.radius, a + 2.0) / (a + 2.0);
}

Weight dual_weight(const Weight& w, double p) {
  if (!(p > 1.0) || std::isinf(p))
    throw std::domain_error("dual weight: requires 1 < p < inf");
  const double e = -1.0 / (p - 1.0);  // 1 - p'
  Weight d;
  d.values.resize(w.values.size());
  for (std::size_t i = 0; i < w.values.size(); ++i)
    d.values[i] = std::pow(w.values[i], e);
  if (w.power)
    d.power = PowerTag{w.power->alpha * e, w.power->center,
                       std::pow(w.power->scale, e)};
  return d;
}

namespace {

ApReport characteristic_scan(const Weight& w, double p, const BallFamily& family,
                             const Grid& grid, bool a1) {
  if (family.centers.empty() || family.radii.empty())
    throw config_error("characteristic: empty ball family");
  const double dual_exp = a1 ? 0.0 : -1.0 / (p - 1.0);
  ApReport report;
  report.p = p;
  report.characteristic = 0.0;
  for (const Vec& c : family.centers) {
    for (double r : family.radii) {
      const auto cells = ball_cells(grid, Ball{c, r});
      if (cells.size() < 2) {
        ++report.skipped;
        continue;
      }
      double sum_w = 0.0, sum_dual = 0.0;
      double mn = std::numeric_limits<double>::infinity();
      for (int idx : cells) {
        const double v = w.values[static_cast<std::size_t>(idx)];
        sum_w += v;
        if (a1) {
          mn = std::min(mn, v);
        } else {
          sum_dual += std::pow(v, dual_exp);
        }
      }
      const double count = static_cast<double>(cells.size());
      const double avg_w = sum_w / count;
      const double value = a1 ? avg_w / mn
                              : avg_w * std::pow(sum_dual / count, p - 1.0);
      report.per_ball.push_back({c, r, value, static_cast<int>(cells.size())});
      if (value > report.characteristic) {
        report.characteristic = value;
        report.argmax = Ball{c, r};
      }
    }
  }
  if (report.per_ball.empty())
    throw config_error("characteristic: no ball in the family holds 2 cells");
  return report;
}

}  // namespace

ApReport ap_characteristic(const Weight& w, double p, const BallFamily& family,
                           const Grid& grid) {
  if (!(p > 1.0) || std::isinf(p))
    throw std::domain_error("A_p characteristic: requires 1 < p < inf");
  return characteristic_scan(w, p, family, grid, false);
}

ApReport a1_characteristic(const Weight& w, const BallFamily& family,
                           const Grid& grid) {
  return characteristic_scan(w, 1.0, family, grid, true);
}

AInfReport a_infinity_characteristic(const Weight& w, const BallFamily& family,
                                     const Grid& grid) {
  static const double kPGrid[] = {1.25, 1.5, 2.0, 4.0, 8.0};
  AInfReport report;
  report.characteristic = std::numeric_limits<double>::infinity();
  for (double p : kPGrid) {
    const double value = ap_characteristic(w, p, family, grid).characteristic;
    report.per_p.emplace_back(p, value);
    if (value < report.characteristic) {
      report.characteristic = value;
      report.minimizing_p = p;
    }
  }
  return report;
}

DoublingReport doubling_check(const Weight& w, double p, const BallFamily& family,
                              const Grid& grid) {
  DoublingReport report;
  report.ap_value = ap_characteristic(w, p, family, grid).characteristic;
  report.bound = std::pow(2.0, grid.n * p) * report.ap_value;
  const double L = grid.half_width;
  for (const Vec& c : family.centers) {
    for (double r : family.radii) {
      const bool doubled_fits =
          std::fabs(c.x) + 2.0 * r <= L &&
          (grid.n == 1 || std::fabs(c.y) + 2.0 * r <= L);
      if (!doubled_fits) {
        ++report.skipped;
        continue;
      }
      const double wb = weight_measure_ball(w, Ball{c, r}, grid);
      if (wb == 0.0) {
        ++report.skipped;
        continue;
      }
      const double w2b = weight_measure_ball(w, Ball{c, 2.0 * r}, grid);
      const double ratio = w2b / wb;
      report.rows.push_back({c, r, ratio});
      report.max_ratio = std::max(report.max_ratio, ratio);
      if (ratio > report.bound * (1.0 + 1e-12)) ++report.violations;
    }
  }
  return report;
}

HolderIdentityReport holder_identity_suite(const Weight& w, double p, double s,
                                           const Ball& ball, const Grid& grid) {
  if (!(p > 1.0) || !(s > p) || std::isinf(s))
    throw std::invalid_argument("identity suite: requires 1 < p < s < inf");
  const auto cells = ball_cells(grid, ball);
  if (cells.size() < 2)
    throw std::invalid_argument("identity suite: ball holds fewer than 2 cells");
  const double hn = grid.cell_volume();
  const double meas = static_cast<double>(cells.size()) * hn;
  const double pp = conjugate_exponent(p);
  const double ssp = s / (s - p);  // (s/p)'

  double s_w = 0.0, s_dual = 0.0, s_ssp = 0.0;
  double mn = std::numeric_limits<double>::infinity();
  double max_inv = 0.0;
  for (int c : cells) {
    const double v = w.values[static_cast<std::size_t>(c)];
    s_w += v * hn;
    s_dual += std::pow(v, 1.0 - pp) * hn;
    s_ssp += std::pow(v, ssp) * hn;
    mn = std::min(mn, v);
    max_inv = std::max(max_inv, 1.0 / v);
  }

  HolderIdentityReport rep;
  const double avg_w = s_w / meas;
  const double avg_dual = s_dual / meas;
  rep.char_root = std::pow(avg_w * std::pow(avg_dual, p - 1.0), 1.0 / p);

  const double dual_norm = std::pow(s_dual, 1.0 / pp);  // ||w^{-1/p}||_{p'}
  rep.dual_norm_ratio = dual_norm / (meas * std::pow(s_w, -1.0 / p));

  rep.inf_lhs = max_inv;
  rep.inf_rhs = 1.0 / mn;

  // Dual-weight characteristic routes. v = w^{1-p'}.
  const double avg_ssp = s_ssp / meas;
  rep.id7_lhs = std::pow(avg_dual * std::pow(avg_w, pp - 1.0), 1.0 / pp);
  rep.id7_rhs = std::pow(s_dual, 1.0 / pp) * std::pow(s_w, 1.0 / p) / meas;

  const double q = pp / conjugate_exponent(s);  // p'/s'
  rep.id8_lhs = std::pow(avg_dual * std::pow(avg_ssp, q - 1.0), 1.0 / pp);
  rep.id8_rhs = std::pow(meas, -1.0 / conjugate_exponent(s)) *
                std::pow(s_dual, 1.0 / pp) * std::pow(s_ssp, (s - p) / (s * p));

  rep.id9_lhs = rep.id8_lhs;
  rep.id9_rhs = std::pow(meas, 1.0 / s) * rep.id7_lhs *
                std::pow(s_w, -1.0 / p) * std::pow(s_ssp, (s - p) / (s * p));
  return rep;
}

SubsetBoundReport subset_lower_bound_check(const Weight& w, double p,
                                           double characteristic,
                                           const Ball& ball, const Grid& grid,
                                           int max_cells) {
  const auto cells = ball_cells(grid, ball);
  const int count = static_cast<int>(cells.size());
  if (count < 1 || count > max_cells)
    throw std::invalid_argument("subset check: ball must hold 1.." +
                                std::to_string(max_cells) + " cells");
  double w_ball = 0.0;
  std::vector<double> vals(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    vals[i] = w.values[static_cast<std::size_t>(cells[i])];
    w_ball += vals[i];
  }
  SubsetBoundReport rep;
  rep.min_slack = std::numeric_limits<double>::infinity();
  rep.fitted_delta = std::numeric_limits<double>::infinity();
  rep.fitted_c = 1.0;
  const unsigned full = (1u << count) - 1u;
  for (unsigned mask = 1; mask <= full; ++mask) {
    double w_s = 0.0;
    int n_s = 0;
    for (int i = 0; i < count; ++i) {
      if (mask & (1u << i)) {
        w_s += vals[static_cast<std::size_t>(i)];
        ++n_s;
      }
    }
    const double meas_ratio = static_cast<double>(n_s) / count;
    const double w_ratio = w_s / w_ball;
    ++rep.tested;
    const double slack = w_ratio - std::pow(meas_ratio, p) / characteristic;
    rep.min_slack = std::min(rep.min_slack, slack);
    if (slack < -1e-12) ++rep.violations_power_form;
    if (w_ratio < meas_ratio / characteristic - 1e-12)
      ++rep.violations_first_power_form;
    if (n_s < count) {
      rep.fitted_delta = std::min(
          rep.fitted_delta, std::log(w_ratio) / std::log(meas_ratio));
    }
  }
  if (!std::isfinite(rep.fitted_delta)) rep.fitted_delta = 1.0;
  return rep;
}

}  // namespace morreykit
