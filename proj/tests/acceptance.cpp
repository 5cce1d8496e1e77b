// Acceptance battery: one line per criterion, nonzero exit on any failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "morreykit/functions.hpp"
#include "morreykit/harness.hpp"
#include "morreykit/rng.hpp"
#include "morreykit/runner.hpp"

using namespace morreykit;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void criterion(int number, const char* label, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", number, label,
              detail.c_str());
  if (!ok) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double rel(double a, double b) {
  return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-300});
}

int nearest_cell(const Grid& g, double x) {
  int best = 0;
  double d = 1e300;
  for (int i = 0; i < g.cell_count(); ++i) {
    const double di = std::fabs(g.center(i).x - x);
    if (di < d) {
      d = di;
      best = i;
    }
  }
  return best;
}

struct Fixture {
  Grid grid = make_grid(1, 1.0, 1.0 / 256.0);
  SphereQuadrature quad = make_sphere_quadrature(1);
  SphereKernel sign = make_named_kernel("sign", quad);
  SphereKernel one = make_named_kernel("one", quad);
  Weight w03, w05, ones;
  GridFunction log_b;
  BallFamily family = make_ball_family(grid, 16);
  BallFamily case_family = make_ball_family(grid, 64, 0.0, 1.0 / 16.0);

  Fixture() {
    w03 = make_power_weight(grid, 0.3);
    w05 = make_power_weight(grid, 0.5);
    ones = make_constant_weight(grid);
    log_b = sample_log_abs(grid);
  }
} const fx;

constexpr std::uint64_t kSeed = 42;

void criterion_1_muckenhoupt_exactness() {
  double worst_unit = 0.0;
  for (double p : {1.5, 2.0, 4.0}) {
    const double c = ap_characteristic(fx.ones, p, fx.family, fx.grid).characteristic;
    worst_unit = std::max(worst_unit, std::fabs(c - 1.0));
  }
  const double c2 = ap_characteristic(fx.w05, 2.0, fx.family, fx.grid).characteristic;
  const double cd =
      ap_characteristic(dual_weight(fx.w05, 2.0), 2.0, fx.family, fx.grid)
          .characteristic;
  const double dual_gap = rel(cd, std::pow(c2, 1.0 / (2.0 - 1.0)));
  criterion(1, "unit weight exact, dual identity",
            worst_unit <= 1e-12 && dual_gap <= 1e-10,
            "unit gap " + fmt(worst_unit) + ", dual gap " + fmt(dual_gap));
}

void criterion_2_doubling() {
  const DoublingReport rep = doubling_check(fx.w03, 2.0, fx.family, fx.grid);
  criterion(2, "doubling bound 2^{np}[w] with zero violations",
            rep.violations == 0 && !rep.rows.empty(),
            "max ratio " + fmt(rep.max_ratio) + " vs bound " + fmt(rep.bound) +
                ", " + std::to_string(rep.rows.size()) + " balls");
}

void criterion_3_reductions() {
  const GridFunction f = sample_bump(fx.grid, Vec{0.25, 0.0}, 0.5);
  const double p = 2.0;
  const double gen_kappa =
      generalized_weighted_morrey_norm(f, p, phi_kappa_weight(0.5, fx.w03), fx.w03,
                                       fx.family, fx.grid)
          .value;
  const double direct_kappa =
      weighted_morrey_norm(f, p, 0.5, fx.w03, fx.family, fx.grid).value;
  const double gap_kappa = rel(gen_kappa, direct_kappa);

  const double gen_leb =
      generalized_weighted_morrey_norm(f, p, phi_inv_weight(fx.w03), fx.w03,
                                       fx.family, fx.grid)
          .value;
  const double direct_leb = lp_w_norm(f, fx.w03, p, all_cells(fx.grid), fx.grid);
  const double gap_leb = rel(gen_leb, direct_leb);
  criterion(3, "profile reductions agree to 1e-10",
            gap_kappa <= 1e-10 && gap_leb <= 1e-10,
            "kappa gap " + fmt(gap_kappa) + ", lebesgue gap " + fmt(gap_leb));
}

void criterion_4_operator_identities() {
  const auto radii = dyadic_radii(fx.grid, fx.grid.spacing, 4.0);
  const GridFunction f = sample_bandlimited(fx.grid, kSeed, 11, 8);
  double sup_f = 0.0;
  for (double v : f) sup_f = std::max(sup_f, std::fabs(v));

  const GridFunction rough = rough_maximal(fx.one, f, fx.grid, radii);
  const GridFunction plain = maximal(f, fx.grid, radii, true);
  double reduction_gap = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    reduction_gap = std::max(reduction_gap, std::fabs(rough[i] - plain[i]));

  GridFunction flat(f.size(), 3.25);
  const auto comm_flat = singular_commutator(flat, fx.sign, f, fx.grid);
  double comm_sup = 0.0;
  for (double v : comm_flat.value) comm_sup = std::max(comm_sup, std::fabs(v));
  const GridFunction mc = maximal_commutator(flat, fx.one, f, fx.grid, radii);
  const auto t_grid = radii;
  const GridFunction muc =
      marcinkiewicz_commutator(flat, fx.sign, f, fx.grid, t_grid);
  for (double v : mc) comm_sup = std::max(comm_sup, std::fabs(v));
  for (double v : muc) comm_sup = std::max(comm_sup, std::fabs(v));

  const auto comm_log = singular_commutator(fx.log_b, fx.sign, f, fx.grid);

  const int c0 = fx.grid.cells_per_axis / 2;
  const GridFunction sym = sample_bump(fx.grid, fx.grid.center(c0), 0.5);
  const double odd =
      std::fabs(singular(fx.sign, sym, fx.grid)[static_cast<std::size_t>(c0)]);

  criterion(4, "operator identities",
            reduction_gap == 0.0 && comm_sup <= 1e-12 * std::max(1.0, sup_f) &&
                comm_log.form_gap <= 1e-10 && odd <= 1e-12,
            "reduction gap " + fmt(reduction_gap) + ", const-symbol sup " +
                fmt(comm_sup) + ", form gap " + fmt(comm_log.form_gap) +
                ", odd residue " + fmt(odd));
}

void criterion_5_oracles() {
  const Grid wide = make_grid(1, 8.0, 1.0 / 64.0);
  const auto radii = dyadic_radii(wide, wide.spacing, 16.0);
  const GridFunction chi = sample_indicator(wide, Ball{{0.0, 0.0}, 1.0});
  const GridFunction m = maximal(chi, wide, radii);
  const double maximal_err =
      std::fabs(m[static_cast<std::size_t>(nearest_cell(wide, 3.0))] - 0.25);

  const SphereKernel sign_w = make_named_kernel("sign", make_sphere_quadrature(1));
  const GridFunction chi12 = sample_indicator(wide, Ball{{1.5, 0.0}, 0.5});
  const GridFunction t = singular(sign_w, chi12, wide);
  const double singular_err =
      std::fabs(t[static_cast<std::size_t>(nearest_cell(wide, 0.0))] +
                std::log(2.0));

  criterion(5, "closed-form oracles",
            maximal_err <= 2.0 * wide.spacing && singular_err <= 5.0 * wide.spacing,
            "averaging-sup error " + fmt(maximal_err) + " <= " +
                fmt(2.0 * wide.spacing) + ", convolution error " +
                fmt(singular_err) + " <= " + fmt(5.0 * wide.spacing));
}

void criterion_6_square_function_size() {
  OperatorSpec mu = make_operator(OpKind::marcinkiewicz, fx.grid, &fx.sign);
  double worst = 0.0;
  int draws = 0;
  for (int i = 0; i < 100; ++i) {
    SplitRng rng(kSeed, 500 + i);
    const Vec c{rng.next_in(-0.75, -0.25), 0.0};
    const double radius = rng.next_in(4.0 * fx.grid.spacing, 0.2);
    const GridFunction f = i % 2 ? sample_indicator(fx.grid, Ball{c, radius})
                                 : sample_bump(fx.grid, c, radius);
    const int cell = nearest_cell(fx.grid, rng.next_in(0.25, 0.75));
    worst = std::max(worst, size_condition_check(mu, f, cell, fx.grid).ratio);
    ++draws;
  }
  criterion(6, "square-function pointwise domination",
            draws == 100 && worst <= (1.0 + 1e-6) / std::sqrt(2.0),
            "max ratio " + fmt(worst) + " vs " + fmt((1.0 + 1e-6) / std::sqrt(2.0)));
}

VerificationReport run_lemma(CaseId id, const OperatorSpec& op,
                             const GridFunction* b) {
  InequalityCase c;
  c.id = id;
  c.grid = &fx.grid;
  c.w = &fx.w03;
  c.p = 2.0;
  c.s = 8.0;
  c.family = fx.case_family;
  c.seed = kSeed;
  c.function_count = 50;
  c.op = op;
  c.b = b;
  return run_case(c);
}

void criterion_7_local_lemmas() {
  OperatorSpec sing = make_operator(OpKind::singular, fx.grid, &fx.sign);
  const auto strong = run_lemma(CaseId::L2_strong, sing, nullptr);

  OperatorSpec comm =
      make_operator(OpKind::singular_commutator, fx.grid, &fx.sign, &fx.log_b);
  const auto comm_rep = run_lemma(CaseId::L5_strong, comm, &fx.log_b);

  const bool ok = std::isfinite(strong.c_emp) && strong.c_emp > 0.0 &&
                  strong.spread <= 50.0 && strong.stable &&
                  std::isfinite(comm_rep.c_emp) && comm_rep.c_emp > 0.0 &&
                  comm_rep.spread <= 50.0 && comm_rep.stable;
  criterion(7, "local norm bounds over 50 seeded functions", ok,
            "C_emp " + fmt(strong.c_emp) + " spread " + fmt(strong.spread) +
                " drift " + fmt(strong.drift) + "; commutator C_emp " +
                fmt(comm_rep.c_emp) + " spread " + fmt(comm_rep.spread) +
                " drift " + fmt(comm_rep.drift));
}

void criterion_8_weak_type() {
  OperatorSpec sing = make_operator(OpKind::singular, fx.grid, &fx.sign);
  const auto strong = run_lemma(CaseId::L2_strong, sing, nullptr);
  const auto weak = run_lemma(CaseId::L2_weak, sing, nullptr);
  int row_violations = 0;
  for (std::size_t i = 0; i < std::min(strong.rows.size(), weak.rows.size()); ++i) {
    if (weak.rows[i].ratio > strong.rows[i].ratio * (1.0 + 1e-12))
      ++row_violations;
  }
  // Chebyshev across a fresh draw of functions, weights and exponents
  int norm_violations = 0;
  const auto region = all_cells(fx.grid);
  for (int i = 0; i < 50; ++i) {
    const GridFunction f = sample_bandlimited(fx.grid, kSeed, 900 + i, 6);
    for (double p : {1.0, 2.0, 4.0}) {
      if (weak_lp_w_norm(f, fx.w03, p, region, fx.grid) >
          lp_w_norm(f, fx.w03, p, region, fx.grid))
        ++norm_violations;
    }
  }
  criterion(8, "weak-type never exceeds strong",
            row_violations == 0 && norm_violations == 0,
            std::to_string(row_violations) + " row and " +
                std::to_string(norm_violations) + " norm violations");
}

void criterion_9_pair_conditions() {
  InequalityCase z;
  z.grid = &fx.grid;
  z.w = &fx.w03;
  z.p = 2.0;
  z.s = 8.0;
  z.family = fx.case_family;
  z.seed = kSeed;
  z.f = sample_bump(fx.grid, Vec{0.25, 0.0}, 0.5);
  z.phi1 = phi_kappa_weight(0.5, fx.w03);
  z.phi2 = z.phi1;
  z.id = CaseId::Z316;
  const auto z316 = run_case(z);
  z.id = CaseId::Z47;
  const auto z47 = run_case(z);
  int order_violations = 0;
  for (std::size_t i = 0; i < std::min(z316.rows.size(), z47.rows.size()); ++i) {
    if (z47.rows[i].ratio < z316.rows[i].ratio * (1.0 - 1e-12)) ++order_violations;
  }

  InequalityCase bad = z;
  bad.id = CaseId::Z316;
  bad.w = &fx.ones;
  bad.phi1 = phi_power(0.5);
  bad.phi2 = bad.phi1;
  const auto grow = run_case(bad);

  criterion(9, "pair conditions: stability and ordering",
            z316.stable && order_violations == 0 && !grow.stable,
            "Z316 drift " + fmt(z316.drift) + ", log-factor ordering violations " +
                std::to_string(order_violations) + ", growing-profile drift " +
                fmt(grow.drift));
}

void criterion_10_norm_ratios() {
  InequalityCase t9;
  t9.id = CaseId::T9_strong;
  t9.grid = &fx.grid;
  t9.w = &fx.ones;
  t9.p = 2.0;
  t9.s = kInfExponent;
  t9.family = fx.case_family;
  t9.seed = kSeed;
  t9.function_count = 50;
  t9.op = make_operator(OpKind::maximal, fx.grid);
  t9.phi1 = phi_power((0.5 - fx.grid.n) / t9.p);
  t9.phi2 = t9.phi1;
  const auto rep9 = run_case(t9);

  InequalityCase t15 = t9;
  t15.id = CaseId::T15;
  t15.w = &fx.w03;
  t15.s = 8.0;
  t15.op =
      make_operator(OpKind::singular_commutator, fx.grid, &fx.sign, &fx.log_b);
  t15.b = &fx.log_b;
  t15.phi1 = phi_kappa_weight(0.5, fx.w03);
  t15.phi2 = t15.phi1;
  const auto rep15 = run_case(t15);

  const bool ok = std::isfinite(rep9.c_emp) && rep9.c_emp > 0.0 &&
                  rep9.spread <= 1e3 && std::isfinite(rep15.c_emp) &&
                  rep15.c_emp > 0.0 && rep15.spread <= 1e3;
  criterion(10, "norm-to-norm ratios over 50 functions", ok,
            "averaging-sup C " + fmt(rep9.c_emp) + " spread " + fmt(rep9.spread) +
                "; commutator C " + fmt(rep15.c_emp) + " spread " +
                fmt(rep15.spread));
}

void criterion_11_oscillation_battery() {
  const double star = bmo_norm(fx.log_b, fx.family, fx.grid);
  GridFunction shifted(fx.log_b);
  for (double& v : shifted) v += 5.0;
  const double translation_gap =
      rel(bmo_norm(shifted, fx.family, fx.grid), star);

  const auto jn = jn_lp_equivalence(fx.log_b, fx.w03, 2.0, fx.family, fx.grid);
  const Grid fine = make_grid(1, 1.0, fx.grid.spacing / 2.0);
  const auto jn_fine = jn_lp_equivalence(sample_log_abs(fine),
                                         make_power_weight(fine, 0.3), 2.0,
                                         make_ball_family(fine, 32), fine);
  const double jn_drift = rel(jn.lp_ratio, jn_fine.lp_ratio);

  // slope of the shifted-mean growth against 1 + ln(r2/r1)
  const Vec origin = fx.grid.center(fx.grid.cells_per_axis / 2);
  const double r1 = 4.0 * fx.grid.spacing;
  std::vector<double> xs, ys;
  for (int k = 1; k <= 5; ++k) {
    const auto res = ball_shift_bound(fx.log_b, fx.ones, 1.0, origin, r1,
                                      r1 * std::pow(2.0, k), fx.grid, star);
    xs.push_back(1.0 + std::fabs(std::log(r1 / (r1 * std::pow(2.0, k)))));
    ys.push_back(res.lhs);
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = intercept + slope * xs[i];
    ss_res += (ys[i] - f) * (ys[i] - f);
    ss_tot += ys[i] * ys[i];
  }
  const double residual = std::sqrt(ss_res / ss_tot);

  criterion(11, "oscillation battery",
            translation_gap <= 1e-12 && jn.lp_ratio >= 1.0 - 1e-12 &&
                jn_drift <= 0.10 && residual <= 0.10 && slope > 0.0,
            "translation gap " + fmt(translation_gap) + ", ratio " +
                fmt(jn.lp_ratio) + " drift " + fmt(jn_drift) +
                ", log-fit residual " + fmt(residual) + " slope/norm " +
                fmt(slope / star));
}

void criterion_12_determinism() {
#ifdef MORREYKIT_CLI_PATH
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "morreykit_acceptance";
  const fs::path a = base / "run_a";
  const fs::path b = base / "run_b";
  fs::remove_all(base);
  fs::create_directories(a);
  fs::create_directories(b);
  const std::string cli = MORREYKIT_CLI_PATH;
  const std::string cmd_a = cli + " suite --preset paper-core --seed 42 --out " +
                            a.string() + " > /dev/null 2>&1";
  const std::string cmd_b = cli + " suite --preset paper-core --seed 42 --out " +
                            b.string() + " > /dev/null 2>&1";
  const int rc_a = std::system(cmd_a.c_str());
  const int rc_b = std::system(cmd_b.c_str());
  auto slurp = [](const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    return std::string{std::istreambuf_iterator<char>(is),
                       std::istreambuf_iterator<char>()};
  };
  const std::string json_a = slurp(a / "summary.json");
  const bool identical = !json_a.empty() && json_a == slurp(b / "summary.json") &&
                         slurp(a / "cases.csv") == slurp(b / "cases.csv");
  criterion(12, "suite reruns are byte-identical",
            rc_a == 0 && rc_b == 0 && identical,
            "exit codes " + std::to_string(rc_a) + "/" + std::to_string(rc_b) +
                ", summary bytes " + std::to_string(json_a.size()));
#else
  criterion(12, "suite reruns are byte-identical", false, "CLI path not wired");
#endif
}

}  // namespace

int main() {
  criterion_1_muckenhoupt_exactness();
  criterion_2_doubling();
  criterion_3_reductions();
  criterion_4_operator_identities();
  criterion_5_oracles();
  criterion_6_square_function_size();
  criterion_7_local_lemmas();
  criterion_8_weak_type();
  criterion_9_pair_conditions();
  criterion_10_norm_ratios();
  criterion_11_oscillation_battery();
  criterion_12_determinism();

  if (g_failures == 0) {
    std::printf("all 12 acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", g_failures);
  return 1;
}
