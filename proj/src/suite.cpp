#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "morreykit/errors.hpp"
#include "morreykit/functions.hpp"
#include "morreykit/report_io.hpp"
#include "morreykit/rng.hpp"
#include "morreykit/runner.hpp"

namespace morreykit {

namespace {

struct Check {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool pass = false;
};

struct SuiteRecorder {
  std::vector<Check> checks;
  struct CaseEntry {
    VerificationReport rep;
    std::string expected;
    bool satisfied = false;
  };
  std::vector<CaseEntry> cases;
  bool all_pass = true;

  void check_le(const std::string& name, double value, double limit) {
    const bool ok = value <= limit;
    checks.push_back({name, value, limit, ok});
    all_pass = all_pass && ok;
  }
  void check_count(const std::string& name, int violations) {
    check_le(name, static_cast<double>(violations), 0.0);
  }
  void add_case(VerificationReport rep, bool expect_unstable) {
    CaseEntry e;
    e.expected = expect_unstable ? "unstable" : "pass";
    e.satisfied = expect_unstable ? !rep.stable : rep.pass;
    all_pass = all_pass && e.satisfied;
    e.rep = std::move(rep);
    cases.push_back(std::move(e));
  }
};

double rel_gap(double a, double b) {
  const double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
  return std::fabs(a - b) / scale;
}

// Shared fixtures of the battery: unit box, dyadic spacing, rough kernel,
// power weight, log symbol.
struct Fixture {
  Grid grid = make_grid(1, 1.0, 1.0 / 256.0);
  SphereQuadrature quad = make_sphere_quadrature(1);
  SphereKernel sign = make_named_kernel("sign", quad);
  SphereKernel one = make_named_kernel("one", quad);
  Weight w03;
  Weight w05;
  Weight ones;
  GridFunction log_b;
  BallFamily norm_family = make_ball_family(grid, 16);
  // balls well inside the box, where the local estimates live
  BallFamily case_family =
      make_ball_family(grid, 64, 0.0, 0.0625 * grid.half_width);

  Fixture() {
    w03 = make_power_weight(grid, 0.3);
    w05 = make_power_weight(grid, 0.5);
    ones = make_constant_weight(grid);
    log_b = sample_log_abs(grid);
  }
};

void weights_block(SuiteRecorder& R, const Fixture& fx) {
  for (double p : {1.5, 2.0, 4.0}) {
    const double c = ap_characteristic(fx.ones, p, fx.norm_family, fx.grid)
                         .characteristic;
    R.check_le("ap_unit_p" + std::to_string(p).substr(0, 4), std::fabs(c - 1.0),
               1e-12);
  }
  const double c2 =
      ap_characteristic(fx.w05, 2.0, fx.norm_family, fx.grid).characteristic;
  const Weight dual = dual_weight(fx.w05, 2.0);
  const double cd =
      ap_characteristic(dual, 2.0, fx.norm_family, fx.grid).characteristic;
  R.check_le("ap_dual_identity", rel_gap(cd, c2), 1e-10);

  const DoublingReport dbl = doubling_check(fx.w03, 2.0, fx.norm_family, fx.grid);
  R.check_count("doubling_violations", dbl.violations);

  const double ainf =
      a_infinity_characteristic(fx.w05, fx.norm_family, fx.grid).characteristic;
  R.check_le("ainf_le_a2", ainf, c2 * (1.0 + 1e-12));

  const auto hold =
      holder_identity_suite(fx.w05, 2.0, 4.0, Ball{Vec{0.0, 0.0}, 0.5}, fx.grid);
  R.check_le("holder_char_ge_1", 1.0 - hold.char_root, 1e-12);
  R.check_le("holder_id7", rel_gap(hold.id7_lhs, hold.id7_rhs), 1e-10);
  R.check_le("holder_id8", rel_gap(hold.id8_lhs, hold.id8_rhs), 1e-10);
  R.check_le("holder_id9", rel_gap(hold.id9_lhs, hold.id9_rhs), 1e-10);
  R.check_le("holder_inf_identity", rel_gap(hold.inf_lhs, hold.inf_rhs), 1e-14);

  const auto subset = subset_lower_bound_check(
      fx.w03, 2.0, ap_characteristic(fx.w03, 2.0, fx.norm_family, fx.grid).characteristic,
      Ball{Vec{fx.grid.spacing / 2.0, 0.0}, 4.0 * fx.grid.spacing}, fx.grid);
  R.check_count("subset_power_form_violations", subset.violations_power_form);
}

void norms_block(SuiteRecorder& R, const Fixture& fx, std::uint64_t seed) {
  const GridFunction f = sample_bump(fx.grid, Vec{0.25, 0.0}, 0.5);
  const double p = 2.0;
  const double kappa = 0.5;

  const double gen_kappa = generalized_weighted_morrey_norm(
                               f, p, phi_kappa_weight(kappa, fx.w03), fx.w03,
                               fx.norm_family, fx.grid)
                               .value;
  const double direct_kappa =
      weighted_morrey_norm(f, p, kappa, fx.w03, fx.norm_family, fx.grid).value;
  R.check_le("reduction_kappa", rel_gap(gen_kappa, direct_kappa), 1e-10);

  const double gen_leb = generalized_weighted_morrey_norm(
                             f, p, phi_inv_weight(fx.w03), fx.w03,
                             fx.norm_family, fx.grid)
                             .value;
  const auto region = all_cells(fx.grid);
  const double direct_leb = lp_w_norm(f, fx.w03, p, region, fx.grid);
  R.check_le("reduction_lebesgue", rel_gap(gen_leb, direct_leb), 1e-10);

  const double lambda = 0.5;
  const double gen_classical =
      generalized_weighted_morrey_norm(
          f, p, phi_power((lambda - fx.grid.n) / p), fx.ones, fx.norm_family,
          fx.grid)
          .value;
  const double direct_classical =
      classical_morrey_norm(f, p, lambda, fx.norm_family, fx.grid).value;
  const double vol_factor =
      std::pow(lebesgue_ball_measure(fx.grid.n, 1.0), 1.0 / p);
  R.check_le("reduction_classical_vn",
             rel_gap(gen_classical * vol_factor, direct_classical), 0.05);

  const double weak_direct = weak_lp_w_norm(f, fx.ones, p, region, fx.grid);
  const double weak_rearr = weak_lp_norm_via_rearrangement(f, p, region, fx.grid);
  R.check_le("weak_dual_form", rel_gap(weak_direct, weak_rearr), 1e-12);

  int cheb_violations = 0;
  for (int i = 0; i < 20; ++i) {
    const GridFunction g = sample_bandlimited(fx.grid, seed, 100 + i, 6);
    if (weak_lp_w_norm(g, fx.w03, p, region, fx.grid) >
        lp_w_norm(g, fx.w03, p, region, fx.grid))
      ++cheb_violations;
  }
  R.check_count("chebyshev_violations", cheb_violations);
}

void operators_block(SuiteRecorder& R, const Fixture& fx, std::uint64_t seed) {
  const auto radii = dyadic_radii(fx.grid, fx.grid.spacing, 4.0);
  const GridFunction f = sample_bandlimited(fx.grid, seed, 11, 8);

  const GridFunction rough = rough_maximal(fx.one, f, fx.grid, radii);
  const GridFunction plain = maximal(f, fx.grid, radii, /*exclude_center=*/true);
  double gap = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    gap = std::max(gap, std::fabs(rough[i] - plain[i]));
  R.check_le("rough_maximal_reduction", gap, 0.0);

  GridFunction const_b(f.size(), 3.25);
  double sup_f = 0.0;
  for (double v : f) sup_f = std::max(sup_f, std::fabs(v));
  const auto comm_const = singular_commutator(const_b, fx.sign, f, fx.grid);
  double comm_sup = 0.0;
  for (double v : comm_const.value) comm_sup = std::max(comm_sup, std::fabs(v));
  R.check_le("commutator_const_zero", comm_sup, 1e-12 * std::max(1.0, sup_f));

  const auto comm_log = singular_commutator(fx.log_b, fx.sign, f, fx.grid);
  R.check_le("commutator_form_gap", comm_log.form_gap, 1e-10);

  // even profile around a cell center makes the odd-kernel sum cancel
  const int c0 = fx.grid.cells_per_axis / 2;  // center h/2
  const GridFunction sym = sample_bump(fx.grid, fx.grid.center(c0), 0.5);
  const GridFunction t_sym = singular(fx.sign, sym, fx.grid);
  R.check_le("odd_symmetry_zero", std::fabs(t_sym[static_cast<std::size_t>(c0)]),
             1e-12);

  const GridFunction g = sample_bandlimited(fx.grid, seed, 12, 5);
  GridFunction combo(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) combo[i] = 2.0 * f[i] - 3.0 * g[i];
  const GridFunction t_combo = singular(fx.sign, combo, fx.grid);
  const GridFunction tf = singular(fx.sign, f, fx.grid);
  const GridFunction tg = singular(fx.sign, g, fx.grid);
  double lin_gap = 0.0, lin_scale = 1.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double expect = 2.0 * tf[i] - 3.0 * tg[i];
    lin_gap = std::max(lin_gap, std::fabs(t_combo[i] - expect));
    lin_scale = std::max(lin_scale, std::fabs(expect));
  }
  R.check_le("singular_linearity", lin_gap / lin_scale, 1e-12);

  GridFunction sum(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) sum[i] = f[i] + g[i];
  const GridFunction m_sum = maximal(sum, fx.grid, radii);
  const GridFunction m_f = maximal(f, fx.grid, radii);
  const GridFunction m_g = maximal(g, fx.grid, radii);
  int sub_violations = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (m_sum[i] > m_f[i] + m_g[i]) ++sub_violations;
  R.check_count("maximal_sublinearity_violations", sub_violations);
}

void oracles_block(SuiteRecorder& R) {
  // wide box so the optimal averaging window around x = 3 is not clipped
  const Grid grid = make_grid(1, 8.0, 1.0 / 64.0);
  const auto radii = dyadic_radii(grid, grid.spacing, 2.0 * grid.half_width);
  const GridFunction chi = sample_indicator(grid, Ball{Vec{0.0, 0.0}, 1.0});
  const GridFunction m = maximal(chi, grid, radii);
  // nearest cell to x = 3
  int cell3 = 0;
  double best = 1e300;
  for (int i = 0; i < grid.cell_count(); ++i) {
    const double d = std::fabs(grid.center(i).x - 3.0);
    if (d < best) {
      best = d;
      cell3 = i;
    }
  }
  R.check_le("oracle_maximal_quarter",
             std::fabs(m[static_cast<std::size_t>(cell3)] - 0.25),
             2.0 * grid.spacing);

  const SphereQuadrature quad = make_sphere_quadrature(1);
  const SphereKernel sign = make_named_kernel("sign", quad);
  const GridFunction chi12 = sample_indicator(grid, Ball{Vec{1.5, 0.0}, 0.5});
  int cell0 = 0;
  best = 1e300;
  for (int i = 0; i < grid.cell_count(); ++i) {
    const double d = std::fabs(grid.center(i).x);
    if (d < best) {
      best = d;
      cell0 = i;
    }
  }
  const GridFunction t = singular(sign, chi12, grid);
  R.check_le("oracle_singular_log2",
             std::fabs(t[static_cast<std::size_t>(cell0)] + std::log(2.0)),
             5.0 * grid.spacing);
}

void size_condition_block(SuiteRecorder& R, const Fixture& fx, std::uint64_t seed) {
  OperatorSpec mu = make_operator(OpKind::marcinkiewicz, fx.grid, &fx.sign);
  OperatorSpec tbar = make_operator(OpKind::singular, fx.grid, &fx.sign);
  double worst_mu = 0.0;
  double worst_t = 0.0;
  const double L = fx.grid.half_width;
  for (int i = 0; i < 100; ++i) {
    SplitRng rng(seed, 500 + i);
    const Vec c{rng.next_in(-0.75 * L, -0.25 * L), 0.0};
    const double radius = rng.next_in(4.0 * fx.grid.spacing, 0.2 * L);
    const GridFunction f =
        i % 2 ? sample_indicator(fx.grid, Ball{c, radius})
              : sample_bump(fx.grid, c, radius);
    const double xpos = rng.next_in(0.25 * L, 0.75 * L);
    int cell = 0;
    double best = 1e300;
    for (int k = 0; k < fx.grid.cell_count(); ++k) {
      const double d = std::fabs(fx.grid.center(k).x - xpos);
      if (d < best) {
        best = d;
        cell = k;
      }
    }
    worst_mu = std::max(worst_mu, size_condition_check(mu, f, cell, fx.grid).ratio);
    worst_t = std::max(worst_t, size_condition_check(tbar, f, cell, fx.grid).ratio);
  }
  R.check_le("marcinkiewicz_size_ratio", worst_mu,
             (1.0 + 1e-6) / std::sqrt(2.0));
  R.check_le("singular_size_ratio", worst_t, 1.0 + 1e-12);
}

void cases_block(SuiteRecorder& R, const Fixture& fx, std::uint64_t seed) {
  InequalityCase base;
  base.grid = &fx.grid;
  base.w = &fx.w03;
  base.p = 2.0;
  base.s = 8.0;
  base.family = fx.case_family;
  base.ceiling = 1e3;
  base.seed = seed;
  base.function_count = 50;
  base.b = &fx.log_b;

  OperatorSpec sing = make_operator(OpKind::singular, fx.grid, &fx.sign);
  OperatorSpec sing_comm =
      make_operator(OpKind::singular_commutator, fx.grid, &fx.sign, &fx.log_b);

  // local lemma, strong and weak on identical inputs
  InequalityCase l2 = base;
  l2.id = CaseId::L2_strong;
  l2.op = sing;
  const VerificationReport rep_strong = run_case(l2);
  R.add_case(rep_strong, false);

  l2.id = CaseId::L2_weak;
  const VerificationReport rep_weak = run_case(l2);
  R.add_case(rep_weak, false);

  int weak_gt_strong = 0;
  for (std::size_t i = 0;
       i < std::min(rep_strong.rows.size(), rep_weak.rows.size()); ++i) {
    if (rep_weak.rows[i].ratio > rep_strong.rows[i].ratio * (1.0 + 1e-12))
      ++weak_gt_strong;
  }
  R.check_count("weak_le_strong_rows", weak_gt_strong);

  InequalityCase l2w1 = base;
  l2w1.id = CaseId::L2_weak;
  l2w1.p = 1.0;
  l2w1.op = sing;
  R.add_case(run_case(l2w1), false);

  // mixed-norm tails decay slowly, so certifying them needs a longer horizon
  InequalityCase l2ps = base;
  l2ps.id = CaseId::L2_psmall;
  l2ps.s = 4.0;
  l2ps.op = sing;
  l2ps.t_max = 16.0;
  R.add_case(run_case(l2ps), false);

  InequalityCase l5 = base;
  l5.id = CaseId::L5_strong;
  l5.op = sing_comm;
  R.add_case(run_case(l5), false);

  InequalityCase l5ps = base;
  l5ps.id = CaseId::L5_psmall;
  l5ps.s = 4.0;
  l5ps.op = sing_comm;
  l5ps.t_max = 16.0;
  R.add_case(run_case(l5ps), false);

  // pair conditions
  InequalityCase z = base;
  z.function_count = 0;
  z.f = sample_bump(fx.grid, Vec{0.25, 0.0}, 0.5);
  z.phi1 = phi_kappa_weight(0.5, fx.w03);
  z.phi2 = z.phi1;
  z.id = CaseId::Z316;
  const VerificationReport z316 = run_case(z);
  R.add_case(z316, false);
  z.id = CaseId::Z47;
  const VerificationReport z47 = run_case(z);
  R.add_case(z47, false);
  int z47_lt = 0;
  for (std::size_t i = 0; i < std::min(z316.rows.size(), z47.rows.size()); ++i)
    if (z47.rows[i].ratio < z316.rows[i].ratio * (1.0 - 1e-12)) ++z47_lt;
  R.check_count("z47_dominates_z316", z47_lt);

  InequalityCase zfail = base;
  zfail.function_count = 0;
  zfail.f = z.f;
  zfail.w = &fx.ones;
  zfail.phi1 = phi_power(0.5);
  zfail.phi2 = zfail.phi1;
  zfail.id = CaseId::Z316;
  R.add_case(run_case(zfail), /*expect_unstable=*/true);

  // norm-to-norm ratios
  InequalityCase t9 = base;
  t9.id = CaseId::T9_strong;
  t9.w = &fx.ones;
  t9.s = kInfExponent;
  t9.op = make_operator(OpKind::maximal, fx.grid);
  t9.phi1 = phi_power((0.5 - fx.grid.n) / t9.p);
  t9.phi2 = t9.phi1;
  R.add_case(run_case(t9), false);

  InequalityCase t9w = t9;
  t9w.id = CaseId::T9_weak;
  t9w.p = 1.0;
  t9w.phi1 = phi_power(0.5 - fx.grid.n);
  t9w.phi2 = t9w.phi1;
  R.add_case(run_case(t9w), false);

  InequalityCase t15 = base;
  t15.id = CaseId::T15;
  t15.op = sing_comm;
  t15.phi1 = phi_kappa_weight(0.5, fx.w03);
  t15.phi2 = t15.phi1;
  R.add_case(run_case(t15), false);

  InequalityCase lem10 = base;
  lem10.id = CaseId::LEM10;
  lem10.s = 4.0;
  lem10.op = sing;
  const VerificationReport lem10_rep = run_case(lem10);
  R.add_case(lem10_rep, false);
  R.check_le("lem10_holder_ratio", lem10_rep.c_emp, 1.0 + 1e-10);

  InequalityCase steps = base;
  steps.function_count = 0;
  steps.f = z.f;
  steps.op = sing;
  steps.family = make_ball_family(fx.grid, 128, 0.0, 0.0625);
  steps.id = CaseId::STEP11;
  R.add_case(run_case(steps), false);
  steps.id = CaseId::STEP12;
  R.add_case(run_case(steps), false);

  const ProofStepReport psr = proof_step_suite(sing, fx.w03, 2.0, steps.f,
                                               steps.family, fx.grid, 4.0);
  double max_fubini = 0.0;
  int inconsistent = 0;
  for (const auto& row : psr.rows) {
    max_fubini = std::max(max_fubini, row.fubini_gap);
    if (!row.consistent) ++inconsistent;
  }
  R.check_le("fubini_exchange_gap", max_fubini, 1e-12);
  R.check_count("step_consistency_violations", inconsistent);
}

void bmo_block(SuiteRecorder& R, const Fixture& fx) {
  const double star = bmo_norm(fx.log_b, fx.norm_family, fx.grid);
  GridFunction shifted(fx.log_b);
  for (double& v : shifted) v += 7.5;
  const double star_shift = bmo_norm(shifted, fx.norm_family, fx.grid);
  R.check_le("bmo_translation_invariance", rel_gap(star, star_shift), 1e-12);

  GridFunction scaled(fx.log_b);
  for (double& v : scaled) v *= -3.0;
  const double star_scaled = bmo_norm(scaled, fx.norm_family, fx.grid);
  R.check_le("bmo_scaling", rel_gap(star_scaled, 3.0 * star), 1e-12);

  const JnEquivalenceReport jn =
      jn_lp_equivalence(fx.log_b, fx.w03, 2.0, fx.norm_family, fx.grid);
  R.check_le("jn_ratio_ge_1", 1.0 - jn.lp_ratio, 1e-12);

  // one refinement halving h
  const Grid fine = make_grid(1, 1.0, fx.grid.spacing / 2.0);
  const BallFamily fine_family = make_ball_family(fine, 32);
  const GridFunction fine_b = sample_log_abs(fine);
  const Weight fine_w = make_power_weight(fine, 0.3);
  const double star_fine = bmo_norm(fine_b, fine_family, fine);
  R.check_le("bmo_log_refinement_drift", rel_gap(star, star_fine), 0.05);
  const JnEquivalenceReport jn_fine =
      jn_lp_equivalence(fine_b, fine_w, 2.0, fine_family, fine);
  R.check_le("jn_ratio_refinement_drift", rel_gap(jn.lp_ratio, jn_fine.lp_ratio),
             0.10);

  // log-growth of the shifted-mean oscillation; balls centered next to the
  // singularity of b, where the mean drifts logarithmically in the radius
  const double r1 = 4.0 * fx.grid.spacing;
  const Vec x = fx.grid.center(fx.grid.cells_per_axis / 2);
  std::vector<double> xs, ys;
  for (int k = 1; k <= 5; ++k) {
    const double r2 = r1 * std::pow(2.0, k);
    const auto res =
        ball_shift_bound(fx.log_b, fx.ones, 1.0, x, r1, r2, fx.grid, star, false);
    xs.push_back(1.0 + std::fabs(std::log(r1 / r2)));
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
    const double fit = intercept + slope * xs[i];
    ss_res += (ys[i] - fit) * (ys[i] - fit);
    ss_tot += ys[i] * ys[i];
  }
  R.check_le("shift_log_fit_residual", std::sqrt(ss_res / ss_tot), 0.10);
  R.check_le("shift_slope_positive", -slope / star, 0.0);
}

}  // namespace

int run_suite(const std::string& preset, const RunOptions& opt) {
  if (preset != "paper-core")
    throw config_error("suite: unknown preset '" + preset + "'");
  const std::uint64_t seed = opt.seed_override.value_or(42);
  std::string out_dir = opt.out_dir_override;
  if (out_dir.empty()) {
    if (const char* env = std::getenv("MORREYKIT_OUT_DIR"); env && *env)
      out_dir = env;
    else
      out_dir = "out";
  }

  Fixture fx;
  SuiteRecorder R;
  weights_block(R, fx);
  norms_block(R, fx, seed);
  operators_block(R, fx, seed);
  oracles_block(R);
  size_condition_block(R, fx, seed);
  cases_block(R, fx, seed);
  bmo_block(R, fx);

  JsonWriter j;
  j.begin_object()
      .field("schema", 1)
      .field("preset", preset)
      .field("seed", static_cast<long>(seed));
  j.begin_array("checks");
  for (const auto& c : R.checks) {
    j.begin_object()
        .field("name", c.name)
        .field("value", c.value)
        .field("limit", c.limit)
        .field("pass", c.pass)
        .end_object();
  }
  j.end_array();
  j.begin_array("cases");
  for (const auto& e : R.cases) {
    j.begin_object()
        .field("case", e.rep.case_label)
        .field("c_emp", e.rep.c_emp)
        .field("c_emp_doubled", e.rep.c_emp_doubled)
        .field("drift", e.rep.drift)
        .field("stable", e.rep.stable)
        .field("spread", e.rep.spread)
        .field("anomalies", e.rep.anomalies)
        .field("boundary_essinf", e.rep.boundary_essinf)
        .field("pass", e.rep.pass)
        .field("expected", e.expected)
        .field("satisfied", e.satisfied)
        .field("note", e.rep.note)
        .end_object();
  }
  j.end_array();
  j.field("all_pass", R.all_pass).end_object();
  write_text_file(out_dir + "/summary.json", j.str());

  CsvWriter csv({"case", "function", "center_x", "radius", "lhs", "rhs", "ratio"});
  for (const auto& e : R.cases) {
    for (const auto& row : e.rep.rows) {
      csv.row({e.rep.case_label, std::to_string(row.function_index),
               CsvWriter::cell(row.center.x), CsvWriter::cell(row.radius),
               CsvWriter::cell(row.lhs), CsvWriter::cell(row.rhs),
               CsvWriter::cell(row.ratio)});
    }
  }
  write_text_file(out_dir + "/cases.csv", csv.str());
  return R.all_pass ? 0 : 1;
}

}  // namespace morreykit
