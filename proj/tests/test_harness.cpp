#include <cmath>

#include "doctest.h"
#include "morreykit/errors.hpp"
#include "morreykit/functions.hpp"
#include "morreykit/harness.hpp"

using namespace morreykit;

namespace {

double rel(double a, double b) {
  return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-300});
}

struct Setup {
  Grid grid = make_grid(1, 1.0, 1.0 / 256.0);
  SphereQuadrature quad = make_sphere_quadrature(1);
  SphereKernel sign = make_named_kernel("sign", quad);
  Weight w;
  Weight ones;
  GridFunction log_b;
  BallFamily family = make_ball_family(grid, 64, 0.0, 1.0 / 16.0);

  Setup() {
    w = make_power_weight(grid, 0.3);
    ones = make_constant_weight(grid);
    log_b = sample_log_abs(grid);
  }

  InequalityCase base_case(CaseId id) const {
    InequalityCase c;
    c.id = id;
    c.grid = &grid;
    c.w = &w;
    c.p = 2.0;
    c.s = 8.0;
    c.family = family;
    c.seed = 42;
    return c;
  }
};

}  // namespace

TEST_CASE("dyadic ladder construction") {
  const auto lad = dyadic_ladder(0.25, 4.0);
  REQUIRE(lad.size() == 5);
  CHECK(lad.front() == doctest::Approx(0.25));
  CHECK(lad.back() == doctest::Approx(4.0));
  // overshoot: the last node reaches past the horizon
  const auto lad2 = dyadic_ladder(0.3, 4.0);
  CHECK(lad2.back() >= 4.0);
  // at least one cell even when the start exceeds the horizon
  CHECK(dyadic_ladder(8.0, 4.0).size() == 2);
}

TEST_CASE("case name round trip") {
  for (const char* n : {"L2-strong", "L2-psmall", "L2-weak", "L5-strong",
                        "L5-psmall", "Z316", "Z317", "Z47", "Z48", "T9-strong",
                        "T9-weak", "T15", "LEM10", "STEP11", "STEP12"}) {
    CHECK(case_name(case_from_name(n)) == std::string(n));
  }
  CHECK_THROWS_AS(case_from_name("L99"), config_error);
}

TEST_CASE("local lemma: trivial, homogeneous and scale-invariant") {
  const Setup s;
  OperatorSpec op = make_operator(OpKind::singular, s.grid, &s.sign);

  // zero input: both sides vanish, no anomaly
  InequalityCase zero = s.base_case(CaseId::L2_strong);
  zero.op = op;
  zero.f.assign(static_cast<std::size_t>(s.grid.cell_count()), 0.0);
  const auto rep0 = lemma2_local(zero);
  CHECK(rep0.c_emp == 0.0);
  CHECK(rep0.anomalies == 0);
  CHECK(rep0.pass);

  // doubling f doubles both sides
  InequalityCase one = s.base_case(CaseId::L2_strong);
  one.op = op;
  one.f = sample_bump(s.grid, Vec{0.3, 0.0}, 0.2);
  const auto rep1 = lemma2_local(one);
  InequalityCase two = one;
  for (double& v : two.f) v *= 2.0;
  const auto rep2 = lemma2_local(two);
  REQUIRE(rep1.rows.size() == rep2.rows.size());
  for (std::size_t i = 0; i < rep1.rows.size(); ++i) {
    if (rep1.rows[i].ratio == 0.0) continue;
    CHECK(rel(rep1.rows[i].ratio, rep2.rows[i].ratio) <= 1e-12);
  }

  // scaling the weight moves both sides identically
  Setup scaled;
  scaled.w = make_power_weight(scaled.grid, 0.3, Vec{}, 5.0);
  InequalityCase three = scaled.base_case(CaseId::L2_strong);
  three.op = make_operator(OpKind::singular, scaled.grid, &scaled.sign);
  three.f = one.f;
  const auto rep3 = lemma2_local(three);
  REQUIRE(rep1.rows.size() == rep3.rows.size());
  for (std::size_t i = 0; i < rep1.rows.size(); ++i) {
    if (rep1.rows[i].ratio == 0.0) continue;
    CHECK(rel(rep1.rows[i].ratio, rep3.rows[i].ratio) <= 1e-10);
  }
}

TEST_CASE("local lemma: far-field inputs stay bounded") {
  const Setup s;
  OperatorSpec op = make_operator(OpKind::singular, s.grid, &s.sign);
  InequalityCase c = s.base_case(CaseId::L2_strong);
  c.op = op;
  c.function_count = 24;
  const auto rep = lemma2_local(c);
  CHECK(rep.c_emp > 0.0);
  CHECK(rep.c_emp < 1e3);
  CHECK(rep.anomalies == 0);
  CHECK(rep.stable);
  CHECK(!rep.note.empty());

  // enlarging the horizon only grows the tail integral
  InequalityCase wide = c;
  wide.t_max = 8.0;
  const auto rep_wide = lemma2_local(wide);
  REQUIRE(rep.rows.size() == rep_wide.rows.size());
  for (std::size_t i = 0; i < rep.rows.size(); ++i)
    CHECK(rep_wide.rows[i].rhs >= rep.rows[i].rhs * (1.0 - 1e-12));
  CHECK(rep_wide.c_emp <= rep.c_emp * (1.0 + 1e-12));
}

TEST_CASE("weak rows never exceed strong rows") {
  const Setup s;
  OperatorSpec op = make_operator(OpKind::singular, s.grid, &s.sign);
  InequalityCase c = s.base_case(CaseId::L2_strong);
  c.op = op;
  c.function_count = 12;
  const auto strong = lemma2_local(c);
  c.id = CaseId::L2_weak;
  const auto weak = lemma2_local(c);
  REQUIRE(strong.rows.size() == weak.rows.size());
  for (std::size_t i = 0; i < strong.rows.size(); ++i)
    CHECK(weak.rows[i].ratio <= strong.rows[i].ratio * (1.0 + 1e-12));
}

TEST_CASE("commutator lemma") {
  const Setup s;
  OperatorSpec op =
      make_operator(OpKind::singular_commutator, s.grid, &s.sign, &s.log_b);
  InequalityCase c = s.base_case(CaseId::L5_strong);
  c.op = op;
  c.b = &s.log_b;
  c.f = sample_bump(s.grid, Vec{-0.3, 0.0}, 0.2);
  const auto rep = lemma5_local(c);
  CHECK(rep.c_emp > 0.0);
  CHECK(rep.anomalies == 0);

  // replacing b by b + const changes neither side beyond rounding
  Setup shifted;
  shifted.log_b = s.log_b;
  for (double& v : shifted.log_b) v += 3.0;
  OperatorSpec op2 = make_operator(OpKind::singular_commutator, shifted.grid,
                                   &shifted.sign, &shifted.log_b);
  InequalityCase c2 = shifted.base_case(CaseId::L5_strong);
  c2.op = op2;
  c2.b = &shifted.log_b;
  c2.f = c.f;
  const auto rep_shift = lemma5_local(c2);
  REQUIRE(rep.rows.size() == rep_shift.rows.size());
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    if (rep.rows[i].ratio == 0.0) continue;
    CHECK(rel(rep.rows[i].ratio, rep_shift.rows[i].ratio) <= 1e-9);
  }

  // tripling b scales both sides; the kernel-form ratio drifts only by
  // rounding
  Setup tripled;
  tripled.log_b = s.log_b;
  for (double& v : tripled.log_b) v *= 3.0;
  OperatorSpec op3 = make_operator(OpKind::singular_commutator, tripled.grid,
                                   &tripled.sign, &tripled.log_b);
  InequalityCase c3 = tripled.base_case(CaseId::L5_strong);
  c3.op = op3;
  c3.b = &tripled.log_b;
  c3.f = c.f;
  const auto rep_scaled = lemma5_local(c3);
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    if (rep.rows[i].ratio == 0.0) continue;
    CHECK(rel(rep.rows[i].ratio, rep_scaled.rows[i].ratio) <= 1e-10);
  }

  // constant symbol: zero operator against a zero oscillation bound
  GridFunction flat(static_cast<std::size_t>(s.grid.cell_count()), 2.0);
  OperatorSpec op4 = make_operator(OpKind::singular_commutator, s.grid, &s.sign,
                                   &flat);
  InequalityCase c4 = s.base_case(CaseId::L5_strong);
  c4.op = op4;
  c4.b = &flat;
  c4.f = c.f;
  const auto rep_flat = lemma5_local(c4);
  CHECK(rep_flat.c_emp <= 1e-9);
}

TEST_CASE("exponent gates raise gate errors naming the hypothesis") {
  const Setup s;
  OperatorSpec op = make_operator(OpKind::singular, s.grid, &s.sign);

  InequalityCase bad_p = s.base_case(CaseId::L2_strong);
  bad_p.op = op;
  bad_p.p = 1.0;
  bad_p.f = sample_bump(s.grid, Vec{0.0, 0.0}, 0.2);
  CHECK_THROWS_AS(lemma2_local(bad_p), gate_error);

  InequalityCase bad_s = s.base_case(CaseId::L2_strong);
  bad_s.op = op;
  bad_s.s = 1.5;  // s' = 3 > p = 2
  bad_s.f = bad_p.f;
  CHECK_THROWS_AS(lemma2_local(bad_s), gate_error);

  InequalityCase bad_ps = s.base_case(CaseId::L2_psmall);
  bad_ps.op = op;
  bad_ps.s = kInfExponent;
  bad_ps.f = bad_p.f;
  CHECK_THROWS_AS(lemma2_local(bad_ps), gate_error);

  InequalityCase z = s.base_case(CaseId::Z316);
  z.p = 1.0;
  z.phi1 = phi_power(-0.25);
  z.phi2 = z.phi1;
  CHECK_THROWS_AS(zygmund_condition(z), gate_error);

  InequalityCase t15 = s.base_case(CaseId::T15);
  t15.op = op;  // not a commutator
  t15.b = &s.log_b;
  t15.phi1 = phi_power(-0.25);
  t15.phi2 = t15.phi1;
  t15.f = bad_p.f;
  CHECK_THROWS_AS(boundedness_ratio(t15), gate_error);

  try {
    lemma2_local(bad_s);
  } catch (const gate_error& e) {
    CHECK(std::string(e.what()).find("s' <= p") != std::string::npos);
  }
}

TEST_CASE("pair conditions") {
  const Setup s;
  InequalityCase c = s.base_case(CaseId::Z316);
  c.phi1 = phi_kappa_weight(0.5, s.w);
  c.phi2 = c.phi1;
  const auto z316 = zygmund_condition(c);
  CHECK(z316.c_emp > 0.0);
  CHECK(z316.stable);

  c.id = CaseId::Z47;
  const auto z47 = zygmund_condition(c);
  REQUIRE(z316.rows.size() == z47.rows.size());
  for (std::size_t i = 0; i < z316.rows.size(); ++i)
    CHECK(z47.rows[i].ratio >= z316.rows[i].ratio * (1.0 - 1e-12));

  // growing profile: flagged unstable under horizon doubling
  InequalityCase grow = s.base_case(CaseId::Z316);
  grow.w = &s.ones;
  grow.phi1 = phi_power(0.5);
  grow.phi2 = grow.phi1;
  const auto bad = zygmund_condition(grow);
  CHECK(!bad.stable);
  CHECK(bad.drift > 0.10);

  // mixed-norm variants run under their own gates
  InequalityCase z317 = s.base_case(CaseId::Z317);
  z317.s = 4.0;
  z317.phi1 = phi_kappa_weight(0.5, s.w);
  z317.phi2 = z317.phi1;
  const auto rep317 = zygmund_condition(z317);
  CHECK(rep317.c_emp > 0.0);
  CHECK(std::isfinite(rep317.c_emp));
}

TEST_CASE("norm-to-norm ratios") {
  const Setup s;
  InequalityCase c = s.base_case(CaseId::T9_strong);
  c.w = &s.ones;
  c.s = kInfExponent;
  c.op = make_operator(OpKind::maximal, s.grid);
  c.phi1 = phi_power(-0.25);
  c.phi2 = c.phi1;
  c.function_count = 12;
  const auto rep = boundedness_ratio(c);
  CHECK(rep.c_emp > 0.0);
  CHECK(rep.c_emp < 1e3);
  CHECK(rep.stable);
  CHECK(rep.pass);

  // ratios ignore input scaling
  InequalityCase single = c;
  single.function_count = 0;
  single.f = sample_bump(s.grid, Vec{0.2, 0.0}, 0.3);
  const auto one = boundedness_ratio(single);
  for (double& v : single.f) v *= 7.0;
  const auto seven = boundedness_ratio(single);
  REQUIRE(one.rows.size() == seven.rows.size());
  CHECK(rel(one.rows[0].ratio, seven.rows[0].ratio) <= 1e-12);

  // constant symbol: commutator ratios degenerate to the trivial pass
  GridFunction flat(static_cast<std::size_t>(s.grid.cell_count()), 1.0);
  InequalityCase t15 = s.base_case(CaseId::T15);
  t15.op = make_operator(OpKind::singular_commutator, s.grid, &s.sign, &flat);
  t15.b = &flat;
  t15.phi1 = phi_kappa_weight(0.5, s.w);
  t15.phi2 = t15.phi1;
  t15.f = sample_bump(s.grid, Vec{0.2, 0.0}, 0.3);
  const auto trivial = boundedness_ratio(t15);
  CHECK(trivial.c_emp == 0.0);
  CHECK(trivial.pass);
}

TEST_CASE("kernel norm bound is a finite-sum Hoelder instance") {
  const Setup s;
  const Ball ball{{0.25, 0.0}, 0.125};

  const auto flat = lemma10_check(s.sign, s.ones, 2.0, 4.0, ball, Vec{0.7, 0.0},
                                  s.grid);
  CHECK(flat.ratio <= 1.0 + 1e-10);

  for (const Vec y : {Vec{0.0, 0.0}, Vec{0.26, 0.0}, Vec{-0.9, 0.0}}) {
    const auto res = lemma10_check(s.sign, s.w, 2.0, 4.0, ball, y, s.grid);
    CHECK(res.ratio <= 1.0 + 1e-10);
    CHECK(res.ratio > 0.0);
    CHECK(res.gate_value >= 1.0 - 1e-12);
  }

  // s = inf route
  const auto res_inf =
      lemma10_check(s.sign, s.w, 2.0, kInfExponent, ball, Vec{0.0, 0.0}, s.grid);
  CHECK(res_inf.ratio <= 1.0 + 1e-10);

  CHECK_THROWS_AS(lemma10_check(s.sign, s.w, 4.0, 2.0, ball, Vec{}, s.grid),
                  gate_error);
}

TEST_CASE("proof steps decompose the composite bound") {
  const Setup s;
  OperatorSpec op = make_operator(OpKind::singular, s.grid, &s.sign);
  const GridFunction f = sample_bump(s.grid, Vec{0.3, 0.0}, 0.25);
  const BallFamily fam = make_ball_family(s.grid, 128, 0.0, 1.0 / 16.0);
  const auto rep = proof_step_suite(op, s.w, 2.0, f, fam, s.grid, 4.0);
  REQUIRE(!rep.rows.empty());
  CHECK(rep.all_consistent);
  for (const auto& row : rep.rows) {
    CHECK(row.fubini_gap <= 1e-12);
    CHECK(row.c40 <= row.c_op * row.c12 + row.c_ptw + 1e-9 * (1.0 + row.c40));
    CHECK(std::isfinite(row.c11));
  }

  // the weak-type constant only appears at p = 1
  const auto rep1 = proof_step_suite(op, s.w, 1.0, f, fam, s.grid, 4.0);
  bool any315 = false;
  for (const auto& row : rep1.rows) any315 = any315 || row.c315 > 0.0;
  CHECK(any315);
}

TEST_CASE("run_case dispatch") {
  const Setup s;
  InequalityCase c = s.base_case(CaseId::LEM10);
  c.s = 4.0;
  c.op = make_operator(OpKind::singular, s.grid, &s.sign);
  const auto rep = run_case(c);
  CHECK(rep.case_label == "LEM10");
  CHECK(rep.c_emp <= 1.0 + 1e-10);
  CHECK(rep.pass);

  InequalityCase st = s.base_case(CaseId::STEP12);
  st.op = c.op;
  st.f = sample_bump(s.grid, Vec{0.3, 0.0}, 0.25);
  st.family = make_ball_family(s.grid, 128, 0.0, 1.0 / 16.0);
  const auto rep12 = run_case(st);
  CHECK(rep12.case_label == "STEP12");
  CHECK(rep12.c_emp > 0.0);

  InequalityCase missing;
  CHECK_THROWS_AS(run_case(missing), config_error);
}
