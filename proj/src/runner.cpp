#include "morreykit/runner.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "morreykit/errors.hpp"
#include "morreykit/functions.hpp"
#include "morreykit/report_io.hpp"

namespace morreykit {

namespace {

std::string resolve_out_dir(const std::string& config_dir, const RunOptions& opt) {
  if (!opt.out_dir_override.empty()) return opt.out_dir_override;
  if (const char* env = std::getenv("MORREYKIT_OUT_DIR"); env && *env) return env;
  return config_dir;
}

GridFunction build_function(const ConfigNode& node, const Grid& grid,
                            std::uint64_t seed) {
  const std::string kind = node.get_string("kind");
  if (kind == "bump") {
    return sample_bump(grid, node.get_vec("center", Vec{}),
                       node.get_double("width"));
  }
  if (kind == "indicator") {
    return sample_indicator(
        grid, Ball{node.get_vec("center", Vec{}), node.get_double("radius")});
  }
  if (kind == "random_bandlimited") {
    return sample_bandlimited(
        grid, seed, static_cast<std::uint64_t>(node.get_int("stream", 0)),
        node.get_int("cutoff", 8));
  }
  if (kind == "log_abs") return sample_log_abs(grid);
  if (kind == "linear") return sample_linear(grid, node.get_double("slope", 1.0));
  if (kind == "table") {
    auto values = read_csv_column(node.get_string("csv"));
    if (static_cast<int>(values.size()) != grid.cell_count())
      throw config_error("function table size does not match the grid");
    return values;
  }
  throw config_error("unknown function kind '" + kind + "'");
}

PhiModel build_phi(const ConfigNode& node, const Weight& w) {
  const std::string form = node.get_string("form");
  if (form == "power") return phi_power(node.get_double("beta"));
  if (form == "kappa_weight") return phi_kappa_weight(node.get_double("kappa"), w);
  if (form == "inv_weight") return phi_inv_weight(w);
  if (form == "table") {
    std::ifstream is(node.get_string("csv"));
    if (!is) throw config_error("cannot open phi table");
    std::vector<std::pair<double, double>> entries;
    std::string line;
    while (std::getline(is, line)) {
      if (line.empty() || line[0] == '#') continue;
      const auto comma = line.find(',');
      if (comma == std::string::npos) continue;
      char* end = nullptr;
      const double r = std::strtod(line.c_str(), &end);
      if (end == line.c_str()) continue;
      const double v = std::strtod(line.c_str() + comma + 1, nullptr);
      entries.emplace_back(r, v);
    }
    return phi_table(std::move(entries));
  }
  throw config_error("unknown phi form '" + form + "'");
}

}  // namespace

std::unique_ptr<Experiment> build_experiment(const ConfigNode& root,
                                             const RunOptions& opt) {
  auto e = std::make_unique<Experiment>();
  e->seed = opt.seed_override.value_or(
      static_cast<std::uint64_t>(root.get_double("seed", 42)));
  e->out_dir = resolve_out_dir(root.get_string("out_dir", "out"), opt);

  const ConfigNode& g = root.require_section("grid");
  e->grid = make_grid(g.get_int("n"), g.get_double("L"), g.get_double("h"));
  g.ensure_all_consumed("grid.");

  if (const ConfigNode* k = root.section("kernel")) {
    e->quad = make_sphere_quadrature(e->grid.n, k->get_int("nodes", 256));
    const std::string name = k->get_string("name", "");
    if (!name.empty() && name != "csv") {
      e->kernel = make_named_kernel(name, e->quad);
    } else {
      e->kernel = make_kernel_from_values(e->quad,
                                          read_csv_column(k->get_string("csv")),
                                          k->get_double("s", 2.0));
    }
    if (k->has("s")) e->kernel->integrability_s = k->get_double("s");
    if (k->has("gamma")) e->kernel->lip_gamma = k->get_double("gamma");
  } else {
    e->quad = make_sphere_quadrature(e->grid.n);
  }

  if (const ConfigNode* wn = root.section("weight")) {
    const std::string kind = wn->get_string("kind", "constant");
    if (kind == "constant") {
      e->w = make_constant_weight(e->grid, wn->get_double("value", 1.0));
    } else if (kind == "power") {
      e->w = make_power_weight(e->grid, wn->get_double("alpha"),
                               wn->get_vec("center", Vec{}));
    } else if (kind == "table") {
      e->w = make_table_weight(e->grid, read_csv_column(wn->get_string("csv")));
    } else {
      throw config_error("unknown weight kind '" + kind + "'");
    }
  } else {
    e->w = make_constant_weight(e->grid);
  }

  if (const ConfigNode* fn = root.section("f"))
    e->f = build_function(*fn, e->grid, e->seed);
  if (const ConfigNode* bn = root.section("b"))
    e->b = build_function(*bn, e->grid, e->seed + 1);

  if (const ConfigNode* sp = root.section("space")) {
    e->p = sp->get_double("p", 2.0);
    e->s = sp->has("s") ? sp->get_double("s") : kInfExponent;
    e->kappa = sp->get_double("kappa", 0.5);
    e->lambda = sp->get_double("lambda", 0.0);
  }

  if (const ConfigNode* ph = root.section("phi1")) e->phi1 = build_phi(*ph, e->w);
  if (const ConfigNode* ph = root.section("phi2")) e->phi2 = build_phi(*ph, e->w);

  const ConfigNode* fam = root.section("family");
  const int stride = fam ? fam->get_int("stride", 16) : 16;
  const double r_min = fam ? fam->get_double("r_min", 0.0) : 0.0;
  const double r_max = fam ? fam->get_double("r_max", 0.0) : 0.0;
  e->family = make_ball_family(e->grid, stride, r_min, r_max);

  if (const ConfigNode* on = root.section("operator")) {
    const OpKind kind = op_kind_from_name(on->get_string("kind"));
    OperatorSpec spec;
    spec.kind = kind;
    spec.kernel = e->kernel ? &*e->kernel : nullptr;
    spec.symbol = e->b ? &*e->b : nullptr;
    if (on->has("radii")) {
      spec.radii = on->get_double_list("radii");
    } else {
      spec.radii = dyadic_radii(e->grid, e->grid.spacing,
                                on->get_double("r_max", 4.0 * e->grid.half_width));
    }
    validate_operator(spec, e->grid);
    e->op = spec;
  }

  if (const ConfigNode* v = root.section("verify")) {
    e->case_names = v->get_list("cases");
    if (v->lists.count("expect_unstable")) {
      for (const auto& name : v->get_list("expect_unstable"))
        e->expect_unstable.insert(name);
    }
    e->t_max = v->get_double("t_max", 0.0);
    e->ceiling = v->get_double("ceiling", 1e3);
    e->function_count = v->get_int("functions", 0);
  }

  root.ensure_all_consumed();
  return e;
}

namespace {

std::unique_ptr<Experiment> load(const RunOptions& opt) {
  if (opt.config_path.empty()) throw config_error("missing --config");
  const auto root = parse_config_file(opt.config_path);
  return build_experiment(*root, opt);
}

void append_center(std::vector<std::string>& cells, const Vec& c, int n) {
  cells.push_back(CsvWriter::cell(c.x));
  if (n == 2) cells.push_back(CsvWriter::cell(c.y));
}

std::vector<std::string> ball_header(int n, std::vector<std::string> tail) {
  std::vector<std::string> h{"center_x"};
  if (n == 2) h.push_back("center_y");
  h.push_back("radius");
  for (auto& t : tail) h.push_back(std::move(t));
  return h;
}

void write_norm_report(const NormReport& rep, int n, const std::string& dir,
                       const std::string& stem) {
  CsvWriter csv(ball_header(n, {"value"}));
  for (const auto& row : rep.per_ball) {
    std::vector<std::string> cells;
    append_center(cells, row.center, n);
    cells.push_back(CsvWriter::cell(row.radius));
    cells.push_back(CsvWriter::cell(row.value));
    csv.row(cells);
  }
  write_text_file(dir + "/" + stem + ".csv", csv.str());
}

void json_center(JsonWriter& j, const std::string& key, const Vec& c, int n) {
  j.begin_array(key).value(c.x);
  if (n == 2) j.value(c.y);
  j.end_array();
}

}  // namespace

int run_apply(const RunOptions& opt) {
  const auto e = load(opt);
  if (!e->op) throw config_error("apply: missing operator section");
  if (!e->f) throw config_error("apply: missing f section");
  const GridFunction out = apply(*e->op, *e->f, e->grid);

  std::vector<std::string> header{"x"};
  if (e->grid.n == 2) header.push_back("y");
  header.push_back("value");
  CsvWriter csv(header);
  double sup = 0.0;
  for (int i = 0; i < e->grid.cell_count(); ++i) {
    std::vector<std::string> cells;
    append_center(cells, e->grid.center(i), e->grid.n);
    cells.push_back(CsvWriter::cell(out[static_cast<std::size_t>(i)]));
    csv.row(cells);
    sup = std::max(sup, std::fabs(out[static_cast<std::size_t>(i)]));
  }
  write_text_file(e->out_dir + "/apply.csv", csv.str());

  JsonWriter j;
  j.begin_object()
      .field("schema", 1)
      .field("operator", op_kind_name(e->op->kind))
      .field("cells", e->grid.cell_count())
      .field("sup_abs", sup)
      .end_object();
  write_text_file(e->out_dir + "/apply.json", j.str());
  return 0;
}

int run_norm(const RunOptions& opt) {
  const auto e = load(opt);
  if (!e->f) throw config_error("norm: missing f section");
  if (!e->phi1) throw config_error("norm: missing phi1 section");
  const NormReport strong = generalized_weighted_morrey_norm(
      *e->f, e->p, *e->phi1, e->w, e->family, e->grid);
  const NormReport weak = weak_generalized_weighted_morrey_norm(
      *e->f, e->p, *e->phi1, e->w, e->family, e->grid);
  write_norm_report(strong, e->grid.n, e->out_dir, "norm");

  JsonWriter j;
  j.begin_object().field("schema", 1).field("p", e->p).field("value", strong.value);
  json_center(j, "argmax_center", strong.argmax_center, e->grid.n);
  j.field("argmax_radius", strong.argmax_radius)
      .field("weak_value", weak.value)
      .end_object();
  write_text_file(e->out_dir + "/norm.json", j.str());
  return 0;
}

int run_ap(const RunOptions& opt) {
  const auto e = load(opt);
  const bool p_is_one = e->p == 1.0;
  const ApReport rep = p_is_one
                           ? a1_characteristic(e->w, e->family, e->grid)
                           : ap_characteristic(e->w, e->p, e->family, e->grid);
  const AInfReport ainf = a_infinity_characteristic(e->w, e->family, e->grid);
  const DoublingReport doubling =
      doubling_check(e->w, p_is_one ? 2.0 : e->p, e->family, e->grid);

  CsvWriter csv(ball_header(e->grid.n, {"value", "cells"}));
  for (const auto& row : rep.per_ball) {
    std::vector<std::string> cells;
    append_center(cells, row.center, e->grid.n);
    cells.push_back(CsvWriter::cell(row.radius));
    cells.push_back(CsvWriter::cell(row.value));
    cells.push_back(std::to_string(row.cell_count));
    csv.row(cells);
  }
  write_text_file(e->out_dir + "/ap.csv", csv.str());

  JsonWriter j;
  j.begin_object()
      .field("schema", 1)
      .field("p", e->p)
      .field("characteristic", rep.characteristic);
  json_center(j, "argmax_center", rep.argmax.center, e->grid.n);
  j.field("argmax_radius", rep.argmax.radius)
      .field("skipped_small_balls", rep.skipped);
  j.key("a_infinity").begin_object().field("value", ainf.characteristic)
      .field("minimizing_p", ainf.minimizing_p);
  j.begin_array("per_p");
  for (const auto& [p, v] : ainf.per_p)
    j.begin_object().field("p", p).field("value", v).end_object();
  j.end_array().end_object();
  j.key("doubling").begin_object()
      .field("max_ratio", doubling.max_ratio)
      .field("bound", doubling.bound)
      .field("violations", doubling.violations)
      .field("skipped", doubling.skipped)
      .end_object();
  j.end_object();
  write_text_file(e->out_dir + "/ap.json", j.str());
  return 0;
}

int run_bmo(const RunOptions& opt) {
  const auto e = load(opt);
  if (!e->b) throw config_error("bmo: missing b section");
  const double star = bmo_norm(*e->b, e->family, e->grid);
  const double star_w = bmo_w_norm(*e->b, e->w, e->family, e->grid);
  const double jn_p = e->p > 1.0 ? e->p : 2.0;
  const JnEquivalenceReport jn =
      jn_lp_equivalence(*e->b, e->w, jn_p, e->family, e->grid);

  // log-growth sweep of the shifted ball mean, centered next to the origin
  const double r1 = 4.0 * e->grid.spacing;
  const Vec x = e->grid.center(e->grid.n == 1
                                   ? e->grid.cells_per_axis / 2
                                   : (e->grid.cells_per_axis / 2) *
                                             e->grid.cells_per_axis +
                                         e->grid.cells_per_axis / 2);
  CsvWriter csv({"k", "r2_over_r1", "lhs", "rhs", "c_fit"});
  for (int k = 1; k <= 5; ++k) {
    const double r2 = r1 * std::pow(2.0, k);
    if (std::fabs(x.x) + r2 > e->grid.half_width) break;
    const auto res =
        ball_shift_bound(*e->b, e->w, e->p, x, r1, r2, e->grid, star, false);
    csv.row({std::to_string(k), CsvWriter::cell(std::pow(2.0, k)),
             CsvWriter::cell(res.lhs), CsvWriter::cell(res.rhs),
             CsvWriter::cell(res.c_fit)});
  }
  write_text_file(e->out_dir + "/bmo_shift.csv", csv.str());

  JsonWriter j;
  j.begin_object()
      .field("schema", 1)
      .field("bmo_norm", star)
      .field("bmo_w_norm", star_w)
      .field("jn_p", jn_p)
      .field("jn_lp_value", jn.lp_value)
      .field("jn_lp_ratio", jn.lp_ratio)
      .field("jn_lp_w_ratio", jn.lp_w_ratio)
      .field("a_infinity", jn.a_inf)
      .field("degenerate", jn.degenerate)
      .end_object();
  write_text_file(e->out_dir + "/bmo.json", j.str());
  return 0;
}

namespace {

InequalityCase make_case(const Experiment& e, CaseId id) {
  InequalityCase c;
  c.id = id;
  c.grid = &e.grid;
  c.w = &e.w;
  c.p = e.p;
  c.s = e.s;
  if (e.phi1) c.phi1 = *e.phi1;
  if (e.phi2) c.phi2 = *e.phi2;
  c.family = e.family;
  c.t_max = e.t_max;
  c.ceiling = e.ceiling;
  c.seed = e.seed;
  c.function_count = e.function_count;
  if (e.function_count == 0 && e.f) c.f = *e.f;
  c.b = e.b ? &*e.b : nullptr;
  if (e.op) c.op = *e.op;
  return c;
}

void json_case(JsonWriter& j, const VerificationReport& rep,
               const std::string& expected, bool satisfied) {
  j.begin_object()
      .field("case", rep.case_label)
      .field("c_emp", rep.c_emp)
      .field("c_emp_doubled", rep.c_emp_doubled)
      .field("drift", rep.drift)
      .field("stable", rep.stable)
      .field("spread", rep.spread)
      .field("anomalies", rep.anomalies)
      .field("boundary_essinf", rep.boundary_essinf)
      .field("ceiling", rep.ceiling)
      .field("pass", rep.pass)
      .field("expected", expected)
      .field("satisfied", satisfied)
      .field("note", rep.note)
      .end_object();
}

}  // namespace

int run_verify(const RunOptions& opt) {
  const auto e = load(opt);
  if (e->case_names.empty()) throw config_error("verify: missing verify.cases");
  if (!e->op) throw config_error("verify: missing operator section");

  JsonWriter j;
  j.begin_object().field("schema", 1).field("seed", static_cast<long>(e->seed));
  j.begin_array("cases");
  CsvWriter csv(
      {"case", "function", "center_x", "center_y", "radius", "lhs", "rhs", "ratio"});
  bool all = true;
  for (const std::string& name : e->case_names) {
    const CaseId id = case_from_name(name);
    const VerificationReport rep = run_case(make_case(*e, id));
    const bool expect_unstable = e->expect_unstable.count(name) > 0;
    const bool satisfied = expect_unstable ? !rep.stable : rep.pass;
    all = all && satisfied;
    json_case(j, rep, expect_unstable ? "unstable" : "pass", satisfied);
    for (const auto& row : rep.rows) {
      csv.row({rep.case_label, std::to_string(row.function_index),
               CsvWriter::cell(row.center.x), CsvWriter::cell(row.center.y),
               CsvWriter::cell(row.radius), CsvWriter::cell(row.lhs),
               CsvWriter::cell(row.rhs), CsvWriter::cell(row.ratio)});
    }
  }
  j.end_array().field("all_satisfied", all).end_object();
  write_text_file(e->out_dir + "/verify.json", j.str());
  write_text_file(e->out_dir + "/verify.csv", csv.str());
  return all ? 0 : 1;
}

}  // namespace morreykit
