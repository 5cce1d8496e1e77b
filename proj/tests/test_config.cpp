#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "morreykit/config.hpp"
#include "morreykit/errors.hpp"
#include "morreykit/report_io.hpp"
#include "morreykit/runner.hpp"

using namespace morreykit;

namespace {

const char* kSample = R"(
# experiment fixture
seed = 7
out_dir = "reports"
grid { n = 1  L = 1.0  h = 0.0078125 }
kernel { name = "sign"  s = 8 }
weight { kind = "power"  alpha = 0.3 }
f { kind = "bump"  center = 0.25  width = 0.5 }
b { kind = "log_abs" }
space { p = 2  s = 8  kappa = 0.5 }
phi1 { form = "kappa_weight"  kappa = 0.5 }
phi2 { form = "kappa_weight"  kappa = 0.5 }
family { stride = 32  r_max = 0.0625 }
operator { kind = "singular" }
verify { cases = [L2-strong, L2-weak]  functions = 8  ceiling = 1000 }
)";

std::filesystem::path temp_dir(const std::string& leaf) {
  const auto dir = std::filesystem::temp_directory_path() / leaf;
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  REQUIRE(is.good());
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("config parsing") {
  const auto root = parse_config(kSample);
  CHECK(root->get_int("seed") == 7);
  CHECK(root->get_string("out_dir") == "reports");
  const ConfigNode& g = root->require_section("grid");
  CHECK(g.get_int("n") == 1);
  CHECK(g.get_double("h") == doctest::Approx(0.0078125));
  const ConfigNode& v = root->require_section("verify");
  const auto cases = v.get_list("cases");
  REQUIRE(cases.size() == 2);
  CHECK(cases[0] == "L2-strong");
  CHECK(cases[1] == "L2-weak");
}

TEST_CASE("config rejects malformed input with line positions") {
  CHECK_THROWS_AS(parse_config("grid { n = }"), config_error);
  CHECK_THROWS_AS(parse_config("grid { n = 1"), config_error);
  CHECK_THROWS_AS(parse_config("a = 1\na = 2"), config_error);
  CHECK_THROWS_AS(parse_config("a = \"unterminated"), config_error);
  try {
    parse_config("a = 1\n\nb @ 2");
  } catch (const config_error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("unknown keys are rejected after the build") {
  const auto root = parse_config("grid { n = 1 L = 1 h = 0.5 }\nmystery = 3");
  RunOptions opt;
  CHECK_THROWS_AS(build_experiment(*root, opt), config_error);
  try {
    const auto root2 = parse_config("grid { n = 1 L = 1 h = 0.5 typo = 2 }");
    build_experiment(*root2, opt);
    FAIL("expected rejection");
  } catch (const config_error& e) {
    CHECK(std::string(e.what()).find("typo") != std::string::npos);
  }
}

TEST_CASE("experiment building") {
  const auto root = parse_config(kSample);
  RunOptions opt;
  const auto e = build_experiment(*root, opt);
  CHECK(e->grid.cell_count() == 256);
  CHECK(e->kernel.has_value());
  CHECK(e->kernel->name == "sign");
  CHECK(e->w.power.has_value());
  CHECK(e->p == doctest::Approx(2.0));
  CHECK(e->phi1.has_value());
  CHECK(e->op.has_value());
  CHECK(e->case_names.size() == 2);
  CHECK(e->function_count == 8);
  CHECK(e->seed == 7);
  CHECK(e->out_dir == "reports");

  RunOptions with_seed;
  with_seed.seed_override = 99;
  with_seed.out_dir_override = "/tmp/elsewhere";
  const auto e2 = build_experiment(*parse_config(kSample), with_seed);
  CHECK(e2->seed == 99);
  CHECK(e2->out_dir == "/tmp/elsewhere");
}

TEST_CASE("csv column reader") {
  const auto dir = temp_dir("morreykit_cfg_test");
  const auto path = dir / "col.csv";
  std::ofstream os(path);
  os << "# comment\nvalue,extra\n1.5,9\n2.5,9\n-3.25\n";
  os.close();
  const auto col = read_csv_column(path.string());
  REQUIRE(col.size() == 3);
  CHECK(col[0] == doctest::Approx(1.5));
  CHECK(col[2] == doctest::Approx(-3.25));
}

TEST_CASE("verify runner emits deterministic reports") {
  const auto dir_a = temp_dir("morreykit_verify_a");
  const auto dir_b = temp_dir("morreykit_verify_b");
  const auto cfg = temp_dir("morreykit_cfg") / "exp.conf";
  std::ofstream os(cfg);
  os << kSample;
  os.close();

  RunOptions opt_a;
  opt_a.config_path = cfg.string();
  opt_a.out_dir_override = dir_a.string();
  CHECK(run_verify(opt_a) == 0);

  RunOptions opt_b = opt_a;
  opt_b.out_dir_override = dir_b.string();
  CHECK(run_verify(opt_b) == 0);

  CHECK(slurp(dir_a / "verify.json") == slurp(dir_b / "verify.json"));
  CHECK(slurp(dir_a / "verify.csv") == slurp(dir_b / "verify.csv"));
  CHECK(slurp(dir_a / "verify.json").find("\"satisfied\":true") !=
        std::string::npos);
}

TEST_CASE("gate violations surface as gate errors from the runner") {
  const auto cfg = temp_dir("morreykit_cfg") / "gate.conf";
  std::ofstream os(cfg);
  // s' = 3 > p = 2 violates the strong-branch hypothesis
  os << R"(
grid { n = 1  L = 1.0  h = 0.03125 }
kernel { name = "sign"  s = 1.5 }
weight { kind = "power"  alpha = 0.3 }
f { kind = "bump"  center = 0.25  width = 0.5 }
space { p = 2  s = 1.5 }
family { stride = 8  r_max = 0.125 }
operator { kind = "singular" }
verify { cases = [L2-strong] }
)";
  os.close();
  RunOptions opt;
  opt.config_path = cfg.string();
  opt.out_dir_override = temp_dir("morreykit_gate_out").string();
  CHECK_THROWS_AS(run_verify(opt), gate_error);
}

TEST_CASE("json and csv formatting fixes the byte layout") {
  JsonWriter j;
  j.begin_object().field("a", 0.1).field("b", true).field("c", "x\"y");
  j.begin_array("list").value(1.0).value(2.0).end_array();
  j.end_object();
  CHECK(j.str() ==
        "{\"a\":0.10000000000000001,\"b\":true,\"c\":\"x\\\"y\","
        "\"list\":[1,2]}");

  CsvWriter csv({"x", "y"});
  csv.row({CsvWriter::cell(0.5), CsvWriter::cell(1.0 / 3.0)});
  CHECK(csv.str() == "x,y\n0.5,0.33333333333333331\n");
}
