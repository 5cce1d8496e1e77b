#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"

namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(MORREYKIT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

fs::path write_config(const std::string& leaf, const std::string& body) {
  const fs::path dir = fs::temp_directory_path() / "morreykit_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / leaf;
  std::ofstream os(p);
  os << body;
  return p;
}

const char* kGoodVerify = R"(
grid { n = 1  L = 1.0  h = 0.03125 }
kernel { name = "sign"  s = 8 }
weight { kind = "power"  alpha = 0.3 }
space { p = 2  s = 8 }
family { stride = 8  r_max = 0.0625 }
operator { kind = "singular" }
verify { cases = [L2-strong]  functions = 4 }
)";

}  // namespace

TEST_CASE("cli exit codes") {
  const fs::path out = fs::temp_directory_path() / "morreykit_cli_test" / "out";

  // clean run
  const auto good = write_config("good.conf", kGoodVerify);
  CHECK(run_cli("verify --config " + good.string() + " --out " + out.string()) == 0);

  // unknown key: configuration error
  const auto bad_key = write_config("bad_key.conf",
                                    std::string(kGoodVerify) + "\nmystery = 1\n");
  CHECK(run_cli("verify --config " + bad_key.string() + " --out " + out.string()) ==
        2);

  // odd cell count: configuration error
  const auto bad_grid = write_config("bad_grid.conf", R"(
grid { n = 1  L = 1.0  h = 0.4 }
operator { kind = "maximal" }
f { kind = "log_abs" }
verify { cases = [L2-strong] }
)");
  CHECK(run_cli("verify --config " + bad_grid.string() + " --out " + out.string()) ==
        2);

  // exponent hypothesis violated: gate error
  std::string gate_cfg(kGoodVerify);
  const auto pos = gate_cfg.find("s = 8 }");
  gate_cfg.replace(pos, 7, "s = 1.25 }");
  const auto pos2 = gate_cfg.find("s = 8 }", pos);
  gate_cfg.replace(pos2, 7, "s = 1.25 }");
  const auto gate = write_config("gate.conf", gate_cfg);
  CHECK(run_cli("verify --config " + gate.string() + " --out " + out.string()) == 3);

  // missing config file
  CHECK(run_cli("verify --config /nonexistent.conf") == 2);

  // unknown preset
  CHECK(run_cli("suite --preset nope --out " + out.string()) == 2);
}
