// Batch front end: deterministic experiment runner with CSV/JSON reports.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "morreykit/errors.hpp"
#include "morreykit/runner.hpp"

namespace {

struct CommonArgs {
  std::string config;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_config) {
  if (needs_config)
    cmd->add_option("--config", args.config, "experiment configuration file")
        ->required();
  cmd->add_option("--out", args.out_dir,
                  "output directory (overrides config and MORREYKIT_OUT_DIR)");
  cmd->add_option("--seed", args.seed, "seed override")
      ->each([&args](const std::string&) { args.seed_set = true; });
}

morreykit::RunOptions to_options(const CommonArgs& args) {
  morreykit::RunOptions opt;
  opt.config_path = args.config;
  opt.out_dir_override = args.out_dir;
  if (args.seed_set) opt.seed_override = args.seed;
  return opt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rough-kernel operator and weighted-norm verification toolkit"};
  app.require_subcommand(1);

  CommonArgs apply_args, norm_args, ap_args, bmo_args, verify_args, suite_args;
  std::string preset = "paper-core";

  add_common(app.add_subcommand("apply", "apply an operator to f"), apply_args, true);
  add_common(app.add_subcommand("norm", "ball-family norm report for f"), norm_args,
             true);
  add_common(app.add_subcommand("ap", "weight characteristic report"), ap_args, true);
  add_common(app.add_subcommand("bmo", "mean-oscillation report for b"), bmo_args,
             true);
  add_common(app.add_subcommand("verify", "run configured inequality cases"),
             verify_args, true);
  CLI::App* suite = app.add_subcommand("suite", "run a named preset battery");
  suite->add_option("--preset", preset, "preset name")->capture_default_str();
  add_common(suite, suite_args, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("apply")) return morreykit::run_apply(to_options(apply_args));
    if (app.got_subcommand("norm")) return morreykit::run_norm(to_options(norm_args));
    if (app.got_subcommand("ap")) return morreykit::run_ap(to_options(ap_args));
    if (app.got_subcommand("bmo")) return morreykit::run_bmo(to_options(bmo_args));
    if (app.got_subcommand("verify"))
      return morreykit::run_verify(to_options(verify_args));
    if (app.got_subcommand("suite"))
      return morreykit::run_suite(preset, to_options(suite_args));
  } catch (const morreykit::gate_error& e) {
    std::cerr << "gate violation: " << e.what() << "\n";
    return 3;
  } catch (const morreykit::config_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
