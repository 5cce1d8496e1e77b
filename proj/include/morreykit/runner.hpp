#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "morreykit/config.hpp"
#include "morreykit/grid.hpp"
#include "morreykit/harness.hpp"
#include "morreykit/kernels.hpp"
#include "morreykit/operators.hpp"
#include "morreykit/spaces.hpp"
#include "morreykit/weights.hpp"

namespace morreykit {

/// All objects one experiment works with. Holds its own kernel/weight/symbol
/// storage; phi models and the operator point into it, so instances are
/// pinned (no copies).
struct Experiment {
  Grid grid;
  SphereQuadrature quad;
  std::optional<SphereKernel> kernel;
  Weight w;
  std::optional<GridFunction> f;
  std::optional<GridFunction> b;
  BallFamily family;
  double p = 2.0;
  double s = kInfExponent;
  double kappa = 0.5;
  double lambda = 0.0;
  std::optional<PhiModel> phi1;
  std::optional<PhiModel> phi2;
  std::optional<OperatorSpec> op;
  std::uint64_t seed = 42;
  std::string out_dir = "out";

  std::vector<std::string> case_names;
  std::set<std::string> expect_unstable;
  double t_max = 0.0;
  double ceiling = 1e3;
  int function_count = 0;

  Experiment() = default;
  Experiment(const Experiment&) = delete;
  Experiment& operator=(const Experiment&) = delete;
};

struct RunOptions {
  std::string config_path;
  std::string out_dir_override;  // CLI flag, wins over env and config
  std::optional<std::uint64_t> seed_override;
};

std::unique_ptr<Experiment> build_experiment(const ConfigNode& root,
                                             const RunOptions& opt);

int run_apply(const RunOptions& opt);
int run_norm(const RunOptions& opt);
int run_ap(const RunOptions& opt);
int run_bmo(const RunOptions& opt);
int run_verify(const RunOptions& opt);
int run_suite(const std::string& preset, const RunOptions& opt);

}  // namespace morreykit
