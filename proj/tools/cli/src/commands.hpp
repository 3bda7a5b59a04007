#pragma once

#include "tula_cli/cli.hpp"
#include "tula/analysis.hpp"
#include "tula/dynamics.hpp"
#include "tula/targets.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tula::cli {

/// Bad flags or config contents; maps to the usage exit code.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TargetArgs {
  std::string name;
  int d = 2;
  ParamMap params;
  /// "auto" (the zoo transform), inline JSON, or a path to a JSON file.
  std::string transform = "auto";
};

struct Problem {
  TargetZooEntry entry;
  TransformedPotential tp;
  bool auto_transform = true;
};

Problem build_problem(const TargetArgs& a);

struct SampleArgs {
  TargetArgs target;
  std::string sampler = "tula";
  double gamma = 0.01;
  std::size_t steps = 1000;
  std::uint64_t seed = 0;
  std::size_t chains = 1;
  std::size_t thin = 1;
  std::string init = "gaussian";
  double init_scale = 0.0;
  std::optional<std::size_t> burn_in;
  std::vector<double> powers;
  std::vector<double> thresholds;
  std::string out_dir = "tula_out";
  nlohmann::json resolved_config;
};

struct CheckArgs {
  TargetArgs target;
  std::vector<std::string> assumptions;
  std::vector<std::string> candidates;  // name=value
  int grid_n = 512;
  double grid_max = 100.0;
};

struct LsiArgs {
  TargetArgs target;
  double r_max = 10.0;
  int grid = 4000;
  std::string out_dir;
};

struct ClassifyArgs {
  std::string assumption;
  double vartheta = 1.0;
  int d = 2;
  ParamMap params;
};

struct GradcheckArgs {
  TargetArgs target;
  std::size_t points = 1000;
  std::uint64_t seed = 0;
  double r_min = 0.05;
  double r_max = 10.0;
};

int cmd_sample(const SampleArgs& a, std::ostream& out);
int cmd_check(const CheckArgs& a, std::ostream& out);
int cmd_lsi(const LsiArgs& a, std::ostream& out);
int cmd_classify(const ClassifyArgs& a, std::ostream& out);
int cmd_gradcheck(const GradcheckArgs& a, std::ostream& out);

/// Maximum relative errors of the analytic gradient and Hessian eigenvalues
/// against five-point finite differences on random points.
struct GradcheckResult {
  std::size_t points = 0;
  double max_rel_error_gradient = 0.0;
  double max_rel_error_hessian = 0.0;
};
GradcheckResult gradient_check(const TransformedPotential& tp, std::size_t points,
                               std::uint64_t seed, double r_min, double r_max);

}  // namespace tula::cli
