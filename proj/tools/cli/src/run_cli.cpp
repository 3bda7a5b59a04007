#include "tula_cli/cli.hpp"

#include "commands.hpp"
#include "json_config.hpp"
#include "tula/errors.hpp"

#include <functional>
#include <ostream>

namespace tula::cli {
namespace {

void add_target_options(CLI::App* sub, TargetArgs& t) {
  sub->add_option("--target", t.name, "t, t{d}_{kappa}, example2..example6 or warmup")->required();
  sub->add_option("--d", t.d, "Dimension")->capture_default_str();
  for (const char* key : {"kappa", "beta", "b", "vartheta", "upsilon", "R"}) {
    const std::string k = key;
    sub->add_option_function<double>(
        "--" + k, [&t, k](double v) { t.params[k] = v; }, "Target parameter " + k);
  }
  sub->add_option("--transform", t.transform, "auto, inline JSON or a JSON file")
      ->capture_default_str();
}

void add_param(CLI::App* sub, ParamMap& params, const std::string& key) {
  sub->add_option_function<double>(
      "--" + key, [&params, key](double v) { params[key] = v; }, key);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app("Transformed unadjusted Langevin sampling and diagnostics", "tula");
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  app.set_config("--config", "", "JSON file of flag values; command-line flags win");
  app.config_formatter(std::make_shared<JsonConfig>(app));

  std::function<int()> action;

  SampleArgs sample;
  auto* s = app.add_subcommand("sample", "Run chains and write samples, summary and diagnostics");
  add_target_options(s, sample.target);
  s->add_option("--sampler", sample.sampler, "tula or ula");
  s->add_option("--gamma", sample.gamma, "Step size");
  s->add_option("--steps", sample.steps, "Steps per chain");
  s->add_option("--seed", sample.seed, "Base seed");
  s->add_option("--chains", sample.chains, "Independent chains");
  s->add_option("--thin", sample.thin, "Record every k-th step");
  s->add_option("--init", sample.init, "origin or gaussian");
  s->add_option("--init-scale", sample.init_scale, "Gaussian start scale (0 picks 1/sqrt(L))");
  s->add_option_function<std::size_t>(
      "--burn-in", [&](std::size_t v) { sample.burn_in = v; },
      "Recorded samples dropped per chain (default a tenth)");
  s->add_option("--powers", sample.powers, "Moments E|x|^p to compare");
  s->add_option("--thresholds", sample.thresholds, "Tail thresholds P(|x| > t) to compare");
  s->add_option("--out", sample.out_dir, "Output directory");
  s->callback([&] {
    sample.resolved_config = options_to_json(*s);
    action = [&] { return cmd_sample(sample, out); };
  });

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Verify the transform profile and assumptions A1-A5");
  add_target_options(c, check.target);
  c->add_option("--assumption", check.assumptions, "A1..A5 (default all)");
  c->add_option("--candidate", check.candidates, "Fixed constant as name=value, e.g. L=8");
  c->add_option("--grid-n", check.grid_n, "Radii in the check grid");
  c->add_option("--grid-max", check.grid_max, "Largest radius in the check grid");
  c->callback([&] { action = [&] { return cmd_check(check, out); }; });

  LsiArgs lsi;
  auto* l = app.add_subcommand("lsi", "Estimate the log-Sobolev constant of the transformed target");
  add_target_options(l, lsi.target);
  l->add_option("--r-max", lsi.r_max, "Radius of the eigenvalue table");
  l->add_option("--grid", lsi.grid, "Nodes in the eigenvalue table");
  l->add_option("--out", lsi.out_dir, "Also write lsi.json and eigen.csv here");
  l->callback([&] { action = [&] { return cmd_lsi(lsi, out); }; });

  ClassifyArgs classify;
  auto* k = app.add_subcommand("classify", "Functional-inequality regime from tail constants");
  k->add_option("--assumption", classify.assumption,
                "A3/dissipativity, A1/strong_convexity or A5/degenerate_convexity")
      ->required();
  k->add_option("--vartheta", classify.vartheta, "Tail exponent of the target")->required();
  k->add_option("--d", classify.d, "Dimension");
  for (const char* key : {"alpha", "beta", "b", "A", "B", "mu", "theta", "rho"})
    add_param(k, classify.params, key);
  k->callback([&] { action = [&] { return cmd_classify(classify, out); }; });

  GradcheckArgs grad;
  auto* g = app.add_subcommand("gradcheck", "Finite-difference check of gradient and Hessian");
  add_target_options(g, grad.target);
  g->add_option("--points", grad.points, "Random points");
  g->add_option("--seed", grad.seed, "Seed for the points");
  g->add_option("--r-min", grad.r_min, "Smallest radius");
  g->add_option("--r-max", grad.r_max, "Largest radius");
  g->callback([&] { action = [&] { return cmd_gradcheck(grad, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: config: " << e.what() << "\n";
    return kUsage;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  } catch (const MomentDoesNotExistError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
  } catch (const DivergenceError& e) {
    err << "diverged at step " << e.step() << ": " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}

}  // namespace tula::cli
