#pragma once

// Grid-based assumption checks, the LSI estimate, regime classification,
// and sampling diagnostics.

#include "tula/dynamics.hpp"
#include "tula/sampler.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tula {

enum class Assumption {
  A1_dissipativity,
  A2_degenerate_convexity,
  A3_strong_convexity,
  A4_gradient_lipschitz,
  A5_tail,
};

std::string to_string(Assumption a);
/// Accepts "A1".."A5" and the descriptive suffixes ("dissipativity", ...).
Assumption parse_assumption(const std::string& s);

struct AssumptionReport {
  Assumption assumption = Assumption::A1_dissipativity;
  std::vector<double> grid;
  std::vector<double> lhs;  // left-hand side per grid point (the smaller one when there are two)
  std::vector<double> rhs;
  std::map<std::string, double> constants;  // supplied and fitted
  std::vector<std::string> fitted;          // names of constants that were fitted
  std::optional<double> satisfied_from_radius;
  double validation_from_radius = 0.0;
  bool pass = false;
};

/// 512 log-spaced radii on [max(knot, 0.1), 100].
std::vector<double> default_assumption_grid(const RadialTransform& t, int n = 512,
                                            double r_max = 100.0);

/// Constants not supplied are fitted on the inner 90% of the grid, widened
/// by 1% in the permissive direction, and the inequality is then validated
/// on the outer 10%. A1, A2 and A3 also need a positive rate (A, mu, rho). Keys: A, B, alpha (A1);
/// mu, theta (A2); rho (A3); L (A4); m, alpha1, C_tail (A5).
AssumptionReport check_assumption(const TransformedPotential& tp, Assumption which,
                                  std::vector<double> grid = {},
                                  const std::map<std::string, double>& candidate = {});

struct LsiEstimate {
  std::vector<double> r;
  std::vector<double> lambda_radial;
  std::vector<double> lambda_tangential;
  std::vector<double> beta_bar;
  double a0 = 0.0;
  double bound = 0.0;
  double root_residual = 0.0;
};

/// beta_bar(r) = inf over s in [r, r_max] of the smallest Hessian eigenvalue,
/// also capped by tail_limit when given. Throws NotApplicableError when
/// beta_bar is not positive.
LsiEstimate estimate_lsi(const TransformedPotential& tp, double r_max = 10.0,
                         int grid_size = 4000, std::optional<double> tail_limit = std::nullopt);

/// Root a0 of a * int_0^a beta_bar = 2 and the bound a0^2 exp(int_0^a0 r beta_bar - 1)
/// for a tabulated nondecreasing beta_bar (linear between nodes, constant past the end).
LsiEstimate solve_lsi_bound(std::vector<double> r, std::vector<double> beta_bar);

enum class Regime { SuperPoincare, Poincare, WeakPoincare };
std::string to_string(Regime r);

struct DissipativityParams {
  double alpha = 2.0, beta = 2.0, b = 1.0, A = 1.0, B = 0.0;
};
struct DegenerateConvexityParams {
  double mu = 1.0, theta = 0.0, beta = 2.0, b = 1.0;
};
struct StrongConvexityParams {
  double rho = 1.0, beta = 2.0, b = 1.0;
};
using RegimeInput = std::variant<DissipativityParams, DegenerateConvexityParams, StrongConvexityParams>;

/// omega(x) = C 2^{-(d+vartheta)} |x|^{coefficient log^{log_exponent}|x| + offset} log^{log_factor}|x|
struct OmegaWitness {
  double coefficient = 0.0;
  double log_exponent = 0.0;
  double offset = 0.0;
  double log_factor = 0.0;
};

struct RegimeVerdict {
  Regime regime = Regime::WeakPoincare;
  std::optional<OmegaWitness> witness;
  std::string rule_fired;
};

RegimeVerdict classify_regime(const RegimeInput& input, double vartheta, int d);

/// Autocorrelation-aware effective sample size (Geyer initial monotone sequence).
double effective_sample_size(const std::vector<double>& series);

struct MomentCheck {
  double power = 0.0;
  double empirical = 0.0;
  double expected = 0.0;
  double std_error = 0.0;
  double ess = 0.0;
  bool within = false;  // |empirical - expected| <= 3 std_error
};

struct TailCheck {
  double threshold = 0.0;
  double empirical = 0.0;
  double expected = 0.0;
  double std_error = 0.0;
  double ess = 0.0;
  bool within = false;
};

struct RadialDiagnostics {
  std::size_t samples = 0;
  double ess = 0.0;
  double ks_statistic = 0.0;
  double ks_critical = 0.0;  // 1% level for the effective sample size
  bool ks_pass = false;
  std::vector<MomentCheck> moments;
  std::vector<TailCheck> tails;
};

/// Compares post-burn-in x-samples against quadrature of the target's radial
/// law. burn_in counts recorded samples per chain. Empty `powers` checks
/// p = 1, 2 where those moments exist; explicitly requested powers at or
/// beyond the moment limit throw MomentDoesNotExistError.
RadialDiagnostics radial_diagnostics(const std::vector<ChainRun>& runs,
                                     const IsotropicPotential& p, std::size_t burn_in,
                                     const std::vector<double>& powers = {},
                                     const std::vector<double>& thresholds = {});
RadialDiagnostics radial_diagnostics(const ChainRun& run, const IsotropicPotential& p,
                                     std::size_t burn_in, const std::vector<double>& powers = {},
                                     const std::vector<double>& thresholds = {});

/// KL(a || b) for two unnormalized 1-d log-densities on [lo, hi] (bounds may
/// be infinite). `breaks` lists interior points where either density is not
/// smooth, e.g. 0 and the knots +-r* for densities pulled back through h.
double kl_quadrature_1d(const std::function<double(double)>& log_density_a,
                        const std::function<double(double)>& log_density_b, double lo,
                        double hi, const std::vector<double>& breaks = {});

}  // namespace tula
