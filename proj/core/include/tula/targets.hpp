#pragma once

// Isotropic target potentials f(|x|) and the example zoo.

#include "tula/transform.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tula {

/// f(s), f'(s), f''(s).
struct RadialValues {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// f, s f'(s), s^2 f''(s) at s = e^u. Lets callers work with targets
/// evaluated at radii that do not fit in a double.
struct LogRadialValues {
  double value = 0.0;
  double s_d1 = 0.0;
  double s2_d2 = 0.0;
};

class IsotropicPotential {
 public:
  virtual ~IsotropicPotential() = default;

  int dimension() const noexcept { return dimension_; }
  const std::string& name() const noexcept { return name_; }

  virtual RadialValues eval(double s) const = 0;
  /// Default goes through eval(exp(u)); overridden where the tail has a
  /// closed form in log s.
  virtual LogRadialValues eval_log(double u) const;

  double value(double s) const { return eval(s).value; }
  double d1(double s) const { return eval(s).d1; }
  double d2(double s) const { return eval(s).d2; }

  /// Radii where the piecewise definition switches branch.
  virtual std::vector<double> seams() const { return {}; }
  /// E|x|^p is finite iff p < this value; empty when all moments exist.
  virtual std::optional<double> moment_exponent_limit() const { return std::nullopt; }

 protected:
  IsotropicPotential(int dimension, std::string name);

 private:
  int dimension_;
  std::string name_;
};

using PotentialPtr = std::shared_ptr<const IsotropicPotential>;

/// Potential from user callables returning (f, f', f'').
class FunctionPotential final : public IsotropicPotential {
 public:
  using Fn = std::function<RadialValues(double)>;
  FunctionPotential(int dimension, std::string name, Fn fn,
                    std::optional<double> moment_limit = std::nullopt);

  RadialValues eval(double s) const override { return fn_(s); }
  std::optional<double> moment_exponent_limit() const override { return moment_limit_; }

 private:
  Fn fn_;
  std::optional<double> moment_limit_;
};

/// f(s) = (d + kappa)/2 log(1 + s^2).
class MultivariateT final : public IsotropicPotential {
 public:
  MultivariateT(int dimension, double kappa);

  double kappa() const noexcept { return kappa_; }
  RadialValues eval(double s) const override;
  LogRadialValues eval_log(double u) const override;
  std::optional<double> moment_exponent_limit() const override { return kappa_; }

 private:
  double kappa_;
};

/// Potential built so that its pull-back under `transform` is a prescribed
/// radial function phi. Bulk: f(s) = phi(r) + log det grad h(r) + k with
/// r = g^{-1}(s). Tail: a closed form in u = log s.
class PiecewisePotential final : public IsotropicPotential {
 public:
  using PhiFn = std::function<RadialValues(double r)>;
  using TailFn = std::function<LogRadialValues(double u)>;

  PiecewisePotential(std::string name, RadialTransform transform, PhiFn phi,
                     double bulk_constant, TailFn tail,
                     std::optional<double> moment_limit);

  RadialValues eval(double s) const override;
  LogRadialValues eval_log(double u) const override;
  std::vector<double> seams() const override { return {seam_}; }
  std::optional<double> moment_exponent_limit() const override { return moment_limit_; }

  const RadialTransform& transform() const noexcept { return transform_; }

 private:
  RadialTransform transform_;
  PhiFn phi_;
  double bulk_constant_;
  TailFn tail_;
  double seam_;
  double log_seam_;
  std::optional<double> moment_limit_;
  double origin_d2_;
};

enum class ZooExample { WarmUp, MultivariateT, Example2, Example3, Example4, Example5, Example6 };

std::string to_string(ZooExample e);

using ParamMap = std::map<std::string, double>;

struct TargetZooEntry {
  PotentialPtr potential;
  ZooExample example = ZooExample::MultivariateT;
  ParamMap parameters;
  /// The transform the entry is paired with.
  RadialTransform transform;
  /// f_h in closed form up to an additive constant, when known.
  std::function<double(double)> expected_transformed_form;
  /// lim_{r->inf} of the smaller Hessian eigenvalue of f_h, when known.
  std::optional<double> tail_eigenvalue_limit;
};

PotentialPtr make_multivariate_t(int d, double kappa);

/// Parameters: kappa, b, beta (t); upsilon, kappa (Example 2); vartheta or b
/// (Examples 3-6); R (warm-up). Missing values take the usual defaults.
TargetZooEntry make_example(ZooExample example, int d, const ParamMap& params = {});

/// Names: "t", "t{d}_{kappa}", "example2".."example6", "warmup". A d or
/// kappa embedded in the name overrides the arguments.
TargetZooEntry make_target_by_name(const std::string& name, int d, const ParamMap& params = {});

/// (d-1) log r - f(r), unnormalized.
double radial_log_density(const IsotropicPotential& p, double r);
/// Same density in t = log r (includes the dr = r dt factor): d t - f(e^t).
double radial_log_density_logr(const IsotropicPotential& p, double t);

}  // namespace tula
