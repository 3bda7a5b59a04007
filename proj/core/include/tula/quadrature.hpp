#pragma once

// Radial marginal of an isotropic density r^{d-1} e^{-f(r)}, integrated in
// t = log r so that polynomial tails become exponential ones.

#include "tula/targets.hpp"

#include <functional>
#include <vector>

namespace tula {

class RadialDistribution {
 public:
  /// Density proportional to r^{d-1+extra_power} e^{-f(r)}.
  explicit RadialDistribution(const IsotropicPotential& p, double extra_power = 0.0);

  double log_normalizer() const noexcept { return log_z_; }
  double cdf(double r) const;
  /// log P(|x| >= e^t); works far outside the tabulated range.
  double log_tail_from_log(double t) const;
  double tail(double r) const;

 private:
  double phi(double t) const;
  double cell_integral(double a, double b, double shift) const;
  std::size_t locate(double t) const;

  const IsotropicPotential* p_;
  double power_;
  double shift_;                 // max of phi over the scan
  std::vector<double> edges_;    // cell edges in t
  std::vector<double> prefix_;   // scaled mass below edges_[i]
  std::vector<double> suffix_;   // scaled mass above edges_[i]
  double log_z_;
};

/// E|x|^p under the target; throws MomentDoesNotExistError when p is at or
/// beyond the target's moment limit.
double radial_moment(const IsotropicPotential& p, double power);

/// log of the integral of exp(log_f) over [a, b]; a, b may be infinite.
/// Interior `breaks` split the adaptive rule at points of reduced smoothness.
double log_integrate(const std::function<double(double)>& log_f, double a, double b,
                     const std::vector<double>& breaks = {});

/// Splits [a, b] at the interior points of `breaks` and sums `f` integrated
/// adaptively over each piece.
double integrate_pieces(const std::function<double(double)>& f, double a, double b,
                        const std::vector<double>& breaks);

}  // namespace tula
