#pragma once

// Transformed potential f_h(y) = f(h(y)) - log det grad h(y) in closed form,
// and the Ito-diffusion view of the transformed Langevin dynamics in x-space.

#include "tula/targets.hpp"
#include "tula/transform.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>

namespace tula {

struct HessianEigenvalues {
  double lambda_radial = 0.0;      // along y/|y|
  double lambda_tangential = 0.0;  // multiplicity d-1
  int dimension = 1;

  /// Smallest eigenvalue actually present (d = 1 has no tangential one).
  double smallest() const {
    return dimension > 1 ? std::min(lambda_radial, lambda_tangential) : lambda_radial;
  }
  double largest_abs() const {
    const double a = std::abs(lambda_radial);
    return dimension > 1 ? std::max(a, std::abs(lambda_tangential)) : a;
  }
};

class TransformedPotential {
 public:
  TransformedPotential(PotentialPtr target, RadialTransform transform);
  explicit TransformedPotential(const TargetZooEntry& entry);

  const IsotropicPotential& target() const noexcept { return *target_; }
  const PotentialPtr& target_ptr() const noexcept { return target_; }
  const RadialTransform& transform() const noexcept { return transform_; }
  int dimension() const noexcept { return transform_.dimension(); }

  /// f_h as a function of r = |y|.
  double radial_value(double r) const;
  /// d f_h / dr.
  double radial_gradient(double r) const;
  HessianEigenvalues eigenvalues(double r) const;

 private:
  PotentialPtr target_;
  RadialTransform transform_;
};

double transformed_value(const TransformedPotential& tp, const Vector& y);
Vector transformed_gradient(const TransformedPotential& tp, const Vector& y);
HessianEigenvalues hessian_eigenvalues(const TransformedPotential& tp, double r);
double transformed_log_density(const TransformedPotential& tp, const Vector& y);

/// Gradient of the untransformed potential, f'(|x|) x/|x|.
Vector target_gradient(const IsotropicPotential& p, const Vector& x);

/// Drift b(x) and the singular values of sigma(x) for the x-space diffusion
/// X_t = h(Y_t). sigma(x) acts as sigma_radial on x/|x| and sigma_tangential
/// on its orthogonal complement.
struct ItoCoefficients {
  Vector drift;
  double sigma_radial = 0.0;
  double sigma_tangential = 0.0;
};

/// Drift assembled as the sum of the three radial pieces:
/// -grad h^T grad h grad f, the Laplacian-of-h term, and the log-det term.
ItoCoefficients ito_drift_diffusion(const TransformedPotential& tp, const Vector& x);

/// Drift as -grad h^T grad h grad f + 1/2 div(sigma^T sigma).
Vector ito_drift_via_divergence(const TransformedPotential& tp, const Vector& x);

/// Dense sigma^T sigma at x.
Eigen::MatrixXd diffusion_matrix(const TransformedPotential& tp, const Vector& x);

/// max over a log grid on [r_min, r_max] of the largest |eigenvalue|.
double estimate_gradient_lipschitz(const TransformedPotential& tp, double r_max = 100.0,
                                   int grid_size = 2000, double r_min = 1e-3);

}  // namespace tula
