#include "tula/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace tula {

namespace {
constexpr double kOriginCutoff = 1e-10;
}

TransformedPotential::TransformedPotential(PotentialPtr target, RadialTransform transform)
    : target_(std::move(target)), transform_(std::move(transform)) {
  if (!target_) throw std::invalid_argument("null target");
  if (target_->dimension() != transform_.dimension())
    throw std::invalid_argument("target and transform dimensions differ");
}

TransformedPotential::TransformedPotential(const TargetZooEntry& entry)
    : TransformedPotential(entry.potential, entry.transform) {}

double TransformedPotential::radial_value(double r) const {
  const int d = dimension();
  if (r == 0.0) return target_->value(0.0) - transform_.log_det_jacobian(0.0);
  const RadialJet j = transform_.jet(r);
  const LogRadialValues lp = target_->eval_log(j.log_g);
  return lp.value - j.log_dg - (d - 1) * j.log_g_over_r;
}

double TransformedPotential::radial_gradient(double r) const {
  if (r < kOriginCutoff) return 0.0;
  const int d = dimension();
  const RadialJet j = transform_.jet(r);
  const LogRadialValues lp = target_->eval_log(j.log_g);
  return lp.s_d1 * j.dlog_g - j.dlog_dg - (d - 1) * j.dlog_g_over_r;
}

HessianEigenvalues TransformedPotential::eigenvalues(double r) const {
  if (!(r > 0.0)) throw std::invalid_argument("hessian_eigenvalues: radius must be positive");
  const int d = dimension();
  const RadialJet j = transform_.jet(r);
  const LogRadialValues lp = target_->eval_log(j.log_g);
  HessianEigenvalues ev;
  ev.dimension = d;
  const double grad = lp.s_d1 * j.dlog_g - j.dlog_dg - (d - 1) * j.dlog_g_over_r;
  ev.lambda_tangential = grad / r;
  ev.lambda_radial = lp.s2_d2 * j.dlog_g * j.dlog_g + lp.s_d1 * j.g2_over_g - j.d2log_dg -
                     (d - 1) * j.d2log_g_over_r;
  return ev;
}

double transformed_value(const TransformedPotential& tp, const Vector& y) {
  return tp.radial_value(y.norm());
}

Vector transformed_gradient(const TransformedPotential& tp, const Vector& y) {
  const double r = y.norm();
  if (r < kOriginCutoff) return Vector::Zero(y.size());
  return y * (tp.radial_gradient(r) / r);
}

HessianEigenvalues hessian_eigenvalues(const TransformedPotential& tp, double r) {
  return tp.eigenvalues(r);
}

double transformed_log_density(const TransformedPotential& tp, const Vector& y) {
  return -transformed_value(tp, y);
}

Vector target_gradient(const IsotropicPotential& p, const Vector& x) {
  const double s = x.norm();
  if (s < kOriginCutoff) return Vector::Zero(x.size());
  return x * (p.d1(s) / s);
}

namespace {

struct ItoPieces {
  double s, rho, g1, g2, f1;
};

ItoPieces ito_pieces(const TransformedPotential& tp, const Vector& x) {
  const double s = x.norm();
  if (!(s > 0.0)) throw std::invalid_argument("ito_drift_diffusion: x must be nonzero");
  const RadialTransform& t = tp.transform();
  const double rho = t.inverse(s);
  const RadialJet j = t.jet(rho);
  // g(rho) = s, so g' = s (g'/g) and g'' = s (g''/g).
  return {s, rho, s * j.dlog_g, s * j.g2_over_g, tp.target().d1(s)};
}

}  // namespace

ItoCoefficients ito_drift_diffusion(const TransformedPotential& tp, const Vector& x) {
  const ItoPieces p = ito_pieces(tp, x);
  const double dm1 = tp.dimension() - 1;
  const double potential_term = -p.g1 * p.g1 * p.f1;
  const double laplace_term = p.g2 + dm1 * p.g1 * p.g1 / p.s - dm1 * p.g1 / p.rho;
  const double logdet_term = p.g2 + dm1 * p.g1 / p.rho - dm1 * p.s / (p.rho * p.rho);
  ItoCoefficients out;
  out.drift = x * ((potential_term + laplace_term + logdet_term) / p.s);
  out.sigma_radial = std::sqrt(2.0) * p.g1;
  out.sigma_tangential = std::sqrt(2.0) * p.s / p.rho;
  return out;
}

Vector ito_drift_via_divergence(const TransformedPotential& tp, const Vector& x) {
  const ItoPieces p = ito_pieces(tp, x);
  const double dm1 = tp.dimension() - 1;
  const double half_div =
      2.0 * p.g2 + dm1 * p.g1 * p.g1 / p.s - dm1 * p.s / (p.rho * p.rho);
  return x * ((-p.g1 * p.g1 * p.f1 + half_div) / p.s);
}

Eigen::MatrixXd diffusion_matrix(const TransformedPotential& tp, const Vector& x) {
  const ItoPieces p = ito_pieces(tp, x);
  const Vector u = x / p.s;
  const Eigen::MatrixXd proj = u * u.transpose();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(x.size(), x.size());
  const double tang = p.s / p.rho;
  return 2.0 * (p.g1 * p.g1 * proj + tang * tang * (id - proj));
}

double estimate_gradient_lipschitz(const TransformedPotential& tp, double r_max, int grid_size,
                                   double r_min) {
  if (grid_size < 2 || !(r_max > r_min) || !(r_min > 0.0))
    throw std::invalid_argument("estimate_gradient_lipschitz: bad grid");
  double L = 0.0;
  const double a = std::log(r_min), b = std::log(r_max);
  for (int i = 0; i < grid_size; ++i) {
    const double r = std::exp(a + (b - a) * i / (grid_size - 1));
    L = std::max(L, tp.eigenvalues(r).largest_abs());
  }
  return L;
}

}  // namespace tula
