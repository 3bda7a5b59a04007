#pragma once

// Radial profile g and the isotropic diffeomorphism h(x) = g(|x|) x / |x|.
//
// The profile is piecewise: a bulk branch g_in(r) = c r exp(p(r)) on
// [0, r*) and an analytic tail on [r*, inf). The tail is either the
// exponential e^{b r^beta} (knot r* = b^{-1/beta}, g(r*) = e) or, for the
// sub-exponential warm-up construction, the quadratic d r^2 beyond R.

#include <Eigen/Core>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tula {

using Vector = Eigen::VectorXd;

class IsotropicPotential;

/// Bulk profile g_in(r) = scale * r * exp(p(r)), p given by its monomial
/// coefficients c0..ck in r.
struct GinSpec {
  double scale = 1.0;
  std::vector<double> log_poly;
  double knot = 1.0;
};

struct ExponentialTail {
  double b = 1.0;
  double beta = 2.0;
};

/// g(r) = scale * r^2 for r >= knot.
struct QuadraticTail {
  double scale = 1.0;
  double knot = 1.0;
};

using TailSpec = std::variant<ExponentialTail, QuadraticTail>;

/// Log-derivative data of g at one radius. Everything the transformed
/// potential needs is expressed through these so that nothing overflows
/// when g(r) itself does.
struct RadialJet {
  double log_g = 0.0;           // log g
  double dlog_g = 0.0;          // g'/g
  double g2_over_g = 0.0;       // g''/g
  double log_dg = 0.0;          // log g'
  double dlog_dg = 0.0;         // (log g')' = g''/g'
  double d2log_dg = 0.0;        // (log g')''
  double log_g_over_r = 0.0;    // log(g/r)
  double dlog_g_over_r = 0.0;   // (log(g/r))'
  double d2log_g_over_r = 0.0;  // (log(g/r))''
};

class RadialTransform {
 public:
  RadialTransform(TailSpec tail, GinSpec bulk, int dimension);

  /// Quintic log-polynomial bulk for the beta = 2 tail.
  static RadialTransform ginbeta2(double b, int dimension);

  /// Degree-5 log-polynomial bulk matching the tail e^{b r^beta} to third
  /// order at the knot, with p'(0) = 0. Equals ginbeta2 at beta = 2.
  static RadialTransform polynomial_profile(double b, double beta, int dimension);

  /// Warm-up map: g(r) = d r^2 beyond R, bulk d R r exp(-5/6 + 3/2 (r/R)^2 - 2/3 (r/R)^3).
  static RadialTransform warm_up(int dimension, double radius = 1.0);

  int dimension() const noexcept { return dimension_; }
  double knot() const noexcept { return bulk_.knot; }
  const GinSpec& bulk() const noexcept { return bulk_; }
  const TailSpec& tail() const noexcept { return tail_; }
  bool has_exponential_tail() const noexcept {
    return std::holds_alternative<ExponentialTail>(tail_);
  }
  /// g(r*), the smallest value reached by the tail branch.
  double knot_value() const;

  /// g^{(order)}(r), order in 0..3.
  double g(double r, int order = 0) const;
  /// Derivatives of the bulk and tail branches evaluated at r regardless of
  /// which side of the knot r lies on.
  double bulk_derivative(double r, int order) const;
  double tail_derivative(double r, int order) const;

  double inverse(double s) const;
  /// g^{-1}(e^{log_s}) without forming e^{log_s} on the tail branch.
  double inverse_from_log(double log_s) const;

  RadialJet jet(double r) const;

  /// log det grad h at radius r: log g'(r) + (d-1) log(g(r)/r); r = 0 gives
  /// the finite limit.
  double log_det_jacobian(double r) const;

  Vector forward(const Vector& x) const;
  Vector backward(const Vector& x) const;

 private:
  RadialJet bulk_jet(double r) const;
  RadialJet tail_jet(double r) const;
  double bulk_inverse(double s) const;

  TailSpec tail_;
  GinSpec bulk_;
  int dimension_;
};

struct G1Entry {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double residual = 0.0;
  bool required = true;
  bool pass = false;
};

struct G1Report {
  std::vector<G1Entry> entries;
  bool pass = false;

  const G1Entry* find(const std::string& name) const;
};

/// Numerical check of the profile conditions: knot matches of g..g''',
/// monotonicity of g_in, and boundedness of the r -> 0+ limits. The
/// target-coupled limit is checked only when a target is given.
G1Report verify_g1_assumption(const RadialTransform& t,
                              const IsotropicPotential* target = nullptr);

}  // namespace tula
