#include "tula/transform.hpp"

#include "tula/targets.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace tula {
namespace {

constexpr double kE = std::numbers::e;

struct PolyJet {
  double p = 0, d1 = 0, d2 = 0, d3 = 0;
};

PolyJet eval_poly(const std::vector<double>& c, double r) {
  PolyJet j;
  // Horner with Taylor accumulators: ends with p, p', p''/2, p'''/6.
  for (std::size_t k = c.size(); k-- > 0;) {
    j.d3 = j.d3 * r + j.d2;
    j.d2 = j.d2 * r + j.d1;
    j.d1 = j.d1 * r + j.p;
    j.p = j.p * r + c[k];
  }
  j.d2 *= 2.0;
  j.d3 *= 6.0;
  return j;
}

double coeff(const std::vector<double>& c, std::size_t k) {
  return k < c.size() ? c[k] : 0.0;
}

double rel_residual(double measured, double expected) {
  const double scale = std::abs(expected);
  if (scale == 0.0) return std::abs(measured);
  return std::abs(measured - expected) / scale;
}

}  // namespace

RadialTransform::RadialTransform(TailSpec tail, GinSpec bulk, int dimension)
    : tail_(std::move(tail)), bulk_(std::move(bulk)), dimension_(dimension) {
  if (dimension_ < 1) throw std::invalid_argument("dimension must be >= 1");
  if (!(bulk_.scale > 0.0)) throw std::invalid_argument("gin scale must be positive");
  if (bulk_.log_poly.empty()) bulk_.log_poly.push_back(0.0);
  if (auto* e = std::get_if<ExponentialTail>(&tail_)) {
    if (!(e->b > 0.0)) throw std::invalid_argument("b must be positive");
    if (!(e->beta > 1.0 && e->beta <= 2.0))
      throw std::invalid_argument("beta must lie in (1, 2]");
    bulk_.knot = std::pow(e->b, -1.0 / e->beta);
  } else {
    auto& q = std::get<QuadraticTail>(tail_);
    if (!(q.scale > 0.0) || !(q.knot > 0.0))
      throw std::invalid_argument("quadratic tail needs positive scale and knot");
    bulk_.knot = q.knot;
  }
}

RadialTransform RadialTransform::ginbeta2(double b, int dimension) {
  if (!(b > 0.0)) throw std::invalid_argument("b must be positive");
  const double sb = std::sqrt(b);
  GinSpec gin;
  gin.scale = sb;
  gin.log_poly = {47.0 / 60.0,
                  0.0,
                  b,
                  -10.0 / 3.0 * b * sb,
                  15.0 / 4.0 * b * b,
                  -6.0 / 5.0 * b * b * sb};
  return RadialTransform(ExponentialTail{b, 2.0}, gin, dimension);
}

RadialTransform RadialTransform::polynomial_profile(double b, double beta, int dimension) {
  if (!(b > 0.0)) throw std::invalid_argument("b must be positive");
  if (!(beta > 1.0 && beta <= 2.0)) throw std::invalid_argument("beta must lie in (1, 2]");
  // In t = r / r*, log g = log t + P(t) must agree with t^beta to third
  // order at t = 1, with P(t) = a0 + t^2 + a3 t^3 + a4 t^4 + a5 t^5.
  Eigen::Matrix3d m;
  m << 3, 4, 5,
       6, 12, 20,
       6, 24, 60;
  Eigen::Vector3d rhs(beta - 1.0 - 2.0,
                      beta * beta - beta + 1.0 - 2.0,
                      beta * (beta - 1.0) * (beta - 2.0) - 2.0);
  const Eigen::Vector3d a = m.fullPivLu().solve(rhs);
  const double a0 = -(a[0] + a[1] + a[2]);
  const double c = std::pow(b, 1.0 / beta);

  GinSpec gin;
  gin.scale = c;
  gin.log_poly = {a0, 0.0, c * c, a[0] * std::pow(c, 3), a[1] * std::pow(c, 4),
                  a[2] * std::pow(c, 5)};
  return RadialTransform(ExponentialTail{b, beta}, gin, dimension);
}

RadialTransform RadialTransform::warm_up(int dimension, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("warm-up radius must be positive");
  const double d = dimension;
  GinSpec gin;
  gin.scale = d * radius;
  gin.log_poly = {-5.0 / 6.0, 0.0, 1.5 / (radius * radius),
                  -2.0 / (3.0 * radius * radius * radius)};
  return RadialTransform(QuadraticTail{d, radius}, gin, dimension);
}

double RadialTransform::knot_value() const { return tail_derivative(knot(), 0); }

double RadialTransform::bulk_derivative(double r, int order) const {
  const PolyJet pj = eval_poly(bulk_.log_poly, r);
  const double c = bulk_.scale;
  const double e0 = std::exp(pj.p);
  const double e1 = pj.d1 * e0;
  const double e2 = (pj.d2 + pj.d1 * pj.d1) * e0;
  switch (order) {
    case 0: return c * r * e0;
    case 1: return c * (e0 + r * e1);
    case 2: return c * (2.0 * e1 + r * e2);
    case 3: {
      const double e3 = (pj.d3 + 3.0 * pj.d1 * pj.d2 + pj.d1 * pj.d1 * pj.d1) * e0;
      return c * (3.0 * e2 + r * e3);
    }
    default: throw std::invalid_argument("derivative order must be in 0..3");
  }
}

double RadialTransform::tail_derivative(double r, int order) const {
  if (order < 0 || order > 3) throw std::invalid_argument("derivative order must be in 0..3");
  if (const auto* e = std::get_if<ExponentialTail>(&tail_)) {
    const double b = e->b, be = e->beta;
    const double g = std::exp(b * std::pow(r, be));
    if (order == 0) return g;
    const double q = b * be * std::pow(r, be - 1.0);
    const double q1 = b * be * (be - 1.0) * std::pow(r, be - 2.0);
    if (order == 1) return g * q;
    if (order == 2) return g * (q * q + q1);
    const double q2 = b * be * (be - 1.0) * (be - 2.0) * std::pow(r, be - 3.0);
    return g * (q * q * q + 3.0 * q * q1 + q2);
  }
  const double k = std::get<QuadraticTail>(tail_).scale;
  switch (order) {
    case 0: return k * r * r;
    case 1: return 2.0 * k * r;
    case 2: return 2.0 * k;
    default: return 0.0;
  }
}

double RadialTransform::g(double r, int order) const {
  if (order < 0 || order > 3) throw std::invalid_argument("derivative order must be in 0..3");
  if (!(r >= 0.0)) throw std::invalid_argument("g: radius must be nonnegative");
  return r < knot() ? bulk_derivative(r, order) : tail_derivative(r, order);
}

double RadialTransform::bulk_inverse(double log_s) const {
  // Newton on log g_in(e^t) = log_s in t = log r, safeguarded by bisection.
  // d/dt log g_in = 1 + r p'(r) > 0 on the bulk.
  const double log_c = std::log(bulk_.scale);
  double lo = -800.0, hi = std::log(knot());
  double t = hi - std::log(2.0);
  for (int it = 0; it < 300; ++it) {
    const double r = std::exp(t);
    const PolyJet pj = eval_poly(bulk_.log_poly, r);
    const double f = log_c + t + pj.p - log_s;
    if (std::abs(f) <= 1e-15 * std::max(1.0, std::abs(log_s))) return r;
    if (f > 0) hi = t; else lo = t;
    const double slope = 1.0 + r * pj.d1;
    double next = t - f / slope;
    if (!(slope > 0.0) || !(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == t || hi - lo <= 1e-16 * std::max(1.0, std::abs(hi))) return std::exp(next);
    t = next;
  }
  return std::exp(t);
}

double RadialTransform::inverse(double s) const {
  if (!(s >= 0.0)) throw std::invalid_argument("g inverse: argument must be nonnegative");
  if (s == 0.0) return 0.0;
  if (s >= knot_value()) {
    if (const auto* e = std::get_if<ExponentialTail>(&tail_))
      return std::pow(std::log(s) / e->b, 1.0 / e->beta);
    return std::sqrt(s / std::get<QuadraticTail>(tail_).scale);
  }
  return bulk_inverse(std::log(s));
}

double RadialTransform::inverse_from_log(double log_s) const {
  if (log_s == -std::numeric_limits<double>::infinity()) return 0.0;
  if (const auto* e = std::get_if<ExponentialTail>(&tail_)) {
    if (log_s >= 1.0) return std::pow(log_s / e->b, 1.0 / e->beta);
  } else {
    const auto& q = std::get<QuadraticTail>(tail_);
    if (log_s >= std::log(q.scale) + 2.0 * std::log(q.knot))
      return std::exp(0.5 * (log_s - std::log(q.scale)));
  }
  return bulk_inverse(log_s);
}

RadialJet RadialTransform::bulk_jet(double r) const {
  const PolyJet pj = eval_poly(bulk_.log_poly, r);
  const double log_c = std::log(bulk_.scale);
  const double w = 1.0 + r * pj.d1;
  const double w1 = pj.d1 + r * pj.d2;
  const double w2 = 2.0 * pj.d2 + r * pj.d3;
  RadialJet j;
  j.log_g = log_c + std::log(r) + pj.p;
  j.dlog_g = 1.0 / r + pj.d1;
  j.g2_over_g = pj.d1 * pj.d1 + 2.0 * pj.d1 / r + pj.d2;
  j.log_dg = log_c + pj.p + std::log(w);
  j.dlog_dg = pj.d1 + w1 / w;
  j.d2log_dg = pj.d2 + w2 / w - (w1 / w) * (w1 / w);
  j.log_g_over_r = log_c + pj.p;
  j.dlog_g_over_r = pj.d1;
  j.d2log_g_over_r = pj.d2;
  return j;
}

RadialJet RadialTransform::tail_jet(double r) const {
  RadialJet j;
  const double lr = std::log(r);
  if (const auto* e = std::get_if<ExponentialTail>(&tail_)) {
    const double b = e->b, be = e->beta;
    const double u = b * std::pow(r, be);
    const double q = b * be * std::pow(r, be - 1.0);
    const double q1 = b * be * (be - 1.0) * std::pow(r, be - 2.0);
    j.log_g = u;
    j.dlog_g = q;
    j.g2_over_g = q * q + q1;
    j.log_dg = std::log(b * be) + (be - 1.0) * lr + u;
    j.dlog_dg = (be - 1.0) / r + q;
    j.d2log_dg = -(be - 1.0) / (r * r) + q1;
    j.log_g_over_r = u - lr;
    j.dlog_g_over_r = q - 1.0 / r;
    j.d2log_g_over_r = q1 + 1.0 / (r * r);
    return j;
  }
  const double k = std::get<QuadraticTail>(tail_).scale;
  j.log_g = std::log(k) + 2.0 * lr;
  j.dlog_g = 2.0 / r;
  j.g2_over_g = 2.0 / (r * r);
  j.log_dg = std::log(2.0 * k) + lr;
  j.dlog_dg = 1.0 / r;
  j.d2log_dg = -1.0 / (r * r);
  j.log_g_over_r = std::log(k) + lr;
  j.dlog_g_over_r = 1.0 / r;
  j.d2log_g_over_r = -1.0 / (r * r);
  return j;
}

RadialJet RadialTransform::jet(double r) const {
  if (!(r > 0.0)) throw std::invalid_argument("jet: radius must be positive");
  return r < knot() ? bulk_jet(r) : tail_jet(r);
}

double RadialTransform::log_det_jacobian(double r) const {
  if (!(r >= 0.0)) throw std::invalid_argument("log_det_jacobian: radius must be nonnegative");
  if (r == 0.0) {
    // g_in'(0) = lim g_in(r)/r = c e^{p(0)}.
    return dimension_ * (std::log(bulk_.scale) + bulk_.log_poly[0]);
  }
  const RadialJet j = jet(r);
  return j.log_dg + (dimension_ - 1) * j.log_g_over_r;
}

Vector RadialTransform::forward(const Vector& x) const {
  const double n = x.norm();
  if (n == 0.0) return Vector::Zero(x.size());
  return x * (g(n) / n);
}

Vector RadialTransform::backward(const Vector& x) const {
  const double n = x.norm();
  if (n == 0.0) return Vector::Zero(x.size());
  return x * (inverse(n) / n);
}

const G1Entry* G1Report::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

G1Report verify_g1_assumption(const RadialTransform& t, const IsotropicPotential* target) {
  constexpr double kKnotTol = 1e-8;
  G1Report rep;
  const double rs = t.knot();

  // Boundary values at the knot.
  double expected[4];
  if (const auto* e = std::get_if<ExponentialTail>(&t.tail())) {
    const double be = e->beta, c = std::pow(e->b, 1.0 / be);
    expected[0] = kE;
    expected[1] = be * c * kE;
    expected[2] = (2 * be * be - be) * c * c * kE;
    expected[3] = (5 * be * be * be - 6 * be * be + 2 * be) * c * c * c * kE;
  } else {
    for (int k = 0; k < 4; ++k) expected[k] = t.tail_derivative(rs, k);
  }
  const char* knot_names[4] = {"knot_value", "knot_d1", "knot_d2", "knot_d3"};
  for (int k = 0; k < 4; ++k) {
    G1Entry en;
    en.name = knot_names[k];
    en.measured = t.bulk_derivative(rs, k);
    en.expected = expected[k];
    en.residual = rel_residual(en.measured, en.expected);
    en.pass = en.residual <= kKnotTol;
    // The quadratic-tail construction is only C^2 at its knot.
    en.required = t.has_exponential_tail() || k < 3;
    rep.entries.push_back(en);
  }

  {
    G1Entry en;
    en.name = "origin_value";
    en.measured = t.bulk_derivative(0.0, 0);
    en.residual = std::abs(en.measured);
    en.pass = en.measured == 0.0;
    rep.entries.push_back(en);
  }

  {
    G1Entry en;
    en.name = "monotone";
    const int n = 10000;
    double min_slope = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const double r = rs * i / n;
      min_slope = std::min(min_slope, t.bulk_derivative(r, 1));
    }
    en.measured = min_slope;
    en.pass = min_slope > 0.0;
    en.residual = en.pass ? 0.0 : -min_slope;
    rep.entries.push_back(en);
  }

  // r -> 0+ limits: closed forms from the log-polynomial, boundedness checked
  // on a geometric grid.
  const auto& lp = t.bulk().log_poly;
  const double a1 = coeff(lp, 1), a2 = coeff(lp, 2);
  const double inf = std::numeric_limits<double>::infinity();
  const bool smooth_origin = a1 == 0.0;

  std::vector<double> grid;
  const int ng = 200;
  const double lo = std::log(1e-8), hi = std::log(rs * (1.0 - 1e-9));
  for (int i = 0; i < ng; ++i) grid.push_back(std::exp(lo + (hi - lo) * i / (ng - 1)));

  auto limit_entry = [&](const std::string& name, double closed, auto&& fn) {
    G1Entry en;
    en.name = name;
    en.expected = closed;
    double vmax = 0.0;
    bool finite = true;
    for (double r : grid) {
      const double v = fn(r);
      if (!std::isfinite(v)) finite = false;
      vmax = std::max(vmax, std::abs(v));
    }
    // A finite limit means the value stops growing as r shrinks a decade.
    const double v0 = std::abs(fn(1e-8)), v1 = std::abs(fn(1e-7));
    const bool bounded = finite && v0 <= 2.0 * std::max(v1, 1.0);
    en.measured = fn(1e-8);
    en.residual = vmax;
    en.pass = bounded;
    rep.entries.push_back(en);
  };

  limit_entry("lim_dlog_dg_over_r", smooth_origin ? 6.0 * a2 : inf,
              [&](double r) { return t.jet(r).dlog_dg / r; });
  limit_entry("lim_dlog_g_over_r_over_r", smooth_origin ? 2.0 * a2 : inf,
              [&](double r) { return t.jet(r).dlog_g_over_r / r; });
  limit_entry("lim_d2log_g_over_r", smooth_origin ? 2.0 * a2 : inf,
              [&](double r) { return t.jet(r).d2log_g_over_r; });
  limit_entry("lim_d2log_dg", smooth_origin ? 6.0 * a2 : inf,
              [&](double r) { return t.jet(r).d2log_dg; });

  if (target != nullptr) {
    const double c = t.bulk().scale;
    const double f2 = target->eval(0.0).d2;
    limit_entry("lim_target_radial_factor", f2 * c * c, [&](double r) {
      const RadialJet j = t.jet(r);
      const LogRadialValues lv = target->eval_log(j.log_g);
      return lv.s_d1 * std::exp(j.log_dg - j.log_g - std::log(r));
    });
  }

  rep.pass = true;
  for (const auto& e : rep.entries)
    if (e.required && !e.pass) rep.pass = false;
  return rep;
}

}  // namespace tula
