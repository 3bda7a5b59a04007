#include "tula/targets.hpp"

#include <cmath>
#include <limits>
#include <regex>
#include <set>
#include <stdexcept>

namespace tula {
namespace {

double softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double param(const ParamMap& m, const std::string& key, double fallback) {
  auto it = m.find(key);
  return it == m.end() ? fallback : it->second;
}

void reject_unknown(const ParamMap& m, std::initializer_list<const char*> allowed,
                    const std::string& who) {
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : m)
    if (!ok.count(k)) throw std::invalid_argument(who + ": unknown parameter '" + k + "'");
}

// Tail in u = log s of the form A u + B log u + C log(1 + 2b/u) + K.
PiecewisePotential::TailFn loglog_tail(double A, double B, double C, double K, double b) {
  return [=](double u) {
    const double v = u + 2.0 * b;
    LogRadialValues lv;
    lv.value = A * u + B * std::log(u) + C * std::log1p(2.0 * b / u) + K;
    const double tu = A + B / u - 2.0 * b * C / (u * v);
    const double tuu = -B / (u * u) + 2.0 * b * C * (u + v) / (u * v * u * v);
    lv.s_d1 = tu;
    lv.s2_d2 = tuu - tu;
    return lv;
  };
}

// (d/2) r^2 + gamma log(1 + r^2/2)
PiecewisePotential::PhiFn gaussian_log_phi(double d, double gamma) {
  return [=](double r) {
    const double q = 1.0 + 0.5 * r * r;
    return RadialValues{0.5 * d * r * r + gamma * std::log(q), d * r + gamma * r / q,
                        d + gamma * (1.0 - 0.5 * r * r) / (q * q)};
  };
}

}  // namespace

IsotropicPotential::IsotropicPotential(int dimension, std::string name)
    : dimension_(dimension), name_(std::move(name)) {
  if (dimension_ < 1) throw std::invalid_argument("dimension must be >= 1");
}

LogRadialValues IsotropicPotential::eval_log(double u) const {
  const double s = std::exp(u);
  const RadialValues rv = eval(s);
  return {rv.value, s * rv.d1, s * s * rv.d2};
}

FunctionPotential::FunctionPotential(int dimension, std::string name, Fn fn,
                                     std::optional<double> moment_limit)
    : IsotropicPotential(dimension, std::move(name)), fn_(std::move(fn)),
      moment_limit_(moment_limit) {}

MultivariateT::MultivariateT(int dimension, double kappa)
    : IsotropicPotential(dimension, "t"), kappa_(kappa) {
  if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
}

RadialValues MultivariateT::eval(double s) const {
  const double D = dimension() + kappa_;
  const double q = 1.0 + s * s;
  return {0.5 * D * std::log1p(s * s), D * s / q, D * (1.0 - s * s) / (q * q)};
}

LogRadialValues MultivariateT::eval_log(double u) const {
  const double D = dimension() + kappa_;
  const double sig = 1.0 / (1.0 + std::exp(-2.0 * u));
  return {0.5 * D * softplus(2.0 * u), D * sig, -D * sig * std::tanh(u)};
}

PiecewisePotential::PiecewisePotential(std::string name, RadialTransform transform, PhiFn phi,
                                       double bulk_constant, TailFn tail,
                                       std::optional<double> moment_limit)
    : IsotropicPotential(transform.dimension(), std::move(name)),
      transform_(std::move(transform)),
      phi_(std::move(phi)),
      bulk_constant_(bulk_constant),
      tail_(std::move(tail)),
      seam_(transform_.knot_value()),
      log_seam_(std::log(seam_)),
      moment_limit_(moment_limit),
      origin_d2_(0.0) {
  // f''(0) = lim f'(s)/s
  const double s0 = 1e-6 * seam_;
  origin_d2_ = eval_log(std::log(s0)).s_d1 / (s0 * s0);
}

LogRadialValues PiecewisePotential::eval_log(double u) const {
  if (u >= log_seam_) return tail_(u);
  const double r = transform_.inverse_from_log(u);
  const int d = dimension();
  if (r == 0.0)
    return {phi_(0.0).value + transform_.log_det_jacobian(0.0) + bulk_constant_, 0.0, 0.0};
  const RadialJet j = transform_.jet(r);
  const RadialValues ph = phi_(r);
  const double ell = j.log_dg + (d - 1) * j.log_g_over_r;
  const double ell1 = j.dlog_dg + (d - 1) * j.dlog_g_over_r;
  const double ell2 = j.d2log_dg + (d - 1) * j.d2log_g_over_r;
  const double num = ph.d1 + ell1;
  const double ratio = std::exp(j.log_g - j.log_dg);  // g / g'
  LogRadialValues lv;
  lv.value = ph.value + ell + bulk_constant_;
  lv.s_d1 = num * ratio;
  lv.s2_d2 = (ph.d2 + ell2 - num * j.dlog_dg) * ratio * ratio;
  return lv;
}

RadialValues PiecewisePotential::eval(double s) const {
  if (s == 0.0)
    return {phi_(0.0).value + transform_.log_det_jacobian(0.0) + bulk_constant_, 0.0, origin_d2_};
  const LogRadialValues lv = eval_log(std::log(s));
  return {lv.value, lv.s_d1 / s, lv.s2_d2 / (s * s)};
}

std::string to_string(ZooExample e) {
  switch (e) {
    case ZooExample::WarmUp: return "warmup";
    case ZooExample::MultivariateT: return "t";
    case ZooExample::Example2: return "example2";
    case ZooExample::Example3: return "example3";
    case ZooExample::Example4: return "example4";
    case ZooExample::Example5: return "example5";
    case ZooExample::Example6: return "example6";
  }
  return "unknown";
}

PotentialPtr make_multivariate_t(int d, double kappa) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  return std::make_shared<MultivariateT>(d, kappa);
}

TargetZooEntry make_example(ZooExample example, int d, const ParamMap& params) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  const double dd = d;
  const std::string who = to_string(example);

  switch (example) {
    case ZooExample::MultivariateT: {
      reject_unknown(params, {"kappa", "b", "beta"}, who);
      const double kappa = param(params, "kappa", 1.0);
      if (!(kappa > 0.0)) throw std::invalid_argument("t: kappa must be > 0");
      const double b = param(params, "b", dd / (2.0 * kappa));
      const double beta = param(params, "beta", 2.0);
      if (!(b > 0.0)) throw std::invalid_argument("t: b must be > 0");
      if (!(beta > 1.0 && beta <= 2.0)) throw std::invalid_argument("t: beta must lie in (1, 2]");
      auto t = beta == 2.0 ? RadialTransform::ginbeta2(b, d)
                           : RadialTransform::polynomial_profile(b, beta, d);
      ParamMap p{{"kappa", kappa}, {"b", b}, {"beta", beta}};
      // Both eigenvalues tend to 2 b kappa when beta = 2 and decay otherwise.
      const double lim = beta == 2.0 ? 2.0 * b * kappa : 0.0;
      return TargetZooEntry{make_multivariate_t(d, kappa), example, p, t, {}, lim};
    }

    case ZooExample::Example2: {
      reject_unknown(params, {"kappa", "upsilon", "b"}, who);
      const double kappa = param(params, "kappa", 1.0);
      const double ups = param(params, "upsilon", 0.0);
      if (!(kappa > 0.0)) throw std::invalid_argument("example2: kappa must be > 0");
      if (!(ups > -1.5)) throw std::invalid_argument("example2: upsilon must be > -3/2");
      if (!(ups < 7.5)) throw std::invalid_argument("example2: upsilon must be < 15/2");
      const double b = dd / (2.0 * kappa);
      if (params.count("b") && std::abs(params.at("b") - b) > 1e-12 * b)
        throw std::invalid_argument("example2: b must equal d/(2 kappa)");
      const double gamma = (0.5 + ups) * dd;
      const double kb = ups * dd * std::log(b) + (gamma - 1.0) * std::log(2.0);
      auto t = RadialTransform::ginbeta2(b, d);
      auto pot = std::make_shared<PiecewisePotential>(
          who, t, gaussian_log_phi(dd, gamma), kb,
          loglog_tail(dd + kappa, ups * dd + 1.0, gamma, 0.0, b), kappa);
      auto phi = gaussian_log_phi(dd, gamma);
      ParamMap p{{"kappa", kappa}, {"upsilon", ups}, {"b", b}, {"beta", 2.0}};
      return TargetZooEntry{pot, example, p, t,
                            [phi, kb](double r) { return phi(r).value + kb; }, dd};
    }

    case ZooExample::Example3:
    case ZooExample::Example4:
    case ZooExample::Example5:
    case ZooExample::Example6: {
      reject_unknown(params, {"vartheta", "b"}, who);
      const double vartheta = param(params, "vartheta", 1.0);
      if (!(vartheta > 0.0)) throw std::invalid_argument(who + ": vartheta must be > 0");
      const double b = param(params, "b", dd / (2.0 * vartheta));
      if (!(b > 0.0)) throw std::invalid_argument(who + ": b must be > 0");
      const double A = dd * (1.0 + 1.0 / (2.0 * b));
      const double l2 = std::log(2.0), lb = std::log(b);
      double B = 0, C = 0, K = 0, gamma = 0;
      if (example == ZooExample::Example3) {
        B = dd / 2 + 1; C = dd; K = -(dd - 1) * l2 - dd / 2 * lb; gamma = dd;
      } else if (example == ZooExample::Example4) {
        B = 1; C = dd / 2; K = -(dd / 2 - 1) * l2; gamma = dd / 2;
      } else if (example == ZooExample::Example5) {
        B = -(dd / 4 - 1); C = dd / 4; K = -(dd / 4 - 1) * l2 + dd / 4 * lb; gamma = dd / 4;
      } else {
        B = -(dd / 2 - 1); C = 0; K = l2 + dd / 2 * lb; gamma = 0;
      }
      auto t = RadialTransform::ginbeta2(b, d);
      auto pot = std::make_shared<PiecewisePotential>(who, t, gaussian_log_phi(dd, gamma), 0.0,
                                                      loglog_tail(A, B, C, K, b),
                                                      dd / (2.0 * b));
      auto phi = gaussian_log_phi(dd, gamma);
      ParamMap p{{"vartheta", vartheta}, {"b", b}, {"beta", 2.0}};
      return TargetZooEntry{pot, example, p, t, [phi](double r) { return phi(r).value; }, dd};
    }

    case ZooExample::WarmUp: {
      reject_unknown(params, {"R"}, who);
      const double R = param(params, "R", 1.0);
      if (!(R > 0.0)) throw std::invalid_argument("warmup: R must be > 0");
      auto t = RadialTransform::warm_up(d, R);
      auto phi = [dd](double r) {
        const double r2 = r * r;
        const double q = std::sqrt(1.0 + dd * dd * r2 * r2);
        return RadialValues{q, 2.0 * dd * dd * r2 * r / q,
                            6.0 * dd * dd * r2 / q -
                                4.0 * dd * dd * dd * dd * r2 * r2 * r2 / (q * q * q)};
      };
      const double kb = -dd / 2 * std::log(dd) - std::log(2.0);
      auto tail = [dd](double u) {
        const double s = std::exp(u);
        const double q = std::sqrt(1.0 + s * s);
        return LogRadialValues{q + 0.5 * dd * u, s * s / q + 0.5 * dd,
                               s * s / (q * q * q) - 0.5 * dd};
      };
      auto pot = std::make_shared<PiecewisePotential>(who, t, phi, kb, tail, std::nullopt);
      ParamMap p{{"R", R}};
      return TargetZooEntry{pot, example, p, t,
                            [phi, kb](double r) { return phi(r).value + kb; }, 2.0 * dd};
    }
  }
  throw std::invalid_argument("unknown example");
}

TargetZooEntry make_target_by_name(const std::string& name, int d, const ParamMap& params) {
  static const std::regex t_named(R"(t(\d+)_([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?))");
  std::smatch m;
  if (name == "t") return make_example(ZooExample::MultivariateT, d, params);
  if (std::regex_match(name, m, t_named)) {
    ParamMap p = params;
    p["kappa"] = std::stod(m[2].str());
    return make_example(ZooExample::MultivariateT, std::stoi(m[1].str()), p);
  }
  if (name == "example2") return make_example(ZooExample::Example2, d, params);
  if (name == "example3") return make_example(ZooExample::Example3, d, params);
  if (name == "example4") return make_example(ZooExample::Example4, d, params);
  if (name == "example5") return make_example(ZooExample::Example5, d, params);
  if (name == "example6") return make_example(ZooExample::Example6, d, params);
  if (name == "warmup") return make_example(ZooExample::WarmUp, d, params);
  throw std::invalid_argument("unknown target '" + name + "'");
}

double radial_log_density(const IsotropicPotential& p, double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("radius must be nonnegative");
  const int d = p.dimension();
  if (r == 0.0)
    return d == 1 ? -p.value(0.0) : -std::numeric_limits<double>::infinity();
  return (d - 1) * std::log(r) - p.value(r);
}

double radial_log_density_logr(const IsotropicPotential& p, double t) {
  return p.dimension() * t - p.eval_log(t).value;
}

}  // namespace tula
