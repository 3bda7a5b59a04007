#include "tula/analysis.hpp"

#include "tula/errors.hpp"
#include "tula/quadrature.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace tula {
namespace {

constexpr double kEqualityTol = 1e-12;

bool nearly_equal(double x, double y) {
  return std::abs(x - y) <= kEqualityTol * std::max({std::abs(x), std::abs(y), 1e-300});
}

double tail_beta(const RadialTransform& t) {
  if (const auto* e = std::get_if<ExponentialTail>(&t.tail())) return e->beta;
  return 2.0;
}

double get_or(const std::map<std::string, double>& m, const std::string& k, double fallback) {
  auto it = m.find(k);
  return it == m.end() ? fallback : it->second;
}

}  // namespace

std::string to_string(Assumption a) {
  switch (a) {
    case Assumption::A1_dissipativity: return "A1_dissipativity";
    case Assumption::A2_degenerate_convexity: return "A2_degenerate_convexity";
    case Assumption::A3_strong_convexity: return "A3_strong_convexity";
    case Assumption::A4_gradient_lipschitz: return "A4_gradient_lipschitz";
    case Assumption::A5_tail: return "A5_tail";
  }
  return "unknown";
}

Assumption parse_assumption(const std::string& s) {
  for (Assumption a : {Assumption::A1_dissipativity, Assumption::A2_degenerate_convexity,
                       Assumption::A3_strong_convexity, Assumption::A4_gradient_lipschitz,
                       Assumption::A5_tail}) {
    const std::string full = to_string(a);
    if (s == full || s == full.substr(0, 2) || s == full.substr(3)) return a;
  }
  throw std::invalid_argument("unknown assumption '" + s + "'");
}

std::vector<double> default_assumption_grid(const RadialTransform& t, int n, double r_max) {
  const double lo = std::max(t.knot(), 0.1);
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i)
    g[i] = std::exp(std::log(lo) + (std::log(r_max) - std::log(lo)) * i / (n - 1));
  return g;
}

AssumptionReport check_assumption(const TransformedPotential& tp, Assumption which,
                                  std::vector<double> grid,
                                  const std::map<std::string, double>& candidate) {
  const RadialTransform& tr = tp.transform();
  if (grid.empty()) grid = default_assumption_grid(tr);
  if (grid.size() < 2) throw std::invalid_argument("assumption grid needs at least 2 radii");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= tr.knot() * (1.0 - 1e-12)))
      throw std::invalid_argument("assumption grid must lie in the tail region r >= knot");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw std::invalid_argument("assumption grid must be strictly increasing");
  }

  const std::size_t n = grid.size();
  const std::size_t nfit = std::clamp<std::size_t>(n * 9 / 10, 1, n - 1);
  const double beta = tail_beta(tr);

  AssumptionReport rep;
  rep.assumption = which;
  rep.grid = grid;
  rep.lhs.resize(n);
  rep.rhs.resize(n);
  rep.validation_from_radius = grid[nfit];
  auto& c = rep.constants;
  auto fit = [&](const std::string& key, double value) {
    if (candidate.count(key)) {
      c[key] = candidate.at(key);
    } else {
      c[key] = value;
      rep.fitted.push_back(key);
    }
    return c[key];
  };
  // Fitted bounds are the extremum over the fitting window moved outward by
  // kFitSlack, so a ratio still drifting toward its limit can pass validation.
  constexpr double kFitSlack = 1e-2;
  auto widen = [&](double v, bool down) {
    return v + (down ? -1.0 : 1.0) * kFitSlack * std::abs(v);
  };
  auto inf_fit = [&](auto&& f) {
    double v = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nfit; ++i) v = std::min(v, f(i));
    return widen(v, true);
  };
  auto sup_fit = [&](auto&& f) {
    double v = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nfit; ++i) v = std::max(v, f(i));
    return widen(v, false);
  };

  // lower_bound: the inequality is lhs >= rhs; otherwise lhs <= rhs.
  bool lower_bound = true;
  std::vector<HessianEigenvalues> ev;
  if (which != Assumption::A1_dissipativity && which != Assumption::A5_tail)
    for (double r : grid) ev.push_back(tp.eigenvalues(r));
  // Both lines of the convexity/Lipschitz assumptions, the tangential one
  // included, as the assumptions are stated.
  auto lo_ev = [&](std::size_t i) { return std::min(ev[i].lambda_radial, ev[i].lambda_tangential); };
  auto hi_ev = [&](std::size_t i) { return std::max(ev[i].lambda_radial, ev[i].lambda_tangential); };

  switch (which) {
    case Assumption::A1_dissipativity: {
      std::vector<double> e(n);
      for (std::size_t i = 0; i < n; ++i) e[i] = grid[i] * tp.radial_gradient(grid[i]);
      const double alpha = fit("alpha", beta);
      const double b0 = get_or(candidate, "B", 0.0);
      const double A = fit("A", inf_fit([&](std::size_t i) {
                             return (e[i] + b0) / std::pow(grid[i], alpha);
                           }));
      const double B = fit("B", std::max(0.0, sup_fit([&](std::size_t i) {
                                   return A * std::pow(grid[i], alpha) - e[i];
                                 })));
      for (std::size_t i = 0; i < n; ++i) {
        rep.lhs[i] = e[i];
        rep.rhs[i] = A * std::pow(grid[i], alpha) - B;
      }
      break;
    }
    case Assumption::A2_degenerate_convexity: {
      const double theta = fit("theta", 2.0 - beta);
      auto w = [&](std::size_t i) { return std::pow(1.0 + 0.25 * grid[i] * grid[i], -0.5 * theta); };
      const double mu = fit("mu", inf_fit([&](std::size_t i) { return lo_ev(i) / w(i); }));
      for (std::size_t i = 0; i < n; ++i) {
        rep.lhs[i] = lo_ev(i);
        rep.rhs[i] = mu * w(i);
      }
      break;
    }
    case Assumption::A3_strong_convexity: {
      const double rho = fit("rho", inf_fit(lo_ev));
      for (std::size_t i = 0; i < n; ++i) {
        rep.lhs[i] = lo_ev(i);
        rep.rhs[i] = rho;
      }
      break;
    }
    case Assumption::A4_gradient_lipschitz: {
      lower_bound = false;
      const double L = fit("L", sup_fit(hi_ev));
      for (std::size_t i = 0; i < n; ++i) {
        rep.lhs[i] = hi_ev(i);
        rep.rhs[i] = L;
      }
      break;
    }
    case Assumption::A5_tail: {
      lower_bound = false;
      const double m = fit("m", 0.0);
      const double alpha1 = fit("alpha1", 1.0);
      if (m < 0.0 || alpha1 < 0.0 || alpha1 > 1.0)
        throw std::invalid_argument("A5 needs m >= 0 and alpha1 in [0, 1]");
      RadialDistribution dist(tp.target());
      std::vector<double> lt(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double lg = tr.jet(grid[i]).log_g;
        const double ls = m > 0.0 ? lg + std::log1p(m * std::exp(-lg)) : lg;
        lt[i] = dist.log_tail_from_log(ls);
      }
      const double l2 = std::log(2.0);
      const double C = fit("C_tail", sup_fit([&](std::size_t i) {
                             return grid[i] / std::pow(l2 - lt[i], 1.0 / alpha1);
                           }));
      for (std::size_t i = 0; i < n; ++i) {
        rep.lhs[i] = lt[i];
        rep.rhs[i] = l2 - std::pow(grid[i] / C, alpha1);
      }
      break;
    }
  }

  auto holds = [&](std::size_t i) {
    // Eigenvalues from the log-coordinate jets carry ~1e-11 relative rounding.
    const double tol = 1e-9 * std::max(1.0, std::abs(rep.rhs[i]));
    if (!std::isfinite(rep.lhs[i])) return false;
    return lower_bound ? rep.lhs[i] >= rep.rhs[i] - tol : rep.lhs[i] <= rep.rhs[i] + tol;
  };
  std::size_t start = n;
  while (start > 0 && holds(start - 1)) --start;
  if (start < n) rep.satisfied_from_radius = grid[start];
  rep.pass = start <= nfit;
  // A non-positive rate makes the convexity and dissipativity bounds vacuous.
  const char* rate = which == Assumption::A1_dissipativity          ? "A"
                     : which == Assumption::A2_degenerate_convexity ? "mu"
                     : which == Assumption::A3_strong_convexity     ? "rho"
                                                                    : nullptr;
  if (rate && !(c.at(rate) > 0.0)) rep.pass = false;
  return rep;
}

LsiEstimate solve_lsi_bound(std::vector<double> r, std::vector<double> beta_bar) {
  if (r.size() < 2 || r.size() != beta_bar.size())
    throw std::invalid_argument("solve_lsi_bound: need matching tables of at least 2 nodes");
  const std::size_t n = r.size();
  if (r[0] != 0.0) {
    r.insert(r.begin(), 0.0);
    beta_bar.insert(beta_bar.begin(), beta_bar.front());
  }
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i > 0 && !(r[i] > r[i - 1])) throw std::invalid_argument("radii must increase");
    if (!(beta_bar[i] > 0.0)) throw NotApplicableError("beta_bar must be positive");
  }
  (void)n;
  const std::size_t m = r.size();

  // Node-wise cumulative integrals of beta_bar and r * beta_bar. Simpson is
  // exact for both on a linear interpolant.
  std::vector<double> ci(m, 0.0), cj(m, 0.0);
  auto cell = [&](std::size_t i, double a, double b, double& I, double& J) {
    auto bb = [&](double x) {
      const double w = (x - r[i]) / (r[i + 1] - r[i]);
      return beta_bar[i] + w * (beta_bar[i + 1] - beta_bar[i]);
    };
    const double mid = 0.5 * (a + b), h = b - a;
    I = h / 6.0 * (bb(a) + 4.0 * bb(mid) + bb(b));
    J = h / 6.0 * (a * bb(a) + 4.0 * mid * bb(mid) + b * bb(b));
  };
  for (std::size_t i = 0; i + 1 < m; ++i) {
    double I, J;
    cell(i, r[i], r[i + 1], I, J);
    ci[i + 1] = ci[i] + I;
    cj[i + 1] = cj[i] + J;
  }
  auto integrals = [&](double a, double& I, double& J) {
    if (a >= r.back()) {
      const double c = beta_bar.back(), rb = r.back();
      I = ci.back() + c * (a - rb);
      J = cj.back() + 0.5 * c * (a * a - rb * rb);
      return;
    }
    const std::size_t i =
        static_cast<std::size_t>(std::upper_bound(r.begin(), r.end(), a) - r.begin()) - 1;
    double pi, pj;
    cell(i, r[i], a, pi, pj);
    I = ci[i] + pi;
    J = cj[i] + pj;
  };
  auto F = [&](double a) {
    double I, J;
    integrals(a, I, J);
    return a * I - 2.0;
  };

  double lo = 0.0, hi = 1.0;
  while (F(hi) < 0.0) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (F(mid) < 0.0 ? lo : hi) = mid;
  }
  LsiEstimate est;
  est.a0 = 0.5 * (lo + hi);
  double I, J;
  integrals(est.a0, I, J);
  est.root_residual = std::abs(est.a0 * I - 2.0);
  est.bound = est.a0 * est.a0 * std::exp(J - 1.0);
  est.r = std::move(r);
  est.beta_bar = std::move(beta_bar);
  return est;
}

LsiEstimate estimate_lsi(const TransformedPotential& tp, double r_max, int grid_size,
                         std::optional<double> tail_limit) {
  if (!(r_max > 0.0) || grid_size < 2) throw std::invalid_argument("estimate_lsi: bad grid");
  const int n = grid_size;
  std::vector<double> r(n + 1), l1(n + 1), l2(n + 1), lmin(n + 1);
  for (int i = 0; i <= n; ++i) {
    r[i] = r_max * i / n;
    // The origin value is the r -> 0+ limit.
    const HessianEigenvalues ev = tp.eigenvalues(i == 0 ? 1e-8 : r[i]);
    l1[i] = ev.lambda_radial;
    l2[i] = ev.lambda_tangential;
    lmin[i] = ev.smallest();
    if (!std::isfinite(lmin[i])) throw NotApplicableError("Hessian eigenvalue is not finite");
  }
  std::vector<double> bb(n + 1);
  double run = tail_limit ? *tail_limit : std::numeric_limits<double>::infinity();
  for (int i = n; i >= 0; --i) {
    run = std::min(run, lmin[i]);
    bb[i] = run;
  }
  if (!(bb[0] > 0.0))
    throw NotApplicableError("smallest Hessian eigenvalue of f_h is not positive on [0, r_max]");
  LsiEstimate est = solve_lsi_bound(r, bb);
  est.lambda_radial = std::move(l1);
  est.lambda_tangential = std::move(l2);
  return est;
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::SuperPoincare: return "super_poincare";
    case Regime::Poincare: return "poincare";
    case Regime::WeakPoincare: return "weak_poincare";
  }
  return "unknown";
}

RegimeVerdict classify_regime(const RegimeInput& input, double vartheta, int d) {
  if (!(vartheta > 0.0)) throw std::invalid_argument("vartheta must be > 0");
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  auto check_beta_b = [](double beta, double b) {
    if (!(beta > 1.0 && beta <= 2.0)) throw std::invalid_argument("beta must lie in (1, 2]");
    if (!(b > 0.0)) throw std::invalid_argument("b must be > 0");
  };
  const double dd = d;
  RegimeVerdict v;

  if (const auto* p = std::get_if<DissipativityParams>(&input)) {
    check_beta_b(p->beta, p->b);
    if (!(p->alpha >= 1.0 && p->alpha <= 2.0)) throw std::invalid_argument("alpha must lie in [1, 2]");
    if (!(p->A > 0.0)) throw std::invalid_argument("A must be > 0");
    if (!(p->B >= 0.0)) throw std::invalid_argument("B must be >= 0");
    const bool same = nearly_equal(p->alpha, p->beta);
    if (!same && p->alpha < p->beta)
      throw std::invalid_argument("dissipativity classification needs alpha >= beta");
    const double thr = p->A / (p->beta * p->b);
    OmegaWitness w{p->A / p->alpha * std::pow(p->b, -p->alpha / p->beta),
                   p->alpha / p->beta - 1.0, -vartheta, -p->B / p->beta};
    if (!same) {
      v = {Regime::SuperPoincare, w, "dissipativity.super.alpha_gt_beta"};
    } else if (vartheta < thr && !nearly_equal(vartheta, thr)) {
      v = {Regime::SuperPoincare, w, "dissipativity.super.alpha_eq_beta.vartheta_lt_threshold"};
    } else {
      v = {Regime::WeakPoincare, std::nullopt, "dissipativity.weak.vartheta_ge_threshold"};
    }
    return v;
  }

  if (const auto* p = std::get_if<DegenerateConvexityParams>(&input)) {
    check_beta_b(p->beta, p->b);
    if (!(p->mu > 0.0)) throw std::invalid_argument("mu must be > 0");
    if (!(p->theta >= 0.0)) throw std::invalid_argument("theta must be >= 0");
    const double edge = 2.0 - p->beta;
    const bool same = nearly_equal(p->theta, edge) || (edge == 0.0 && p->theta == 0.0);
    const double thr = p->mu / (p->beta * p->b);
    const double expo = (2.0 - p->theta) / p->beta;
    if (!same && p->theta < edge) {
      OmegaWitness w{p->mu * std::pow(p->b, -expo) / ((1.0 - p->theta) * (2.0 - p->theta)),
                     expo - 1.0, 1.0 - (dd + vartheta), -(dd - p->beta) / p->beta};
      v = {Regime::SuperPoincare, w, "degenerate_convexity.super.theta_lt_edge"};
    } else if (same && vartheta < thr && !nearly_equal(vartheta, thr)) {
      OmegaWitness w{std::pow(p->b, -expo), expo - 1.0, -vartheta, -(dd - p->beta) / p->beta};
      v = {Regime::SuperPoincare, w, "degenerate_convexity.super.theta_eq_edge.vartheta_lt_threshold"};
    } else if (same) {
      v = {Regime::WeakPoincare, std::nullopt, "degenerate_convexity.weak.vartheta_ge_threshold"};
    } else {
      v = {Regime::WeakPoincare, std::nullopt, "degenerate_convexity.weak.theta_gt_edge"};
    }
    return v;
  }

  const auto& p = std::get<StrongConvexityParams>(input);
  check_beta_b(p.beta, p.b);
  if (!(p.rho > 0.0)) throw std::invalid_argument("rho must be > 0");
  const double thr = p.rho / (2.0 * p.b);
  OmegaWitness w{0.5 * p.rho * std::pow(p.b, -2.0 / p.beta), 2.0 / p.beta - 1.0, -vartheta,
                 -(dd - p.beta) / p.beta};
  const bool beta2 = nearly_equal(p.beta, 2.0);
  const bool at_thr = nearly_equal(vartheta, thr);
  if (!beta2) {
    v = {Regime::SuperPoincare, w, "strong_convexity.super.beta_lt_2"};
  } else if (vartheta < thr && !at_thr) {
    v = {Regime::SuperPoincare, w, "strong_convexity.super.vartheta_lt_threshold"};
  } else if (at_thr && d <= 2) {
    v = {Regime::Poincare, std::nullopt, "strong_convexity.poincare.vartheta_eq_threshold.d_le_2"};
  } else if (at_thr) {
    v = {Regime::WeakPoincare, std::nullopt, "strong_convexity.weak.vartheta_eq_threshold.d_ge_3"};
  } else {
    v = {Regime::WeakPoincare, std::nullopt, "strong_convexity.weak.vartheta_gt_threshold"};
  }
  return v;
}

double effective_sample_size(const std::vector<double>& series) {
  const std::size_t n = series.size();
  if (n < 4) return static_cast<double>(n);
  const double mean = std::accumulate(series.begin(), series.end(), 0.0) / n;
  std::size_t m = 1;
  while (m < 2 * n) m <<= 1;
  std::vector<double> buf(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) buf[i] = series[i] - mean;

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> power;
  fft.fwd(power, buf);
  for (auto& z : power) z = std::norm(z);
  std::vector<double> acov;
  fft.inv(acov, power);
  const double c0 = acov[0];
  if (!(c0 > 0.0)) return static_cast<double>(n);
  auto rho = [&](std::size_t k) { return acov[k] / c0; };

  // Initial positive, then monotone, sequence of paired autocorrelations.
  double sum = 0.0, prev = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < n; k += 2) {
    double pair = rho(k) + rho(k + 1);
    if (!(pair > 0.0)) break;
    pair = std::min(pair, prev);
    prev = pair;
    sum += pair;
  }
  const double tau = std::max(-1.0 + 2.0 * sum, 1e-12);
  return std::min(n / tau, n * std::log10(static_cast<double>(n)));
}

namespace {

struct SeriesStats {
  double mean = 0.0, var = 0.0, ess = 0.0;
};

SeriesStats pooled_stats(const std::vector<std::vector<double>>& chains) {
  SeriesStats s;
  std::size_t n = 0;
  for (const auto& c : chains) {
    for (double v : c) s.mean += v;
    n += c.size();
    s.ess += effective_sample_size(c);
  }
  s.mean /= n;
  for (const auto& c : chains)
    for (double v : c) s.var += (v - s.mean) * (v - s.mean);
  s.var /= std::max<std::size_t>(1, n - 1);
  return s;
}

}  // namespace

RadialDiagnostics radial_diagnostics(const std::vector<ChainRun>& runs,
                                     const IsotropicPotential& p, std::size_t burn_in,
                                     const std::vector<double>& powers,
                                     const std::vector<double>& thresholds) {
  const auto limit = p.moment_exponent_limit();
  for (double pw : powers)
    if (limit && pw >= *limit)
      throw MomentDoesNotExistError("E|x|^" + std::to_string(pw) +
                                    " does not exist for this target");

  std::vector<std::vector<double>> radii;
  std::size_t total = 0;
  for (const auto& run : runs) {
    std::vector<double> rs;
    for (std::size_t k = burn_in; k < run.size(); ++k) rs.push_back(run.x(k).norm());
    total += rs.size();
    if (!rs.empty()) radii.push_back(std::move(rs));
  }
  if (total == 0) throw std::invalid_argument("no samples after burn-in");

  RadialDiagnostics out;
  out.samples = total;
  RadialDistribution dist(p);

  std::vector<std::vector<double>> pit(radii.size());
  std::vector<double> pooled_cdf;
  pooled_cdf.reserve(total);
  for (std::size_t c = 0; c < radii.size(); ++c) {
    pit[c].reserve(radii[c].size());
    for (double r : radii[c]) pit[c].push_back(dist.cdf(r));
    pooled_cdf.insert(pooled_cdf.end(), pit[c].begin(), pit[c].end());
    out.ess += effective_sample_size(pit[c]);
  }
  // The CDF is monotone, so sorting the PIT values sorts the radii.
  std::sort(pooled_cdf.begin(), pooled_cdf.end());
  const double nn = static_cast<double>(total);
  for (std::size_t i = 0; i < total; ++i) {
    const double F = pooled_cdf[i];
    out.ks_statistic = std::max({out.ks_statistic, (i + 1) / nn - F, F - i / nn});
  }
  out.ks_critical = 1.628 / std::sqrt(out.ess);
  out.ks_pass = out.ks_statistic < out.ks_critical;

  std::vector<double> pw = powers;
  if (pw.empty())
    for (double q : {1.0, 2.0})
      if (!limit || q < *limit) pw.push_back(q);
  for (double q : pw) {
    std::vector<std::vector<double>> series(radii.size());
    for (std::size_t c = 0; c < radii.size(); ++c)
      for (double r : radii[c]) series[c].push_back(std::pow(r, q));
    const SeriesStats st = pooled_stats(series);
    MomentCheck mc;
    mc.power = q;
    mc.empirical = st.mean;
    mc.expected = radial_moment(p, q);
    mc.ess = st.ess;
    mc.std_error = std::sqrt(st.var / st.ess);
    mc.within = std::abs(mc.empirical - mc.expected) <= 3.0 * mc.std_error;
    out.moments.push_back(mc);
  }
  for (double thr : thresholds) {
    std::vector<std::vector<double>> series(radii.size());
    for (std::size_t c = 0; c < radii.size(); ++c)
      for (double r : radii[c]) series[c].push_back(r > thr ? 1.0 : 0.0);
    const SeriesStats st = pooled_stats(series);
    TailCheck tc;
    tc.threshold = thr;
    tc.empirical = st.mean;
    tc.expected = dist.tail(thr);
    tc.ess = st.ess;
    tc.std_error = std::sqrt(st.var / st.ess);
    tc.within = std::abs(tc.empirical - tc.expected) <= 3.0 * tc.std_error;
    out.tails.push_back(tc);
  }
  return out;
}

RadialDiagnostics radial_diagnostics(const ChainRun& run, const IsotropicPotential& p,
                                     std::size_t burn_in, const std::vector<double>& powers,
                                     const std::vector<double>& thresholds) {
  return radial_diagnostics(std::vector<ChainRun>{run}, p, burn_in, powers, thresholds);
}

double kl_quadrature_1d(const std::function<double(double)>& log_density_a,
                        const std::function<double(double)>& log_density_b, double lo,
                        double hi, const std::vector<double>& breaks) {
  const double za = log_integrate(log_density_a, lo, hi, breaks);
  const double zb = log_integrate(log_density_b, lo, hi, breaks);
  auto f = [&](double x) {
    const double la = log_density_a(x) - za;
    if (!std::isfinite(la)) return 0.0;
    const double pa = std::exp(la);
    if (pa == 0.0) return 0.0;
    return pa * (la - (log_density_b(x) - zb));
  };
  const double kl = integrate_pieces(f, lo, hi, breaks);
  if (!std::isfinite(kl)) throw QuadratureError("KL integrand is not integrable");
  return kl;
}

}  // namespace tula
