#include "tula/quadrature.hpp"

#include "tula/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tula {
namespace {

constexpr double kScanLo = -60.0;
constexpr double kScanHi = 700.0;
constexpr double kScanStep = 0.1;
constexpr double kDrop = 50.0;     // mass below e^{-50} of the peak is ignored
constexpr double kCellWidth = 0.02;

}  // namespace

RadialDistribution::RadialDistribution(const IsotropicPotential& p, double extra_power)
    : p_(&p), power_(extra_power) {
  const int n = static_cast<int>((kScanHi - kScanLo) / kScanStep) + 1;
  std::vector<double> ts(n), ph(n);
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    ts[i] = kScanLo + kScanStep * i;
    ph[i] = phi(ts[i]);
    if (ph[i] > best) best = ph[i];
  }
  if (!std::isfinite(best)) throw QuadratureError("radial density is not finite anywhere");
  int lo = 0, hi = n - 1;
  while (lo < n && !(ph[lo] >= best - kDrop)) ++lo;
  while (hi > 0 && !(ph[hi] >= best - kDrop)) --hi;
  if (hi == n - 1)
    throw QuadratureError("radial density decays too slowly to integrate (power " +
                          std::to_string(extra_power) + ")");
  shift_ = best;
  const double a = std::max(kScanLo, ts[lo] - 1.0);
  const double b = ts[hi] + 1.0;
  const int cells = std::max(200, static_cast<int>(std::ceil((b - a) / kCellWidth)));
  edges_.resize(cells + 1);
  for (int i = 0; i <= cells; ++i) edges_[i] = a + (b - a) * i / cells;
  std::vector<double> mass(cells);
  for (int i = 0; i < cells; ++i) mass[i] = cell_integral(edges_[i], edges_[i + 1], shift_);
  prefix_.assign(cells + 1, 0.0);
  suffix_.assign(cells + 1, 0.0);
  for (int i = 0; i < cells; ++i) prefix_[i + 1] = prefix_[i] + mass[i];
  for (int i = cells; i-- > 0;) suffix_[i] = suffix_[i + 1] + mass[i];
  log_z_ = std::log(prefix_.back()) + shift_;
}

double RadialDistribution::phi(double t) const {
  return (p_->dimension() + power_) * t - p_->eval_log(t).value;
}

double RadialDistribution::cell_integral(double a, double b, double shift) const {
  auto f = [&](double t) { return std::exp(phi(t) - shift); };
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0);
}

std::size_t RadialDistribution::locate(double t) const {
  auto it = std::upper_bound(edges_.begin(), edges_.end(), t);
  return static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - edges_.begin()) - 1));
}

double RadialDistribution::cdf(double r) const {
  if (!(r > 0.0)) return 0.0;
  const double t = std::log(r);
  if (t <= edges_.front()) return 0.0;
  if (t >= edges_.back()) return 1.0;
  const std::size_t i = locate(t);
  const double part = cell_integral(edges_[i], t, shift_);
  return std::min(1.0, (prefix_[i] + part) / prefix_.back());
}

double RadialDistribution::log_tail_from_log(double t) const {
  if (t <= edges_.front()) return 0.0;
  if (t < edges_.back()) {
    const std::size_t i = locate(t);
    const double part = cell_integral(t, edges_[i + 1], shift_);
    const double tail = suffix_[i + 1] + part;
    return std::log(tail) - std::log(prefix_.back());
  }
  // Beyond the table: integrate afresh, scaled at t, until the integrand
  // has dropped by kDrop.
  const double base = phi(t);
  if (!std::isfinite(base)) return -std::numeric_limits<double>::infinity();
  double acc = 0.0, a = t;
  for (int k = 0; k < 200000; ++k) {
    const double b = a + kCellWidth * 5;
    acc += cell_integral(a, b, base);
    if (phi(b) < base - kDrop) break;
    a = b;
  }
  return std::log(acc) + base - log_z_;
}

double RadialDistribution::tail(double r) const {
  if (!(r > 0.0)) return 1.0;
  return std::exp(log_tail_from_log(std::log(r)));
}

double radial_moment(const IsotropicPotential& p, double power) {
  if (auto lim = p.moment_exponent_limit(); lim && power >= *lim)
    throw MomentDoesNotExistError("E|x|^" + std::to_string(power) +
                                  " does not exist (moment limit " + std::to_string(*lim) + ")");
  RadialDistribution base(p, 0.0), weighted(p, power);
  return std::exp(weighted.log_normalizer() - base.log_normalizer());
}

double integrate_pieces(const std::function<double(double)>& f, double a, double b,
                        const std::vector<double>& breaks) {
  std::vector<double> edges{a};
  std::vector<double> inner;
  for (double x : breaks)
    if (x > a && x < b) inner.push_back(x);
  std::sort(inner.begin(), inner.end());
  edges.insert(edges.end(), inner.begin(), inner.end());
  edges.push_back(b);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!(edges[i + 1] > edges[i])) continue;
    double err = 0.0;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, edges[i], edges[i + 1],
                                                                            20, 1e-14, &err);
  }
  return total;
}

double log_integrate(const std::function<double(double)>& log_f, double a, double b,
                     const std::vector<double>& breaks) {
  // Scale by the largest value seen on a probe grid to keep exp() in range.
  const double pa = std::isfinite(a) ? a : (std::isfinite(b) ? b - 200.0 : -200.0);
  const double pb = std::isfinite(b) ? b : pa + 400.0;
  double shift = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 4000; ++i) {
    const double v = log_f(pa + (pb - pa) * i / 4000.0);
    if (v > shift) shift = v;
  }
  if (!std::isfinite(shift)) throw QuadratureError("log-density is not finite on the domain");
  auto f = [&](double x) {
    const double v = log_f(x) - shift;
    return std::isfinite(v) ? std::exp(v) : 0.0;
  };
  const double val = integrate_pieces(f, a, b, breaks);
  if (!(val > 0.0) || !std::isfinite(val)) throw QuadratureError("integral is not positive/finite");
  return std::log(val) + shift;
}

}  // namespace tula
