#pragma once

// Independent reference computations used by the tests: finite differences,
// bisection, plain quadrature and closed forms written out longhand.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
}

inline double central_diff(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double five_point_diff(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12.0 * h);
}

inline double second_diff(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

/// Root of an increasing function on [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double tol = 1e-15) {
  for (int i = 0; i < 400 && hi - lo > tol * std::max(1.0, std::abs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                   const Eigen::VectorXd& y, double h) {
  Eigen::VectorXd g(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    Eigen::VectorXd a = y, b = y, c = y, d = y;
    a[i] += 2 * h;
    b[i] += h;
    c[i] -= h;
    d[i] -= 2 * h;
    g[i] = (-f(a) + 8 * f(b) - 8 * f(c) + f(d)) / (12 * h);
  }
  return g;
}

/// Hessian from 5-point differences of an analytic gradient, symmetrized.
inline Eigen::MatrixXd fd_hessian(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& grad,
    const Eigen::VectorXd& y, double h) {
  const Eigen::Index n = y.size();
  Eigen::MatrixXd H(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::VectorXd a = y, b = y, c = y, d = y;
    a[j] += 2 * h;
    b[j] += h;
    c[j] -= h;
    d[j] -= 2 * h;
    H.col(j) = (-grad(a) + 8 * grad(b) - 8 * grad(c) + grad(d)) / (12 * h);
  }
  return 0.5 * (H + H.transpose());
}

/// Composite Simpson on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

/// The beta = 2 bulk profile typed in directly from its defining formula.
inline double ginbeta2(double b, double r) {
  const double sb = std::sqrt(b);
  const double p = b * r * r - 10.0 / 3.0 * std::pow(b, 1.5) * std::pow(r, 3) +
                   15.0 / 4.0 * b * b * std::pow(r, 4) - 6.0 / 5.0 * std::pow(b, 2.5) * std::pow(r, 5) +
                   47.0 / 60.0;
  return r * sb * std::exp(p);
}

/// The same profile's derivative by the product rule.
inline double ginbeta2_d1(double b, double r) {
  const double dp = 2 * b * r - 10.0 * std::pow(b, 1.5) * r * r + 15.0 * b * b * std::pow(r, 3) -
                    6.0 * std::pow(b, 2.5) * std::pow(r, 4);
  return ginbeta2(b, r) * (1.0 / r + dp);
}

}  // namespace oracle
