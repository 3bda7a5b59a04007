#include "support/oracles.hpp"
#include "tula/analysis.hpp"
#include "tula/errors.hpp"
#include "tula/quadrature.hpp"
#include "tula/sampler.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace tula;

namespace {

constexpr double kE = std::numbers::e;

TransformedPotential ex6(int d, const ParamMap& p = {}) {
  return TransformedPotential(make_example(ZooExample::Example6, d, p));
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

SamplerConfig config(double gamma, std::size_t n, std::uint64_t seed,
                     InitialDistribution init = InitialDistribution::origin()) {
  SamplerConfig c;
  c.step_size = gamma;
  c.num_steps = n;
  c.seed = seed;
  c.initial = std::move(init);
  return c;
}

double mean_sq_error(const std::vector<double>& v, double mean) {
  const double ess = effective_sample_size(v);
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  return std::sqrt(var / (v.size() - 1) / ess);
}

}  // namespace

TEST(TulaStep, Examples) {
  auto tp = ex6(2);
  const Vector a = tula_step(tp, vec2(1, 0), 0.1, Vector::Zero(2));
  EXPECT_NEAR(a[0], 0.8, 1e-10);
  EXPECT_NEAR(a[1], 0.0, 1e-15);

  const Vector u = vec2(0.3, -1.2);
  const Vector b = tula_step(tp, Vector::Zero(2), 0.05, u);
  EXPECT_EQ((b - std::sqrt(0.1) * u).norm(), 0.0);

  TransformedPotential t(make_multivariate_t(2, 1.0), RadialTransform::ginbeta2(1.0, 2));
  const Vector c = tula_step(t, vec2(1, 0), 0.01, Vector::Zero(2));
  EXPECT_NEAR(c[0], 1.0 - 0.01 * (6.0 * kE * kE / (1.0 + kE * kE) - 4.0), 1e-14);
  EXPECT_NEAR(c[0], 0.98715218, 1e-8);
}

TEST(TulaStep, NonFiniteInputThrowsWithStep) {
  auto tp = ex6(2);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  try {
    tula_step(tp, vec2(nan, 0), 0.1, Vector::Zero(2), 17);
    FAIL();
  } catch (const DivergenceError& e) {
    EXPECT_EQ(e.step(), 17u);
  }
  EXPECT_THROW(tula_step(tp, vec2(1, 0), 0.0, Vector::Zero(2)), std::invalid_argument);
}

TEST(RunTula, SingleStepIsOneUpdate) {
  auto tp = ex6(2);
  auto cfg = config(0.05, 1, 42, InitialDistribution::point(vec2(0.5, -0.25)));
  const ChainRun run = run_tula(tp, cfg);
  ASSERT_EQ(run.size(), 2u);
  EXPECT_EQ(run.steps[0], 0u);
  EXPECT_EQ(run.steps[1], 1u);
  auto rng = make_chain_engine(42, 0);
  std::normal_distribution<double> nd;
  Vector u(2);
  u[0] = nd(rng);
  u[1] = nd(rng);
  const Vector want = tula_step(tp, vec2(0.5, -0.25), 0.05, u);
  EXPECT_EQ((run.y_samples[1] - want).norm(), 0.0);
}

TEST(RunTula, Reproducible) {
  auto tp = ex6(3);
  auto cfg = config(0.05, 500, 7, InitialDistribution::gaussian());
  const ChainRun a = run_tula(tp, cfg);
  const ChainRun b = run_tula(tp, cfg);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a.y_samples[k], b.y_samples[k]);
  cfg.seed = 8;
  const ChainRun c = run_tula(tp, cfg);
  EXPECT_NE(a.y_samples.back(), c.y_samples.back());
}

TEST(RunTula, ImagesMatchForwardMap) {
  TransformedPotential tp(make_example(ZooExample::MultivariateT, 2, {{"kappa", 3.0}}));
  auto cfg = config(0.01, 2000, 3);
  cfg.thin = 7;
  const ChainRun run = run_tula(tp, cfg);
  EXPECT_EQ(run.size(), 1u + 2000u / 7u);
  const auto xs = run.x_samples();
  for (std::size_t k = 0; k < run.size(); ++k) {
    EXPECT_EQ(run.steps[k], 7u * k);
    const Vector want = tp.transform().forward(run.y_samples[k]);
    EXPECT_LE((xs[k] - want).norm(), 1e-12 * std::max(1.0, want.norm()));
  }
}

TEST(RunTula, HugeStepDiverges) {
  auto tp = ex6(2);
  const ChainRun run = run_tula(tp, config(1e3, 10000, 1, InitialDistribution::point(vec2(1, 0))));
  EXPECT_TRUE(run.divergence_flag);
  ASSERT_TRUE(run.divergence_step.has_value());
  EXPECT_LT(*run.divergence_step, 10000u);
  EXPECT_EQ(run.size(), *run.divergence_step);
  for (const auto& y : run.y_samples) EXPECT_TRUE(y.allFinite());
}

TEST(RunTula, GaussianStationaryCovariance) {
  // Quadratic f_h = (d/2)|y|^2: the ULA fixed point has variance 1/(d(1 - gamma d/2)).
  const int d = 2;
  const double gamma = 0.1;
  auto tp = ex6(d);
  const ChainRun run = run_tula(tp, config(gamma, 200000, 11));
  const double want = 1.0 / (d * (1.0 - gamma * d / 2.0));
  for (int i = 0; i < d; ++i) {
    std::vector<double> sq;
    for (std::size_t k = 1000; k < run.size(); ++k) sq.push_back(run.y_samples[k][i] * run.y_samples[k][i]);
    double m = 0.0;
    for (double v : sq) m += v;
    m /= sq.size();
    const double se = mean_sq_error(sq, m);
    EXPECT_NEAR(m, want, 4.0 * se) << "coord " << i;
    // The exact-target variance 1/d is excluded.
    EXPECT_GT(std::abs(m - 1.0 / d), 4.0 * se);
  }
}

TEST(RunTula, NoiseFreeContraction) {
  const int d = 3;
  auto tp = ex6(d);
  for (double gamma : {0.1, 0.3, 0.6}) {
    Vector y = Vector::Constant(d, 0.4);
    // Stay clear of the hard-zeroed gradient near the origin.
    while (y.norm() > 1e-8) {
      const Vector next = tula_step(tp, y, gamma, Vector::Zero(d));
      EXPECT_NEAR(next.norm(), std::abs(1.0 - gamma * d) * y.norm(), 1e-9 * y.norm());
      y = next;
    }
  }
}

TEST(RunTula, SecondMomentMatchesDiscretizedLaw) {
  // On the quadratic f_h the chain's stationary law is N(0, s2 I) with
  // s2 = 1/(d(1 - gamma d/2)); push it through h by quadrature.
  // vartheta = 6 puts the moment limit at 6, so E|x|^2 exists.
  const int d = 2;
  const double gamma = 0.05;
  auto entry = make_example(ZooExample::Example6, d, {{"vartheta", 6.0}});
  TransformedPotential tp(entry);
  const ChainRun run = run_tula(tp, config(gamma, 200000, 2024));
  ASSERT_FALSE(run.divergence_flag);
  std::vector<double> sq;
  for (std::size_t k = 10000; k < run.size(); ++k) sq.push_back(run.x(k).squaredNorm());
  double m = 0.0;
  for (double v : sq) m += v;
  m /= sq.size();
  const double s2 = 1.0 / (d * (1.0 - gamma * d / 2.0));
  const auto& t = tp.transform();
  auto integrand = [&](double r) { return std::pow(t.g(r), 2) * r / s2 * std::exp(-r * r / (2 * s2)); };
  const double want = oracle::simpson(integrand, 0.0, t.knot(), 4000) +
                      oracle::simpson(integrand, t.knot(), 40.0, 40000);
  EXPECT_NEAR(m, want, 3.0 * mean_sq_error(sq, m));
}

TEST(RunTula, SecondMomentMatchesQuadrature) {
  const int d = 2;
  auto entry = make_example(ZooExample::Example6, d, {{"vartheta", 6.0}});
  TransformedPotential tp(entry);
  const ChainRun run = run_tula(tp, config(0.005, 2000000, 2025));
  ASSERT_FALSE(run.divergence_flag);
  std::vector<double> sq;
  for (std::size_t k = 20000; k < run.size(); ++k) sq.push_back(run.x(k).squaredNorm());
  double m = 0.0;
  for (double v : sq) m += v;
  m /= sq.size();
  const double want = radial_moment(*entry.potential, 2.0);
  EXPECT_NEAR(m, want, 3.0 * mean_sq_error(sq, m));
}

TEST(RunUla, ConstantPotentialIsBrownian) {
  auto flat = std::make_shared<FunctionPotential>(
      2, "flat", [](double) { return RadialValues{1.0, 0.0, 0.0}; });
  auto cfg = config(0.02, 5, 99);
  const ChainRun run = run_ula(*flat, cfg);
  auto rng = make_chain_engine(99, 0);
  std::normal_distribution<double> nd;
  Vector y = Vector::Zero(2);
  for (std::size_t k = 1; k <= 5; ++k) {
    Vector u(2);
    u[0] = nd(rng);
    u[1] = nd(rng);
    y += std::sqrt(0.04) * u;
    EXPECT_LE((run.y_samples[k] - y).norm(), 1e-15);
  }
  EXPECT_EQ(run.x(3), run.y_samples[3]);
}

TEST(RunUla, FirstStepFromOriginIsNoise) {
  auto p = make_multivariate_t(2, 1.0);
  const ChainRun run = run_ula(*p, config(0.1, 1, 5));
  auto rng = make_chain_engine(5, 0);
  std::normal_distribution<double> nd;
  Vector u(2);
  u[0] = nd(rng);
  u[1] = nd(rng);
  EXPECT_EQ((run.y_samples[1] - std::sqrt(0.2) * u).norm(), 0.0);
}

TEST(Chains, DeterministicAndIndependent) {
  auto tp = ex6(2);
  auto cfg = config(0.05, 300, 13, InitialDistribution::gaussian());
  cfg.num_chains = 4;
  const auto a = run_tula_chains(tp, cfg);
  const auto b = run_tula_chains(tp, cfg);
  ASSERT_EQ(a.size(), 4u);
  for (std::size_t c = 0; c < 4; ++c) {
    EXPECT_EQ(a[c].chain_index, c);
    EXPECT_EQ(a[c].y_samples.back(), b[c].y_samples.back());
    if (c) EXPECT_NE(a[c].y_samples.back(), a[0].y_samples.back());
  }
  EXPECT_GE(worker_count(4), 1u);
  EXPECT_LE(worker_count(4), 4u);
  EXPECT_EQ(worker_count(1), 1u);
}

TEST(Config, Validation) {
  auto tp = ex6(2);
  auto cfg = config(0.0, 10, 1);
  EXPECT_THROW(run_tula(tp, cfg), std::invalid_argument);
  cfg = config(0.1, 0, 1);
  EXPECT_THROW(run_tula(tp, cfg), std::invalid_argument);
  cfg = config(0.1, 10, 1);
  cfg.thin = 0;
  EXPECT_THROW(run_tula(tp, cfg), std::invalid_argument);
  cfg = config(0.1, 10, 1, InitialDistribution::point(Vector::Zero(3)));
  EXPECT_THROW(run_tula(tp, cfg), std::invalid_argument);
}

TEST(Planner, Example) {
  const StepPlan p = plan_step_size(8.0, 4.0 / 7.0, 4, 0.1, 4.0);
  EXPECT_NEAR(p.gamma, 7.0 / 512.0 * (0.1 / 16.0), 1e-18);
  EXPECT_NEAR(p.gamma, 8.5449e-5, 1e-9);
  // (2/7) / gamma * log 80 = 14652.066..., so the ceiling is 14653.
  EXPECT_EQ(p.num_steps, 14653u);
}

TEST(Planner, Branches) {
  const StepPlan sat = plan_step_size(2.0, 0.5, 3, 20.0, 100.0);
  EXPECT_DOUBLE_EQ(sat.gamma, 1.0 / (2.0 * 4.0 * 0.5));
  const StepPlan a = plan_step_size(8.0, 0.5, 4, 0.2, 4.0);
  const StepPlan b = plan_step_size(8.0, 0.5, 4, 0.1, 4.0);
  EXPECT_NEAR(b.gamma, a.gamma / 2.0, 1e-18);
  const double ratio = static_cast<double>(b.num_steps) / a.num_steps;
  EXPECT_NEAR(ratio, 2.0 * std::log(80.0) / std::log(40.0), 1e-3);
  EXPECT_THROW(plan_step_size(0.0, 1, 1, 1, 1), std::invalid_argument);
  EXPECT_THROW(plan_step_size(1, 1, 1, -1, 1), std::invalid_argument);
}
