#include "support/oracles.hpp"
#include "tula/targets.hpp"
#include "tula/transform.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using tula::RadialTransform;
using tula::Vector;

namespace {

constexpr double kE = std::numbers::e;

}  // namespace

TEST(GEval, KnotValueIsE) {
  auto t = RadialTransform::ginbeta2(1.0, 1);
  // Exponent polynomial at the knot sums to one.
  EXPECT_NEAR(1.0 - 10.0 / 3.0 + 15.0 / 4.0 - 6.0 / 5.0 + 47.0 / 60.0, 1.0, 1e-15);
  EXPECT_NEAR(t.g(1.0), kE, 1e-12 * kE);
  EXPECT_NEAR(t.bulk_derivative(1.0, 0), kE, 1e-12 * kE);
  EXPECT_NEAR(oracle::ginbeta2(1.0, 1.0), kE, 1e-12 * kE);
}

TEST(GEval, OriginAndTail) {
  auto t = RadialTransform::ginbeta2(1.0, 2);
  EXPECT_EQ(t.g(0.0), 0.0);
  EXPECT_NEAR(t.g(2.0), std::exp(4.0), 1e-12 * std::exp(4.0));
}

TEST(GEval, BulkMatchesLonghandProfile) {
  for (double b : {0.25, 1.0, 3.0}) {
    auto t = RadialTransform::ginbeta2(b, 3);
    for (double r = 0.01; r < t.knot(); r += 0.013) {
      EXPECT_LT(oracle::rel_err(t.g(r), oracle::ginbeta2(b, r)), 1e-13) << "b=" << b << " r=" << r;
      EXPECT_LT(oracle::rel_err(t.g(r, 1), oracle::ginbeta2_d1(b, r)), 1e-12);
    }
  }
}

TEST(GEval, RejectsBadOrder) {
  auto t = RadialTransform::ginbeta2(1.0, 1);
  EXPECT_THROW(t.g(1.0, 4), std::invalid_argument);
  EXPECT_THROW(t.g(1.0, -1), std::invalid_argument);
  EXPECT_THROW(t.g(-1.0, 0), std::invalid_argument);
}

TEST(GInverse, Examples) {
  auto t = RadialTransform::ginbeta2(1.0, 1);
  EXPECT_NEAR(t.inverse(std::exp(4.0)), 2.0, 1e-14);
  EXPECT_EQ(t.inverse(0.0), 0.0);
  const double want = oracle::bisect([](double r) { return oracle::ginbeta2(1.0, r) - 1.5; },
                                     0.0, 1.0);
  const double got = t.inverse(1.5);
  EXPECT_NEAR(got, want, 1e-12);
  EXPECT_LE(std::abs(t.g(got) - 1.5), 1e-12 * 1.5);
}

TEST(GInverse, ResidualAcrossRange) {
  for (auto t : {RadialTransform::ginbeta2(1.0, 2), RadialTransform::polynomial_profile(0.7, 1.5, 2),
                 RadialTransform::warm_up(3, 1.0)}) {
    for (double ls = -30.0; ls < 5.0; ls += 0.01) {
      const double s = std::exp(ls);
      const double r = t.inverse(s);
      EXPECT_LE(std::abs(t.g(r) - s), 1e-12 * std::max(1.0, s)) << "s=" << s;
    }
  }
}

TEST(GInverse, RoundTripOverHundredUnits) {
  // b small enough that g(100) stays a finite double.
  for (auto t : {RadialTransform::ginbeta2(0.05, 1), RadialTransform::polynomial_profile(0.5, 1.5, 1)}) {
    for (int i = 0; i <= 20000; ++i) {
      const double r = 100.0 * i / 20000.0;
      EXPECT_LE(std::abs(t.inverse(t.g(r)) - r), 1e-9 * std::max(1.0, r)) << "r=" << r;
    }
  }
  // Log-coordinate inverse covers radii whose image overflows.
  auto t = RadialTransform::ginbeta2(1.0, 1);
  for (double r = 0.01; r <= 100.0; r += 0.01)
    EXPECT_LE(std::abs(t.inverse_from_log(t.jet(r).log_g) - r), 1e-9 * std::max(1.0, r));
}

TEST(HMap, ForwardExamples) {
  auto t2 = RadialTransform::ginbeta2(1.0, 2);
  Vector x(2);
  x << 2.0, 0.0;
  const Vector y = t2.forward(x);
  EXPECT_NEAR(y[0], std::exp(4.0), 1e-12 * std::exp(4.0));
  EXPECT_EQ(y[1], 0.0);
  EXPECT_EQ(t2.forward(Vector::Zero(2)).norm(), 0.0);

  auto t3 = RadialTransform::ginbeta2(1.0, 3);
  Vector u = Vector::Ones(3) / std::sqrt(3.0);
  const Vector v = t3.forward(u);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(v[i], u[i] * kE, 1e-12);
}

TEST(HMap, InverseExamples) {
  auto t = RadialTransform::ginbeta2(1.0, 2);
  Vector x(2);
  x << std::exp(4.0), 0.0;
  const Vector y = t.backward(x);
  EXPECT_NEAR(y[0], 2.0, 1e-13);
  EXPECT_EQ(y[1], 0.0);
  EXPECT_EQ(t.backward(Vector::Zero(2)).norm(), 0.0);
}

TEST(HMap, RandomRoundTripAndDirection) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ur(0.1, 10.0);
  for (int d : {1, 2, 5}) {
    auto t = RadialTransform::ginbeta2(1.0, d);
    for (int k = 0; k < 1000; ++k) {
      Vector dir(d);
      for (int i = 0; i < d; ++i) dir[i] = nd(rng);
      dir.normalize();
      const Vector x = dir * ur(rng);
      const Vector hx = t.forward(x);
      EXPECT_LE((t.backward(hx) - x).norm(), 1e-9 * x.norm());
      EXPECT_LE((hx / hx.norm() - x / x.norm()).norm(), 1e-12);
    }
  }
}

TEST(LogDet, Examples) {
  auto t1 = RadialTransform::ginbeta2(1.0, 1);
  EXPECT_NEAR(t1.log_det_jacobian(2.0), std::log(4.0) + 4.0, 1e-12);

  auto t2 = RadialTransform::ginbeta2(1.0, 2);
  const double lim = 2.0 * (0.5 * std::log(1.0) + 47.0 / 60.0);
  EXPECT_NEAR(t2.log_det_jacobian(0.0), lim, 1e-14);
  EXPECT_NEAR(t2.log_det_jacobian(1e-9), lim, 1e-8);

  // d = 1 at the radius where g' = 1.
  auto ts = RadialTransform::ginbeta2(0.1, 1);
  const double r1 = oracle::bisect([&](double r) { return ts.g(r, 1) - 1.0; }, 0.0, ts.knot());
  EXPECT_NEAR(ts.log_det_jacobian(r1), 0.0, 1e-12);
  EXPECT_THROW(t1.log_det_jacobian(-1.0), std::invalid_argument);
}

TEST(LogDet, MatchesDirectFormula) {
  auto t = RadialTransform::ginbeta2(0.8, 4);
  for (double r = 0.05; r < 4.0; r += 0.05) {
    const double direct = std::log(t.g(r, 1)) + 3.0 * std::log(t.g(r) / r);
    EXPECT_NEAR(t.log_det_jacobian(r), direct, 1e-11 * std::max(1.0, std::abs(direct)));
  }
}

TEST(Properties, DerivativeConsistency) {
  const double h = 1e-5;
  for (auto t : {RadialTransform::ginbeta2(1.0, 1), RadialTransform::ginbeta2(0.3, 1),
                 RadialTransform::polynomial_profile(1.0, 1.5, 1)}) {
    for (int i = 0; i <= 2000; ++i) {
      const double r = 0.01 + (10.0 - 0.01) * i / 2000.0;
      if (std::abs(r - t.knot()) < 0.01) continue;
      for (int k = 1; k <= 3; ++k) {
        const double fd = oracle::central_diff([&](double x) { return t.g(x, k - 1); }, r, h);
        EXPECT_LT(oracle::rel_err(t.g(r, k), fd), 1e-5) << "r=" << r << " order=" << k;
      }
    }
  }
}

TEST(Properties, KnotSmoothness) {
  for (double beta : {1.1, 1.5, 1.8, 2.0}) {
    for (double b : {0.1, 1.0, 4.0}) {
      auto t = RadialTransform::polynomial_profile(b, beta, 1);
      for (int k = 0; k <= 3; ++k) {
        const double in = t.bulk_derivative(t.knot(), k);
        const double out = t.tail_derivative(t.knot(), k);
        EXPECT_LE(std::abs(in - out), 1e-8 * std::abs(out))
            << "beta=" << beta << " b=" << b << " order=" << k;
      }
    }
  }
}

TEST(Properties, PolynomialProfileReducesToGinbeta2) {
  for (double b : {0.2, 1.0, 2.5}) {
    auto a = RadialTransform::ginbeta2(b, 2);
    auto p = RadialTransform::polynomial_profile(b, 2.0, 2);
    ASSERT_EQ(a.bulk().log_poly.size(), p.bulk().log_poly.size());
    for (std::size_t k = 0; k < a.bulk().log_poly.size(); ++k)
      EXPECT_NEAR(a.bulk().log_poly[k], p.bulk().log_poly[k],
                  1e-12 * std::max(1.0, std::abs(a.bulk().log_poly[k])));
    EXPECT_NEAR(a.bulk().scale, p.bulk().scale, 1e-14);
  }
}

TEST(Properties, Monotone) {
  auto t = RadialTransform::ginbeta2(1.0, 1);
  for (int i = 0; i < 10000; ++i) {
    const double r = 1e-6 + (50.0 - 1e-6) * i / 9999.0;
    EXPECT_GT(t.g(r, 1), 0.0);
    EXPECT_GT(t.jet(r).dlog_g, 0.0);
  }
}

TEST(G1, Ginbeta2Passes) {
  for (double b : {0.5, 1.0, 2.0}) {
    const auto rep = tula::verify_g1_assumption(RadialTransform::ginbeta2(b, 2));
    EXPECT_TRUE(rep.pass) << "b=" << b;
    EXPECT_LE(rep.find("knot_d3")->residual, 1e-8);
  }
}

TEST(G1, WarmUpPasses) {
  const auto rep = tula::verify_g1_assumption(RadialTransform::warm_up(3, 1.0));
  EXPECT_TRUE(rep.pass);
  // Third derivative jumps at the warm-up knot; reported, not required.
  const auto* d3 = rep.find("knot_d3");
  ASSERT_NE(d3, nullptr);
  EXPECT_FALSE(d3->required);
  EXPECT_FALSE(d3->pass);
}

TEST(G1, LinearProfileFailsSecondDerivative) {
  const double b = 1.0, rs = 1.0;
  tula::GinSpec gin{kE / rs, {0.0}, rs};
  RadialTransform t(tula::ExponentialTail{b, 2.0}, gin, 1);
  const auto rep = tula::verify_g1_assumption(t);
  EXPECT_FALSE(rep.pass);
  EXPECT_TRUE(rep.find("knot_value")->pass);
  EXPECT_FALSE(rep.find("knot_d2")->pass);
  EXPECT_EQ(rep.find("knot_d2")->measured, 0.0);
}

TEST(G1, DoubledScaleFailsValue) {
  auto base = RadialTransform::ginbeta2(1.0, 1);
  tula::GinSpec gin = base.bulk();
  gin.scale *= 2.0;
  RadialTransform t(tula::ExponentialTail{1.0, 2.0}, gin, 1);
  const auto rep = tula::verify_g1_assumption(t);
  EXPECT_FALSE(rep.pass);
  EXPECT_FALSE(rep.find("knot_value")->pass);
  EXPECT_NEAR(rep.find("knot_value")->measured, 2.0 * kE, 1e-10);
}

TEST(G1, OriginLimitsFlagLinearExponentTerm) {
  auto base = RadialTransform::ginbeta2(1.0, 1);
  tula::GinSpec gin = base.bulk();
  gin.log_poly[1] = 0.3;
  RadialTransform t(tula::ExponentialTail{1.0, 2.0}, gin, 1);
  const auto rep = tula::verify_g1_assumption(t);
  EXPECT_FALSE(rep.find("lim_dlog_g_over_r_over_r")->pass);
  EXPECT_TRUE(rep.find("lim_d2log_g_over_r")->pass);
}

TEST(G1, TargetCoupledLimitOnlyWithTarget) {
  auto t = RadialTransform::ginbeta2(1.0, 2);
  EXPECT_EQ(tula::verify_g1_assumption(t).find("lim_target_radial_factor"), nullptr);
  auto target = tula::make_multivariate_t(2, 1.0);
  const auto rep = tula::verify_g1_assumption(t, target.get());
  const auto* e = rep.find("lim_target_radial_factor");
  ASSERT_NE(e, nullptr);
  EXPECT_TRUE(e->pass);
  // f''(0) g'(0)^2 with f''(0) = d + kappa and g'(0) = sqrt(b) e^{47/60}.
  EXPECT_NEAR(e->measured, 3.0 * std::exp(47.0 / 30.0), 1e-5);
}
