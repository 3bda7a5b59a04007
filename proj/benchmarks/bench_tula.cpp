#include "tula/tula.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace tula;

namespace {

TransformedPotential t_target(int d) {
  return TransformedPotential(make_example(ZooExample::MultivariateT, d, {{"kappa", 3.0}}));
}

Vector point(int d, double r) {
  Vector y = Vector::Ones(d);
  return r * y / y.norm();
}

void BM_TulaStep(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  auto tp = t_target(d);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  Vector y = point(d, 1.0), u(d);
  for (auto _ : state) {
    for (int i = 0; i < d; ++i) u[i] = nd(rng);
    y = tula_step(tp, y, 0.01, u);
    benchmark::DoNotOptimize(y.data());
  }
}
BENCHMARK(BM_TulaStep)->Arg(2)->Arg(10)->Arg(100);

void BM_Gradient(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  auto tp = t_target(d);
  const Vector y = point(d, 2.5);
  for (auto _ : state) benchmark::DoNotOptimize(transformed_gradient(tp, y));
}
BENCHMARK(BM_Gradient)->Arg(2)->Arg(10)->Arg(100);

void BM_Eigenvalues(benchmark::State& state) {
  auto tp = t_target(5);
  double r = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tp.eigenvalues(r));
    r = r > 20.0 ? 0.1 : r + 0.37;
  }
}
BENCHMARK(BM_Eigenvalues);

void BM_Inverse(benchmark::State& state) {
  const auto t = RadialTransform::ginbeta2(0.5, 3);
  double s = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(t.inverse(s));
    s = s > 1e6 ? 0.01 : s * 1.7;
  }
}
BENCHMARK(BM_Inverse);

void BM_EstimateLsi(benchmark::State& state) {
  auto e = make_example(ZooExample::Example3, 4);
  TransformedPotential tp(e);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        estimate_lsi(tp, 10.0, static_cast<int>(state.range(0)), e.tail_eigenvalue_limit).bound);
}
BENCHMARK(BM_EstimateLsi)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
