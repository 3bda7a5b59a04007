#pragma once

// ULA / TULA chains and the step-size planner.

#include "tula/dynamics.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <vector>

namespace tula {

struct InitialDistribution {
  enum class Kind { PointMass, Gaussian };
  Kind kind = Kind::Gaussian;
  Vector mean;         // empty means the origin
  double scale = 0.0;  // Gaussian only; <= 0 picks 1/sqrt(L) from the potential

  static InitialDistribution point(Vector at) { return {Kind::PointMass, std::move(at), 0.0}; }
  static InitialDistribution origin() { return {Kind::PointMass, Vector(), 0.0}; }
  static InitialDistribution gaussian(Vector mean = Vector(), double scale = 0.0) {
    return {Kind::Gaussian, std::move(mean), scale};
  }
};

struct SamplerConfig {
  double step_size = 0.01;
  std::size_t num_steps = 1000;
  std::uint64_t seed = 0;
  InitialDistribution initial;
  std::size_t thin = 1;
  std::size_t num_chains = 1;
  /// Optional gamma_k for step k (1-based); overrides step_size when set.
  std::function<double(std::size_t)> step_schedule;

  void validate() const;
};

/// One chain. Recorded iterates live in y-space; the x-space images are
/// computed on demand through the transform.
struct ChainRun {
  SamplerConfig config;
  std::size_t chain_index = 0;
  std::vector<std::size_t> steps;  // iteration index of each record, 0 = initial point
  std::vector<Vector> y_samples;
  bool divergence_flag = false;
  std::optional<std::size_t> divergence_step;
  /// Null for plain ULA, where x = y.
  std::shared_ptr<const RadialTransform> transform;

  std::size_t size() const noexcept { return y_samples.size(); }
  Vector x(std::size_t k) const;
  std::vector<Vector> x_samples() const;
};

/// Deterministic per-chain engine derived from (seed, chain) via SplitMix64.
std::mt19937_64 make_chain_engine(std::uint64_t seed, std::uint64_t chain);

/// y - gamma grad f_h(y) + sqrt(2 gamma) noise.
Vector tula_step(const TransformedPotential& tp, const Vector& y, double gamma,
                 const Vector& noise, std::size_t step = 0);

ChainRun run_tula(const TransformedPotential& tp, const SamplerConfig& cfg,
                  std::size_t chain_index = 0);
ChainRun run_ula(const IsotropicPotential& p, const SamplerConfig& cfg,
                 std::size_t chain_index = 0);

/// cfg.num_chains independent chains, run on up to TULA_THREADS workers.
std::vector<ChainRun> run_tula_chains(const TransformedPotential& tp, const SamplerConfig& cfg);
std::vector<ChainRun> run_ula_chains(const IsotropicPotential& p, const SamplerConfig& cfg);

/// Worker count: hardware concurrency, capped by TULA_THREADS and by jobs.
std::size_t worker_count(std::size_t jobs);

struct StepPlan {
  double gamma = 0.0;
  std::uint64_t num_steps = 0;
};

/// gamma = min(1, eps/(4d)) / (2 L^2 C); n = ceil(C/(2 gamma) log(2 H0/eps)).
/// The hidden polylog constant in the iteration count is taken as 1.
StepPlan plan_step_size(double L_h, double C_lsi, int d, double eps, double H0);

}  // namespace tula
