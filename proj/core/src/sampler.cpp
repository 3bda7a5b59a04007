#include "tula/sampler.hpp"

#include "tula/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace tula {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Vector standard_normal(std::mt19937_64& rng, std::normal_distribution<double>& nd, int d) {
  Vector u(d);
  for (int i = 0; i < d; ++i) u[i] = nd(rng);
  return u;
}

double ula_lipschitz(const IsotropicPotential& p) {
  double L = 0.0;
  for (int i = 0; i < 400; ++i) {
    const double r = std::exp(std::log(1e-3) + (std::log(1e3) - std::log(1e-3)) * i / 399.0);
    const RadialValues v = p.eval(r);
    L = std::max({L, std::abs(v.d2), std::abs(v.d1 / r)});
  }
  return L;
}

template <class Grad>
ChainRun run_chain(Grad&& grad, int d, double lipschitz, const SamplerConfig& cfg,
                   std::size_t chain_index, std::shared_ptr<const RadialTransform> transform) {
  cfg.validate();
  ChainRun run;
  run.config = cfg;
  run.chain_index = chain_index;
  run.transform = std::move(transform);

  std::mt19937_64 rng = make_chain_engine(cfg.seed, chain_index);
  std::normal_distribution<double> nd(0.0, 1.0);

  const auto& init = cfg.initial;
  Vector y = init.mean.size() == 0 ? Vector::Zero(d) : init.mean;
  if (y.size() != d) throw std::invalid_argument("initial point has the wrong dimension");
  if (init.kind == InitialDistribution::Kind::Gaussian) {
    const double scale = init.scale > 0.0 ? init.scale : 1.0 / std::sqrt(lipschitz);
    y += scale * standard_normal(rng, nd, d);
  }

  run.steps.push_back(0);
  run.y_samples.push_back(y);
  for (std::size_t k = 1; k <= cfg.num_steps; ++k) {
    const double gamma = cfg.step_schedule ? cfg.step_schedule(k) : cfg.step_size;
    const Vector u = standard_normal(rng, nd, d);
    Vector next = y - gamma * grad(y) + std::sqrt(2.0 * gamma) * u;
    if (!next.allFinite()) {
      run.divergence_flag = true;
      run.divergence_step = k;
      break;
    }
    y = std::move(next);
    if (k % cfg.thin == 0) {
      run.steps.push_back(k);
      run.y_samples.push_back(y);
    }
  }
  return run;
}

template <class RunOne>
std::vector<ChainRun> run_parallel(std::size_t chains, RunOne&& one) {
  std::vector<ChainRun> out(chains);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(chains);
  auto work = [&] {
    for (std::size_t c; (c = next.fetch_add(1)) < chains;) {
      try {
        out[c] = one(c);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };
  const std::size_t nw = worker_count(chains);
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < nw; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace

void SamplerConfig::validate() const {
  if (!(step_size > 0.0) && !step_schedule) throw std::invalid_argument("step size must be > 0");
  if (num_steps < 1) throw std::invalid_argument("num_steps must be >= 1");
  if (thin < 1) throw std::invalid_argument("thin must be >= 1");
  if (num_chains < 1) throw std::invalid_argument("num_chains must be >= 1");
}

Vector ChainRun::x(std::size_t k) const {
  return transform ? transform->forward(y_samples.at(k)) : y_samples.at(k);
}

std::vector<Vector> ChainRun::x_samples() const {
  std::vector<Vector> xs;
  xs.reserve(y_samples.size());
  for (std::size_t k = 0; k < y_samples.size(); ++k) xs.push_back(x(k));
  return xs;
}

std::mt19937_64 make_chain_engine(std::uint64_t seed, std::uint64_t chain) {
  std::uint64_t state = seed;
  const std::uint64_t a = splitmix64(state);
  state = a ^ (chain * 0xd1b54a32d192ed03ULL);
  const std::uint64_t b = splitmix64(state);
  const std::uint64_t c = splitmix64(state);
  std::seed_seq seq{static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                    static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
  return std::mt19937_64(seq);
}

Vector tula_step(const TransformedPotential& tp, const Vector& y, double gamma,
                 const Vector& noise, std::size_t step) {
  if (!(gamma > 0.0)) throw std::invalid_argument("step size must be > 0");
  if (!y.allFinite() || !noise.allFinite())
    throw DivergenceError(step, "non-finite iterate at step " + std::to_string(step));
  Vector next = y - gamma * transformed_gradient(tp, y) + std::sqrt(2.0 * gamma) * noise;
  if (!next.allFinite())
    throw DivergenceError(step, "non-finite iterate at step " + std::to_string(step));
  return next;
}

ChainRun run_tula(const TransformedPotential& tp, const SamplerConfig& cfg,
                  std::size_t chain_index) {
  double L = 1.0;
  if (cfg.initial.kind == InitialDistribution::Kind::Gaussian && !(cfg.initial.scale > 0.0))
    L = estimate_gradient_lipschitz(tp, 20.0, 400);
  auto transform = std::make_shared<const RadialTransform>(tp.transform());
  return run_chain([&](const Vector& y) { return transformed_gradient(tp, y); }, tp.dimension(),
                   L, cfg, chain_index, transform);
}

ChainRun run_ula(const IsotropicPotential& p, const SamplerConfig& cfg, std::size_t chain_index) {
  double L = 1.0;
  if (cfg.initial.kind == InitialDistribution::Kind::Gaussian && !(cfg.initial.scale > 0.0))
    L = ula_lipschitz(p);
  return run_chain([&](const Vector& x) { return target_gradient(p, x); }, p.dimension(), L, cfg,
                   chain_index, nullptr);
}

std::vector<ChainRun> run_tula_chains(const TransformedPotential& tp, const SamplerConfig& cfg) {
  cfg.validate();
  SamplerConfig c = cfg;
  if (c.initial.kind == InitialDistribution::Kind::Gaussian && !(c.initial.scale > 0.0))
    c.initial.scale = 1.0 / std::sqrt(estimate_gradient_lipschitz(tp, 20.0, 400));
  return run_parallel(cfg.num_chains, [&](std::size_t i) { return run_tula(tp, c, i); });
}

std::vector<ChainRun> run_ula_chains(const IsotropicPotential& p, const SamplerConfig& cfg) {
  cfg.validate();
  return run_parallel(cfg.num_chains, [&](std::size_t i) { return run_ula(p, cfg, i); });
}

std::size_t worker_count(std::size_t jobs) {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TULA_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) n = std::min(n, static_cast<std::size_t>(v));
    } catch (const std::exception&) {
    }
  }
  return std::max<std::size_t>(1, std::min(n, jobs));
}

StepPlan plan_step_size(double L_h, double C_lsi, int d, double eps, double H0) {
  if (!(L_h > 0) || !(C_lsi > 0) || d < 1 || !(eps > 0) || !(H0 > 0))
    throw std::invalid_argument("plan_step_size: all inputs must be positive");
  StepPlan plan;
  plan.gamma = std::min(1.0, eps / (4.0 * d)) / (2.0 * L_h * L_h * C_lsi);
  const double n = std::ceil(C_lsi / (2.0 * plan.gamma) * std::log(2.0 * H0 / eps));
  plan.num_steps = n > 0.0 ? static_cast<std::uint64_t>(n) : 0;
  return plan;
}

}  // namespace tula
