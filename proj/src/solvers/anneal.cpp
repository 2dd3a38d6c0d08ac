#include <chrono>
#include <cmath>
#include <limits>

#include "adr/errors.hpp"
#include "detail.hpp"

namespace adr::solvers {

namespace {

std::pair<double, double> beta_range_for(const detail::Adjacency& adj, const qubo::QuboModel& model) {
  double max_delta = 0.0;
  for (std::size_t k = 0; k < adj.size(); ++k) {
    double bound = std::abs(adj.linear[k]);
    for (std::size_t p = adj.start[k]; p < adj.start[k + 1]; ++p) bound += std::abs(adj.val[p]);
    max_delta = std::max(max_delta, bound);
  }
  double min_coef = std::numeric_limits<double>::infinity();
  for (const auto& t : model.terms()) min_coef = std::min(min_coef, std::abs(t.value));
  if (max_delta == 0.0 || !std::isfinite(min_coef)) return {1.0, 1.0};
  return {std::log(2.0) / max_delta, std::log(100.0) / min_coef};
}

AnnealRun anneal(const detail::Adjacency& adj, const qubo::QuboModel& model, const SolverConfig& config,
                 std::pair<double, double> betas, std::size_t read, const std::optional<BitVector>& initial,
                 bool trace) {
  const std::size_t n = adj.size();
  detail::Rng rng(detail::stream_seed(config.seed, read));
  BitVector start = initial ? *initial : rng.random_bits(n);
  if (start.size() != n) throw InvalidArgument("initial state length does not match the model");
  const double e0 = qubo::energy(model, start);
  detail::State state(adj, std::move(start), e0);

  AnnealRun run;
  if (trace) run.sweep_energies.reserve(config.sweeps);
  const auto [hot, cold] = betas;
  const double ratio = config.sweeps > 1 ? std::pow(cold / hot, 1.0 / static_cast<double>(config.sweeps - 1)) : 1.0;
  double beta = config.sweeps > 1 ? hot : cold;
  for (std::size_t s = 0; s < config.sweeps; ++s) {
    for (std::size_t k = 0; k < n; ++k) {
      const double d = state.delta(k);
      if (d <= 0.0) {
        state.flip(k);
        continue;
      }
      const double x = beta * d;
      if (x < 40.0 && rng.uniform() < std::exp(-x)) state.flip(k);
    }
    if (trace) run.sweep_energies.push_back(state.energy());
    beta *= ratio;
  }
  run.sample.bits = state.bits();
  run.sample.energy = qubo::energy(model, run.sample.bits);
  return run;
}

}  // namespace

std::pair<double, double> default_beta_range(const qubo::QuboModel& model) {
  const detail::Adjacency adj(model);
  return beta_range_for(adj, model);
}

AnnealRun anneal_read(const qubo::QuboModel& model, const SolverConfig& config, std::size_t read_index,
                      const std::optional<BitVector>& initial) {
  config.check();
  const detail::Adjacency adj(model);
  const auto betas = config.beta_range.value_or(beta_range_for(adj, model));
  return anneal(adj, model, config, betas, read_index, initial, true);
}

SampleSet simulated_annealing(const qubo::QuboModel& model, const SolverConfig& config) {
  config.check();
  const auto t0 = std::chrono::steady_clock::now();
  const detail::Adjacency adj(model);
  const auto betas = config.beta_range.value_or(beta_range_for(adj, model));
  auto results = detail::run_reads(config.reads, config.threads, [&](std::size_t r) {
    return anneal(adj, model, config, betas, r, std::nullopt, false).sample.bits;
  });
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  SolverConfig echo = config;
  echo.beta_range = betas;
  return detail::aggregate(model, std::move(results), "simulated_annealing", echo, wall);
}

}  // namespace adr::solvers
