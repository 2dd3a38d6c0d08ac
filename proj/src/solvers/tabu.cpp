#include <chrono>
#include <limits>

#include "adr/errors.hpp"
#include "detail.hpp"

namespace adr::solvers {

namespace {

// Best-improvement single-flip search. A flipped variable stays tabu for
// `tenure` iterations unless flipping it again reaches a new best energy.
BitVector tabu_read(const detail::Adjacency& adj, const qubo::QuboModel& model, const SolverConfig& config,
                    std::size_t read) {
  const std::size_t n = adj.size();
  detail::Rng rng(detail::stream_seed(config.seed, read));
  BitVector start = rng.random_bits(n);
  const double e0 = qubo::energy(model, start);
  detail::State state(adj, std::move(start), e0);
  if (n == 0) return state.bits();

  const double tol = adj.tolerance();
  const std::size_t tenure = std::min<std::size_t>(static_cast<std::size_t>(config.tenure), n - 1);
  const std::size_t stall_limit = config.stall_limit.value_or(4 * n);
  const std::size_t max_iter = config.max_iterations.value_or(std::numeric_limits<std::size_t>::max());

  BitVector best = state.bits();
  double best_energy = state.energy();
  std::vector<std::size_t> tabu_until(n, 0);
  std::size_t stall = 0;
  for (std::size_t iter = 1; stall < stall_limit && iter <= max_iter; ++iter) {
    std::size_t choice = n;
    double best_delta = std::numeric_limits<double>::infinity();
    std::size_t ties = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const double d = state.delta(k);
      const bool allowed = tabu_until[k] < iter || state.energy() + d < best_energy - tol;
      if (!allowed) continue;
      if (d < best_delta - tol) {
        best_delta = d;
        choice = k;
        ties = 1;
      } else if (d <= best_delta + tol && rng.below(++ties) == 0) {
        choice = k;
      }
    }
    if (choice == n) {
      ++stall;
      continue;
    }
    state.flip(choice);
    tabu_until[choice] = iter + tenure;
    if (state.energy() < best_energy - tol) {
      best_energy = state.energy();
      best = state.bits();
      stall = 0;
    } else {
      ++stall;
    }
  }
  return best;
}

}  // namespace

SampleSet tabu_search(const qubo::QuboModel& model, const SolverConfig& config) {
  config.check();
  const auto t0 = std::chrono::steady_clock::now();
  const detail::Adjacency adj(model);
  auto results = detail::run_reads(config.reads, config.threads,
                                   [&](std::size_t r) { return tabu_read(adj, model, config, r); });
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return detail::aggregate(model, std::move(results), "tabu", config, wall);
}

}  // namespace adr::solvers
