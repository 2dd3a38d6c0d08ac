#include <chrono>

#include "adr/errors.hpp"
#include "detail.hpp"

namespace adr::solvers {

namespace {

BitVector descend(const detail::Adjacency& adj, const qubo::QuboModel& model, BitVector bits) {
  const double e0 = qubo::energy(model, bits);
  detail::State state(adj, std::move(bits), e0);
  const double tol = adj.tolerance();
  for (;;) {
    std::size_t choice = adj.size();
    double best = -tol;
    for (std::size_t k = 0; k < adj.size(); ++k) {
      const double d = state.delta(k);
      if (d < best) {
        best = d;
        choice = k;
      }
    }
    if (choice == adj.size()) return state.bits();
    state.flip(choice);
  }
}

}  // namespace

Sample steepest_descent(const qubo::QuboModel& model, const BitVector& initial) {
  if (initial.size() != model.n_vars()) throw InvalidArgument("initial state length does not match the model");
  const detail::Adjacency adj(model);
  BitVector bits = descend(adj, model, initial);
  const double e = qubo::energy(model, bits);
  return {std::move(bits), e, 1};
}

SampleSet steepest_descent_sampler(const qubo::QuboModel& model, const SolverConfig& config) {
  config.check();
  const auto t0 = std::chrono::steady_clock::now();
  const detail::Adjacency adj(model);
  auto results = detail::run_reads(config.reads, config.threads, [&](std::size_t r) {
    detail::Rng rng(detail::stream_seed(config.seed, r));
    return descend(adj, model, rng.random_bits(adj.size()));
  });
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return detail::aggregate(model, std::move(results), "steepest_descent", config, wall);
}

}  // namespace adr::solvers
