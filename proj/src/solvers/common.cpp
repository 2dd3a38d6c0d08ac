#include <chrono>
#include <map>

#include <fmt/format.h>

#include "adr/errors.hpp"
#include "detail.hpp"

namespace adr::solvers {

void SolverConfig::check() const {
  if (reads < 1) throw InvalidArgument("reads must be at least 1");
  if (sweeps < 1) throw InvalidArgument("sweeps must be at least 1");
  if (tenure < 1 || tenure > 20) throw InvalidArgument(fmt::format("tenure must lie in 1..20, got {}", tenure));
  if (beta_range) {
    const auto [hot, cold] = *beta_range;
    if (!(hot > 0.0) || !(cold > 0.0) || !std::isfinite(hot) || !std::isfinite(cold))
      throw InvalidArgument("beta range bounds must be positive and finite");
  }
  if (stall_limit && *stall_limit < 1) throw InvalidArgument("stall limit must be at least 1");
  if (max_iterations && *max_iterations < 1) throw InvalidArgument("max iterations must be at least 1");
}

const Sample& SampleSet::best() const {
  if (samples.empty()) throw InvalidArgument("sample set is empty");
  return samples.front();
}

std::size_t SampleSet::total_occurrences() const {
  std::size_t n = 0;
  for (const auto& s : samples) n += s.occurrences;
  return n;
}

std::optional<std::size_t> improving_flip(const qubo::QuboModel& model, const BitVector& bits) {
  const detail::Adjacency adj(model);
  if (bits.size() != adj.size()) throw InvalidArgument("bit vector length does not match the model");
  const detail::State state(adj, bits, qubo::energy(model, bits));
  const double tol = adj.tolerance();
  for (std::size_t k = 0; k < adj.size(); ++k)
    if (state.delta(k) < -tol) return k;
  return std::nullopt;
}

}  // namespace adr::solvers

namespace adr::solvers::detail {

Adjacency::Adjacency(const qubo::QuboModel& model) : linear(model.n_vars(), 0.0), start(model.n_vars() + 1, 0) {
  for (const auto& t : model.terms()) {
    max_abs = std::max(max_abs, std::abs(t.value));
    if (t.i == t.j) {
      linear[t.i] += t.value;
    } else {
      ++start[t.i + 1];
      ++start[t.j + 1];
    }
  }
  for (std::size_t k = 0; k < model.n_vars(); ++k) start[k + 1] += start[k];
  col.resize(start.back());
  val.resize(start.back());
  std::vector<std::size_t> fill(start.begin(), start.end() - 1);
  for (const auto& t : model.terms()) {
    if (t.i == t.j) continue;
    col[fill[t.i]] = t.j;
    val[fill[t.i]++] = t.value;
    col[fill[t.j]] = t.i;
    val[fill[t.j]++] = t.value;
  }
}

State::State(const Adjacency& adj, BitVector bits, double energy)
    : adj_(&adj), bits_(std::move(bits)), field_(adj.linear), energy_(energy) {
  for (std::size_t k = 0; k < bits_.size(); ++k) {
    if (!bits_[k]) continue;
    for (std::size_t p = adj.start[k]; p < adj.start[k + 1]; ++p) field_[adj.col[p]] += adj.val[p];
  }
}

void State::flip(std::size_t k) {
  const double d = bits_[k] ? -1.0 : 1.0;
  energy_ += d * field_[k];
  bits_[k] ^= 1U;
  const auto& a = *adj_;
  const std::size_t end = a.start[k + 1];
  for (std::size_t p = a.start[k]; p < end; ++p) field_[a.col[p]] += d * a.val[p];
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t read) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(seed) ^ (read * 0xd1b54a32d192ed03ULL + 1));
}

SampleSet aggregate(const qubo::QuboModel& model, std::vector<BitVector> per_read, std::string solver,
                    const SolverConfig& config, double wall_time) {
  std::map<BitVector, std::size_t> counts;
  for (auto& b : per_read) ++counts[std::move(b)];
  SampleSet set;
  set.solver = std::move(solver);
  set.config = config;
  set.wall_time = wall_time;
  set.samples.reserve(counts.size());
  for (auto& [bits, n] : counts) {
    const double e = qubo::energy(model, bits);
    set.samples.push_back({bits, e, n});
  }
  std::stable_sort(set.samples.begin(), set.samples.end(),
                   [](const Sample& a, const Sample& b) { return a.energy < b.energy; });
  return set;
}

}  // namespace adr::solvers::detail
