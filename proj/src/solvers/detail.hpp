#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include "adr/bits.hpp"
#include "adr/qubo.hpp"
#include "adr/solvers.hpp"

namespace adr::solvers::detail {

/// Symmetric CSR view of a model: row k lists every j != k with Q_kj.
struct Adjacency {
  std::vector<double> linear;
  std::vector<std::size_t> start;
  std::vector<std::uint32_t> col;
  std::vector<double> val;
  double max_abs = 0.0;

  explicit Adjacency(const qubo::QuboModel& model);
  std::size_t size() const noexcept { return linear.size(); }
  /// Threshold below which energy changes count as ties.
  double tolerance() const noexcept { return 1e-9 * std::max(1.0, max_abs); }
};

/// Bit vector with cached local fields, field[k] = Q_kk + sum_j Q_kj x_j.
class State {
public:
  State(const Adjacency& adj, BitVector bits, double energy);

  double delta(std::size_t k) const { return bits_[k] ? -field_[k] : field_[k]; }
  void flip(std::size_t k);

  const BitVector& bits() const noexcept { return bits_; }
  double energy() const noexcept { return energy_; }

private:
  const Adjacency* adj_;
  BitVector bits_;
  std::vector<double> field_;
  double energy_;
};

/// splitmix64 mixing of the master seed with the read index.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t read);

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }
  BitVector random_bits(std::size_t n) {
    BitVector b(n);
    for (std::size_t k = 0; k < n; ++k) b[k] = static_cast<std::uint8_t>(engine_() >> 63);
    return b;
  }

private:
  std::mt19937_64 engine_;
};

/// Runs fn(read) for every read index on a small thread pool and returns
/// the results in read order.
template <typename Fn>
auto run_reads(std::size_t reads, unsigned threads, Fn fn) {
  using Result = decltype(fn(std::size_t{0}));
  std::vector<Result> out(reads);
  unsigned workers = threads ? threads : std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, reads));
  if (workers <= 1) {
    for (std::size_t r = 0; r < reads; ++r) out[r] = fn(r);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t r = next++; r < reads; r = next++) out[r] = fn(r);
    });
  pool.clear();
  return out;
}

/// Merges identical vectors, recomputes energies exactly and sorts.
SampleSet aggregate(const qubo::QuboModel& model, std::vector<BitVector> per_read, std::string solver,
                    const SolverConfig& config, double wall_time);

}  // namespace adr::solvers::detail
