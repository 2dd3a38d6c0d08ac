#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adr/bits.hpp"
#include "adr/qubo.hpp"

namespace adr::solvers {

struct Sample {
  BitVector bits;
  double energy = 0.0;
  std::size_t occurrences = 1;
};

struct SolverConfig {
  std::uint64_t seed = 0;
  std::size_t reads = 1;
  std::size_t sweeps = 1000;  // annealing
  int tenure = 20;            // tabu, capped at 20
  std::optional<std::pair<double, double>> beta_range;  // (hot, cold)
  std::optional<std::size_t> stall_limit;    // tabu: non-improving iterations, default 4 n_vars
  std::optional<std::size_t> max_iterations; // tabu: hard cap per read
  unsigned threads = 0;                      // 0 = hardware concurrency

  void check() const;
};

/// Samples sorted ascending by energy (ties by bitstring).
struct SampleSet {
  std::vector<Sample> samples;
  std::string solver;
  double wall_time = 0.0;  // seconds
  SolverConfig config;

  const Sample& best() const;
  std::size_t total_occurrences() const;
};

/// Single-flip greedy descent; ties go to the lowest variable index.
Sample steepest_descent(const qubo::QuboModel& model, const BitVector& initial);

/// `config.reads` descents from seeded uniformly random starting vectors.
SampleSet steepest_descent_sampler(const qubo::QuboModel& model, const SolverConfig& config);

SampleSet tabu_search(const qubo::QuboModel& model, const SolverConfig& config);

SampleSet simulated_annealing(const qubo::QuboModel& model, const SolverConfig& config);

/// Geometric schedule end points: the hot end accepts the largest possible
/// single-flip increase with probability 1/2, the cold end accepts the
/// smallest nonzero coefficient magnitude with probability 1/100.
std::pair<double, double> default_beta_range(const qubo::QuboModel& model);

/// One annealing read with its per-sweep energy trace. Read `read_index`
/// uses the same random stream as in simulated_annealing.
struct AnnealRun {
  Sample sample;
  std::vector<double> sweep_energies;
};
AnnealRun anneal_read(const qubo::QuboModel& model, const SolverConfig& config, std::size_t read_index,
                      const std::optional<BitVector>& initial = std::nullopt);

inline constexpr std::size_t kExhaustiveMaxVars = 26;

/// Every global minimizer by full enumeration in little-endian integer encoding.
SampleSet exhaustive_minimum(const qubo::QuboModel& model, std::size_t max_vars = kExhaustiveMaxVars);

struct LandscapePoint {
  std::uint64_t state;
  double energy;
};
/// Energies of states start, start + stride, ... < stop.
std::vector<LandscapePoint> landscape_scan(const qubo::QuboModel& model, std::uint64_t start,
                                           std::uint64_t stop, std::uint64_t stride);

/// Index of the first variable whose single flip lowers the energy by more
/// than the solver tolerance, if any.
std::optional<std::size_t> improving_flip(const qubo::QuboModel& model, const BitVector& bits);

}  // namespace adr::solvers
