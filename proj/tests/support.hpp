#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include <fmt/format.h>

#include "adr/bits.hpp"
#include "adr/instance.hpp"
#include "adr/io.hpp"

namespace adr::test {

inline std::filesystem::path benchmark_path(int n_t) {
  return std::filesystem::path(ADR_DATA_DIR) / "benchmarks" / fmt::format("nt{:02d}.json", n_t);
}

inline ProblemInstance benchmark(int n_t) { return io::load_instance(benchmark_path(n_t)); }

inline std::filesystem::path kosmos_fixture() {
  return std::filesystem::path(ADR_TEST_DATA_DIR) / "kosmos1408_synthetic.tle";
}

inline BitVector random_bits(std::size_t n, std::mt19937_64& rng, double p_one = 0.5) {
  std::bernoulli_distribution coin(p_one);
  BitVector bits(n);
  for (auto& b : bits) b = coin(rng) ? 1 : 0;
  return bits;
}

}  // namespace adr::test
