#include <bit>
#include <chrono>
#include <cmath>

#include <fmt/format.h>

#include "adr/errors.hpp"
#include "detail.hpp"

namespace adr::solvers {

SampleSet exhaustive_minimum(const qubo::QuboModel& model, std::size_t max_vars) {
  const std::size_t n = model.n_vars();
  if (n > max_vars || n > 63)
    throw GuardError(fmt::format("exhaustive search refused: {} variables exceeds the limit of {}", n, max_vars));
  const auto t0 = std::chrono::steady_clock::now();
  const detail::Adjacency adj(model);

  // Gray-code walk: one flip per state, incremental energy. Candidates within
  // a loose band are re-scored exactly afterwards.
  const double band = 1e-6 * std::max(1.0, adj.max_abs);
  detail::State state(adj, BitVector(n, 0), model.offset());
  std::uint64_t value = 0;
  double lowest = state.energy();
  std::vector<std::uint64_t> candidates{0};
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t g = 1; g < total; ++g) {
    const auto k = static_cast<std::size_t>(std::countr_zero(g));
    state.flip(k);
    value ^= std::uint64_t{1} << k;
    const double e = state.energy();
    if (e < lowest - band) {
      lowest = e;
      candidates.assign(1, value);
    } else if (e <= lowest + band) {
      candidates.push_back(value);
    }
  }

  std::vector<Sample> exact;
  exact.reserve(candidates.size());
  double best = std::numeric_limits<double>::infinity();
  for (auto v : candidates) {
    BitVector bits = bits_from_integer(v, n);
    const double e = qubo::energy(model, bits);
    best = std::min(best, e);
    exact.push_back({std::move(bits), e, 1});
  }
  std::vector<std::pair<std::uint64_t, Sample>> keep;
  for (std::size_t q = 0; q < exact.size(); ++q)
    if (approx_equal(exact[q].energy, best)) keep.emplace_back(candidates[q], std::move(exact[q]));
  std::sort(keep.begin(), keep.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  SampleSet set;
  set.solver = "exhaustive";
  set.config.reads = keep.size();
  for (auto& [v, s] : keep) set.samples.push_back(std::move(s));
  set.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return set;
}

std::vector<LandscapePoint> landscape_scan(const qubo::QuboModel& model, std::uint64_t start, std::uint64_t stop,
                                           std::uint64_t stride) {
  const std::size_t n = model.n_vars();
  if (n > 63) throw GuardError(fmt::format("landscape scan limited to 63 variables, model has {}", n));
  const std::uint64_t total = std::uint64_t{1} << n;
  if (stride < 1) throw InvalidArgument("stride must be at least 1");
  if (!(start < stop) || stop > total)
    throw InvalidArgument(fmt::format("range [{}, {}) must be nonempty and within [0, {}]", start, stop, total));
  std::vector<LandscapePoint> out;
  out.reserve(static_cast<std::size_t>((stop - start + stride - 1) / stride));
  for (std::uint64_t v = start; v < stop; v += stride) {
    out.push_back({v, qubo::energy(model, bits_from_integer(v, n))});
    if (stop - v <= stride) break;
  }
  return out;
}

}  // namespace adr::solvers
