#include "adr/instance.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "adr/errors.hpp"

namespace adr {

const std::string& ProblemInstance::label(int node) const {
  if (node < 1 || node > n_t) throw InvalidArgument(fmt::format("no debris numbered {}", node));
  return labels[static_cast<std::size_t>(node - 1)];
}

void ProblemInstance::check() const {
  if (n_t < 1) throw InvalidArgument("instance needs at least one debris object");
  if (n_s < 1 || n_s > n_t)
    throw InvalidArgument(fmt::format("n_s must lie in 1..{}, got {}", n_t, n_s));
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw InvalidArgument("t_max must be positive");
  if (!(t_s >= 0.0) || !std::isfinite(t_s)) throw InvalidArgument("t_s must be nonnegative");
  const std::size_t n = nodes();
  if (labels.size() != static_cast<std::size_t>(n_t))
    throw InvalidArgument(fmt::format("expected {} labels, got {}", n_t, labels.size()));
  if (T.size() != n || C.size() != n || c.size() != n)
    throw InvalidArgument(fmt::format("tables must be {0}x{0} with a length-{0} disposal vector", n));

  for (std::size_t i = 0; i < n; ++i) {
    if (T(i, i) != 0.0 || C(i, i) != 0.0)
      throw InvalidArgument(fmt::format("diagonal of T and C must be zero (node {})", i));
    if (!(c[i] >= 0.0) || !std::isfinite(c[i]))
      throw InvalidArgument(fmt::format("disposal cost of node {} must be finite and nonnegative", i));
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(T(i, j)) || !std::isfinite(C(i, j)))
        throw InvalidArgument(fmt::format("non-finite table entry at ({}, {})", i, j));
      if (!(C(i, j) >= 0.0)) throw InvalidArgument(fmt::format("negative cost at ({}, {})", i, j));
    }
  }
  if (c[0] != 0.0) throw InvalidArgument("dummy disposal cost c[0] must be zero");
  for (std::size_t i = 1; i < n; ++i) {
    if (T(0, i) != 0.0) throw InvalidArgument(fmt::format("T(0,{}) must be 0", i));
    if (T(i, 0) != t_max) throw InvalidArgument(fmt::format("T({},0) must equal t_max", i));
    if (C(0, i) != 0.0 || C(i, 0) != 0.0)
      throw InvalidArgument(fmt::format("dummy transfer costs for node {} must be 0", i));
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!approx_equal(T(i, j), T(j, i)) || !approx_equal(C(i, j), C(j, i)))
        throw InvalidArgument(fmt::format("T and C must be symmetric, broken at ({}, {})", i, j));
      if (T(i, j) < 0.0) throw InvalidArgument(fmt::format("negative alignment time at ({}, {})", i, j));
    }
  }
}

ProblemInstance instance_from_real_tables(int n_s, double t_max, double t_s, std::vector<std::string> labels,
                                          const SquareMatrix& real_T, const SquareMatrix& real_C,
                                          const std::vector<double>& real_c) {
  const std::size_t m = real_T.size();
  if (real_C.size() != m || real_c.size() != m)
    throw InvalidArgument("real-debris tables disagree in size");
  ProblemInstance inst;
  inst.n_t = static_cast<int>(m);
  inst.n_s = n_s;
  inst.t_max = t_max;
  inst.t_s = t_s;
  inst.labels = std::move(labels);
  inst.T = SquareMatrix(m + 1);
  inst.C = SquareMatrix(m + 1);
  inst.c.assign(m + 1, 0.0);
  for (std::size_t i = 1; i <= m; ++i) {
    inst.T(i, 0) = t_max;
    inst.c[i] = real_c[i - 1];
    for (std::size_t j = 1; j <= m; ++j) {
      inst.T(i, j) = real_T(i - 1, j - 1);
      inst.C(i, j) = real_C(i - 1, j - 1);
    }
  }
  inst.check();
  return inst;
}

}  // namespace adr
