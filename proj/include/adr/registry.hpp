#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace adr {

/// Canonical numbering of the QUBO variables for `n_t` real debris.
///
/// Edge variables x_{i,j} (i != j, i,j in 0..n_t) come first in
/// lexicographic (i, j) order, then s4_1..s4_{n_t}, then s5_1..s5_{n_t}.
/// Indices are computed arithmetically; nothing is stored per variable.
class VariableRegistry {
public:
  explicit VariableRegistry(int n_t);

  int n_t() const noexcept { return n_t_; }
  std::size_t size() const noexcept { return edges() + 2 * static_cast<std::size_t>(n_t_); }
  std::size_t edges() const noexcept {
    return static_cast<std::size_t>(n_t_) * static_cast<std::size_t>(n_t_ + 1);
  }

  std::size_t edge(int from, int to) const;
  std::size_t slack_departure(int node) const;  // s4_node
  std::size_t slack_arrival(int node) const;    // s5_node

  enum class Kind { edge, slack_departure, slack_arrival };
  struct Variable {
    Kind kind;
    int from;  // node for slacks
    int to;    // unused for slacks
  };
  Variable variable(std::size_t index) const;

  /// "x_<i>_<j>", "s4_<i>" or "s5_<i>".
  std::string name(std::size_t index) const;
  std::optional<std::size_t> find(std::string_view name) const;

  bool operator==(const VariableRegistry&) const = default;

private:
  int n_t_;
};

/// Exact total n_t (n_t + 3).
std::size_t variable_count(int n_t);

}  // namespace adr
