#include "adr/registry.hpp"

#include <charconv>

#include <fmt/format.h>

#include "adr/errors.hpp"

namespace adr {

std::size_t variable_count(int n_t) {
  if (n_t < 1) throw InvalidArgument("n_t must be at least 1");
  const auto n = static_cast<std::size_t>(n_t);
  return n * (n + 3);
}

VariableRegistry::VariableRegistry(int n_t) : n_t_(n_t) {
  if (n_t < 1) throw InvalidArgument("registry needs n_t >= 1");
}

std::size_t VariableRegistry::edge(int from, int to) const {
  if (from < 0 || to < 0 || from > n_t_ || to > n_t_ || from == to)
    throw InvalidArgument(fmt::format("no edge variable x_{}_{}", from, to));
  const auto i = static_cast<std::size_t>(from);
  const auto j = static_cast<std::size_t>(to);
  return i * static_cast<std::size_t>(n_t_) + (j < i ? j : j - 1);
}

std::size_t VariableRegistry::slack_departure(int node) const {
  if (node < 1 || node > n_t_) throw InvalidArgument(fmt::format("no slack s4_{}", node));
  return edges() + static_cast<std::size_t>(node - 1);
}

std::size_t VariableRegistry::slack_arrival(int node) const {
  if (node < 1 || node > n_t_) throw InvalidArgument(fmt::format("no slack s5_{}", node));
  return edges() + static_cast<std::size_t>(n_t_) + static_cast<std::size_t>(node - 1);
}

VariableRegistry::Variable VariableRegistry::variable(std::size_t index) const {
  if (index >= size()) throw InvalidArgument(fmt::format("variable index {} out of range", index));
  const auto n = static_cast<std::size_t>(n_t_);
  if (index < edges()) {
    const std::size_t i = index / n;
    std::size_t j = index % n;
    if (j >= i) ++j;
    return {Kind::edge, static_cast<int>(i), static_cast<int>(j)};
  }
  index -= edges();
  if (index < n) return {Kind::slack_departure, static_cast<int>(index + 1), 0};
  return {Kind::slack_arrival, static_cast<int>(index - n + 1), 0};
}

std::string VariableRegistry::name(std::size_t index) const {
  const Variable v = variable(index);
  switch (v.kind) {
    case Kind::edge: return fmt::format("x_{}_{}", v.from, v.to);
    case Kind::slack_departure: return fmt::format("s4_{}", v.from);
    case Kind::slack_arrival: return fmt::format("s5_{}", v.from);
  }
  return {};
}

namespace {

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

std::optional<std::size_t> VariableRegistry::find(std::string_view name) const {
  int a = 0;
  int b = 0;
  if (name.starts_with("x_")) {
    const auto rest = name.substr(2);
    const auto sep = rest.find('_');
    if (sep == std::string_view::npos) return std::nullopt;
    if (!parse_int(rest.substr(0, sep), a) || !parse_int(rest.substr(sep + 1), b)) return std::nullopt;
    if (a < 0 || b < 0 || a > n_t_ || b > n_t_ || a == b) return std::nullopt;
    return edge(a, b);
  }
  const bool dep = name.starts_with("s4_");
  if (!dep && !name.starts_with("s5_")) return std::nullopt;
  if (!parse_int(name.substr(3), a) || a < 1 || a > n_t_) return std::nullopt;
  return dep ? slack_departure(a) : slack_arrival(a);
}

}  // namespace adr
