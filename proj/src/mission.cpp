#include "adr/mission.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "adr/registry.hpp"

namespace adr::mission {

std::string ValidationReport::describe() const {
  std::ostringstream out;
  for (int k = 1; k <= 8; ++k) {
    const auto& v = constraint(k);
    out << fmt::format("C{}: {}", k, v.pass ? "pass" : "FAIL");
    if (!v.detail.empty()) out << " (" << v.detail << ")";
    out << '\n';
  }
  out << (valid ? "valid\n" : "invalid\n");
  return out.str();
}

ValidationReport validate(const BitVector& bits, const ProblemInstance& inst) {
  const VariableRegistry reg(inst.n_t);
  if (bits.size() != reg.size())
    throw InvalidArgument(fmt::format("bit vector has {} entries, expected {}", bits.size(), reg.size()));
  const int n = inst.n_t;
  auto x = [&](int i, int j) { return bits[reg.edge(i, j)] != 0; };

  std::vector<int> out(inst.nodes(), 0);
  std::vector<int> in(inst.nodes(), 0);
  int edges = 0;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      if (i != j && x(i, j)) {
        ++edges;
        ++out[i];
        ++in[j];
      }

  ValidationReport r;
  auto fail = [&](int k, std::string detail) {
    auto& v = r.verdicts[k - 1];
    v.pass = false;
    if (!v.detail.empty()) v.detail += "; ";
    v.detail += detail;
  };

  if (edges != inst.n_s + 1) fail(1, fmt::format("{} edges selected, need {}", edges, inst.n_s + 1));
  if (out[0] != 1) fail(2, fmt::format("dummy node has {} departures", out[0]));
  if (in[0] != 1) fail(3, fmt::format("dummy node has {} arrivals", in[0]));
  for (int i = 1; i <= n; ++i) {
    const int s4 = bits[reg.slack_departure(i)];
    const int s5 = bits[reg.slack_arrival(i)];
    if (out[i] > 1) fail(4, fmt::format("node {} has {} departures", i, out[i]));
    else if (out[i] + s4 != 1) fail(4, fmt::format("node {} slack s4 inconsistent", i));
    if (in[i] > 1) fail(5, fmt::format("node {} has {} arrivals", i, in[i]));
    else if (in[i] + s5 != 1) fail(5, fmt::format("node {} slack s5 inconsistent", i));
    if (in[i] != out[i]) fail(6, fmt::format("node {} has {} arrivals and {} departures", i, in[i], out[i]));
  }
  const int first = dummy_two_cycles_forbidden(inst) ? 0 : 1;
  for (int i = first; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (x(i, j) && x(j, i)) fail(7, fmt::format("2-cycle {}<->{}", i, j));
  for (int i = 0; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j || !x(i, j)) continue;
      for (int k = 0; k <= n; ++k)
        if (k != i && k != j && x(j, k) && timing_conflict(inst, i, j, k))
          fail(8, fmt::format("triple ({},{},{}): {} + {} > {}", i, j, k, inst.T(i, j), inst.t_s, inst.T(j, k)));
    }

  r.valid = std::all_of(r.verdicts.begin(), r.verdicts.end(), [](const auto& v) { return v.pass; });
  return r;
}

MissionPlan plan_for_sequence(std::span<const int> sequence, const ProblemInstance& inst) {
  MissionPlan plan;
  plan.sequence.assign(sequence.begin(), sequence.end());
  plan.t_max = inst.t_max;
  plan.t_s = inst.t_s;
  plan.cost_unit = inst.cost_unit;
  int prev = 0;
  for (int node : sequence) {
    if (node < 1 || node > inst.n_t) throw InvalidArgument(fmt::format("no debris numbered {}", node));
    plan.labels.push_back(inst.label(node));
    plan.arrival_times.push_back(inst.T(prev, node));
    if (prev != 0) plan.transfer_costs.push_back(inst.C(prev, node));
    plan.disposal_costs.push_back(inst.c[node]);
    prev = node;
  }
  if (!sequence.empty()) {
    plan.duration = plan.arrival_times.back();
    plan.arrival_times.push_back(inst.T(prev, 0));
  }
  plan.total_transfer = std::accumulate(plan.transfer_costs.begin(), plan.transfer_costs.end(), 0.0);
  plan.total_disposal = std::accumulate(plan.disposal_costs.begin(), plan.disposal_costs.end(), 0.0);
  plan.total = plan.total_transfer + plan.total_disposal;
  return plan;
}

bool schedule_feasible(std::span<const int> sequence, const ProblemInstance& inst) {
  int prev = 0;
  int cur = 0;
  for (std::size_t q = 0; q <= sequence.size(); ++q) {
    const int next = q < sequence.size() ? sequence[q] : 0;
    if (q > 0 && prev != next && timing_conflict(inst, prev, cur, next)) return false;
    prev = cur;
    cur = next;
  }
  return true;
}

MissionPlan decode(const BitVector& bits, const ProblemInstance& inst) {
  auto report = validate(bits, inst);
  if (!report.valid) throw InvalidSolution("bit vector violates constraints:\n" + report.describe(), report);

  const VariableRegistry reg(inst.n_t);
  auto successor = [&](int i) {
    for (int j = 0; j <= inst.n_t; ++j)
      if (j != i && bits[reg.edge(i, j)]) return j;
    return -1;
  };
  std::vector<int> sequence;
  for (int node = successor(0); node > 0; node = successor(node)) {
    if (static_cast<int>(sequence.size()) >= inst.n_s) break;
    sequence.push_back(node);
  }
  if (static_cast<int>(sequence.size()) != inst.n_s)
    throw InvalidSolution(fmt::format("tour through the dummy node visits {} targets, expected {}; the remaining "
                                      "edges form a separate cycle",
                                      sequence.size(), inst.n_s),
                          report);
  return plan_for_sequence(sequence, inst);
}

BitVector encode(std::span<const int> sequence, const ProblemInstance& inst) {
  const VariableRegistry reg(inst.n_t);
  std::set<int> seen;
  for (int node : sequence) {
    if (node < 1 || node > inst.n_t) throw InvalidArgument(fmt::format("no debris numbered {}", node));
    if (!seen.insert(node).second) throw InvalidArgument(fmt::format("debris {} appears twice", node));
  }
  if (static_cast<int>(sequence.size()) != inst.n_s)
    throw InvalidArgument(fmt::format("sequence has {} targets, instance selects {}", sequence.size(), inst.n_s));

  BitVector bits(reg.size(), 0);
  int prev = 0;
  for (int node : sequence) {
    bits[reg.edge(prev, node)] = 1;
    prev = node;
  }
  bits[reg.edge(prev, 0)] = 1;
  for (int i = 1; i <= inst.n_t; ++i)
    if (!seen.contains(i)) {
      bits[reg.slack_departure(i)] = 1;
      bits[reg.slack_arrival(i)] = 1;
    }
  return bits;
}

BigInt count_paths(int n_t, int n_s) {
  if (n_s < 1 || n_s > n_t) throw InvalidArgument(fmt::format("need 1 <= n_s <= n_t, got n_t={} n_s={}", n_t, n_s));
  BigInt result = 1;
  for (int k = n_t - n_s + 1; k <= n_t; ++k) result *= k;
  return result;
}

std::vector<FeasiblePath> oracle_enumerate(const ProblemInstance& inst, std::size_t guard) {
  inst.check();
  const BigInt candidates = count_paths(inst.n_t, inst.n_s);
  if (candidates > guard)
    throw GuardError(fmt::format("oracle refused: {} candidate sequences exceed the guard of {}", candidates.str(),
                                 guard));

  // Depth-first over ordered selections; a prefix is abandoned as soon as
  // one of its legs breaks the servicing-time rule.
  std::vector<FeasiblePath> rows;
  std::vector<int> seq;
  std::vector<bool> used(inst.nodes(), false);
  auto recurse = [&](auto&& self) -> void {
    if (static_cast<int>(seq.size()) == inst.n_s) {
      const int last = seq.back();
      const int before = seq.size() > 1 ? seq[seq.size() - 2] : 0;
      if (before != 0 && timing_conflict(inst, before, last, 0)) return;
      const auto plan = plan_for_sequence(seq, inst);
      rows.push_back({seq, plan.total, plan.arrival_times});
      return;
    }
    for (int next = 1; next <= inst.n_t; ++next) {
      if (used[next]) continue;
      if (!seq.empty()) {
        const int cur = seq.back();
        const int prev = seq.size() > 1 ? seq[seq.size() - 2] : 0;
        if (timing_conflict(inst, prev, cur, next)) continue;
      }
      used[next] = true;
      seq.push_back(next);
      self(self);
      seq.pop_back();
      used[next] = false;
    }
  };
  recurse(recurse);
  std::sort(rows.begin(), rows.end(), [](const FeasiblePath& a, const FeasiblePath& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    return a.sequence < b.sequence;
  });
  return rows;
}

}  // namespace adr::mission
