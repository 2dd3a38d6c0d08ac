#include "adr/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "adr/errors.hpp"

namespace adr::qubo {

double LagrangeWeights::constraint(int k) const {
  return const_cast<LagrangeWeights*>(this)->constraint(k);
}

double& LagrangeWeights::constraint(int k) {
  switch (k) {
    case 1: return l1;
    case 2: return l2;
    case 3: return l3;
    case 4: return l4;
    case 5: return l5;
    case 6: return l6;
    case 7: return l7;
    case 8: return l8;
    default: throw InvalidArgument(fmt::format("no constraint {}", k));
  }
}

void LagrangeWeights::check() const {
  if (!(l_h >= 0.0) || !std::isfinite(l_h)) throw InvalidArgument("L_H must be finite and nonnegative");
  for (int k = 1; k <= 8; ++k) {
    const double w = constraint(k);
    if (!(w >= 0.0) || !std::isfinite(w))
      throw InvalidArgument(fmt::format("L{} must be finite and nonnegative", k));
  }
}

double PenaltyBreakdown::penalty() const {
  double s = 0.0;
  for (double v : c) s += v;
  return s;
}

QuboModel::QuboModel(std::size_t n_vars, double offset, std::vector<Term> terms,
                     std::optional<VariableRegistry> registry)
    : n_vars_(n_vars), offset_(offset), registry_(std::move(registry)) {
  if (registry_ && registry_->size() != n_vars)
    throw InvalidArgument("registry size does not match the variable count");
  for (auto& t : terms) {
    if (t.i > t.j) std::swap(t.i, t.j);
    if (t.j >= n_vars) throw InvalidArgument(fmt::format("term ({}, {}) exceeds {} variables", t.i, t.j, n_vars));
  }
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
  terms_.reserve(terms.size());
  for (const auto& t : terms) {
    if (!terms_.empty() && terms_.back().i == t.i && terms_.back().j == t.j) terms_.back().value += t.value;
    else terms_.push_back(t);
  }
  std::erase_if(terms_, [](const Term& t) { return t.value == 0.0; });
  terms_.shrink_to_fit();
}

double QuboModel::coefficient(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  const auto it = std::lower_bound(terms_.begin(), terms_.end(), std::pair{i, j}, [](const Term& t, const auto& key) {
    return t.i != key.first ? t.i < key.first : t.j < key.second;
  });
  if (it != terms_.end() && it->i == i && it->j == j) return it->value;
  return 0.0;
}

std::string QuboModel::name(std::size_t index) const {
  if (index >= n_vars_) throw InvalidArgument(fmt::format("variable index {} out of range", index));
  return registry_ ? registry_->name(index) : fmt::format("v{}", index);
}

namespace {

// Dense packed upper triangle; the expanded penalties couple almost every
// pair of edge variables, so a dense buffer beats any map while building.
class Accumulator {
public:
  explicit Accumulator(std::size_t n) : n_(n), packed_(n * (n + 1) / 2, 0.0) {}

  void add(std::size_t i, std::size_t j, double v) {
    if (i > j) std::swap(i, j);
    packed_[i * (2 * n_ - i + 1) / 2 + (j - i)] += v;
  }

  /// weight * (sum_k a_k x_k + b)^2 with x^2 = x.
  void add_square(const std::vector<std::pair<std::size_t, double>>& lin, double b, double weight) {
    if (weight == 0.0) return;
    offset_ += weight * b * b;
    for (std::size_t p = 0; p < lin.size(); ++p) {
      const auto [vp, ap] = lin[p];
      add(vp, vp, weight * (ap * ap + 2.0 * b * ap));
      for (std::size_t q = p + 1; q < lin.size(); ++q) add(vp, lin[q].first, 2.0 * weight * ap * lin[q].second);
    }
  }

  double offset() const { return offset_; }

  std::vector<Term> terms() const {
    std::vector<Term> out;
    std::size_t k = 0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j, ++k)
        if (packed_[k] != 0.0)
          out.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), packed_[k]});
    return out;
  }

private:
  std::size_t n_;
  std::vector<double> packed_;
  double offset_ = 0.0;
};

}  // namespace

QuboModel build_qubo(const ProblemInstance& inst, const LagrangeWeights& w) {
  inst.check();
  w.check();
  const VariableRegistry reg(inst.n_t);
  const int n = inst.n_t;
  Accumulator acc(reg.size());
  using Lin = std::vector<std::pair<std::size_t, double>>;

  // Objective: transfer plus disposal of the departing node.
  if (w.l_h != 0.0)
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j)
        if (i != j) {
          const std::size_t e = reg.edge(i, j);
          acc.add(e, e, w.l_h * (inst.C(i, j) + inst.c[i]));
        }

  // 1: the tour has n_s + 1 edges.
  {
    Lin all;
    all.reserve(reg.edges());
    for (std::size_t e = 0; e < reg.edges(); ++e) all.emplace_back(e, 1.0);
    acc.add_square(all, -(inst.n_s + 1.0), w.l1);
  }
  // 2, 3: exactly one departure from and one arrival at the dummy node.
  {
    Lin out;
    Lin in;
    for (int i = 1; i <= n; ++i) {
      out.emplace_back(reg.edge(0, i), 1.0);
      in.emplace_back(reg.edge(i, 0), 1.0);
    }
    acc.add_square(out, -1.0, w.l2);
    acc.add_square(in, -1.0, w.l3);
  }
  // 4, 5: at most one departure / arrival per real node, one slack each.
  for (int i = 1; i <= n; ++i) {
    Lin out;
    Lin in;
    for (int j = 0; j <= n; ++j)
      if (j != i) {
        out.emplace_back(reg.edge(i, j), 1.0);
        in.emplace_back(reg.edge(j, i), 1.0);
      }
    out.emplace_back(reg.slack_departure(i), 1.0);
    in.emplace_back(reg.slack_arrival(i), 1.0);
    acc.add_square(out, -1.0, w.l4);
    acc.add_square(in, -1.0, w.l5);
  }
  // 6: flow conservation at real nodes.
  for (int j = 1; j <= n; ++j) {
    Lin flow;
    for (int i = 0; i <= n; ++i)
      if (i != j) {
        flow.emplace_back(reg.edge(i, j), 1.0);
        flow.emplace_back(reg.edge(j, i), -1.0);
      }
    acc.add_square(flow, 0.0, w.l6);
  }
  // 7: no immediate return.
  if (w.l7 != 0.0) {
    const int first = dummy_two_cycles_forbidden(inst) ? 0 : 1;
    for (int i = first; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) acc.add(reg.edge(i, j), reg.edge(j, i), w.l7);
  }
  // 8: servicing time between consecutive legs.
  if (w.l8 != 0.0)
    for (int i = 0; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        if (j == i) continue;
        for (int k = 0; k <= n; ++k)
          if (k != i && k != j && timing_conflict(inst, i, j, k))
            acc.add(reg.edge(i, j), reg.edge(j, k), w.l8);
      }

  return QuboModel(reg.size(), acc.offset(), acc.terms(), reg);
}

double energy(const QuboModel& model, const BitVector& bits) {
  if (bits.size() != model.n_vars())
    throw InvalidArgument(fmt::format("bit vector has {} entries, model has {} variables", bits.size(), model.n_vars()));
  double e = model.offset();
  for (const auto& t : model.terms())
    if (bits[t.i] && bits[t.j]) e += t.value;
  return e;
}

PenaltyBreakdown penalty_breakdown(const ProblemInstance& inst, const LagrangeWeights& w, const BitVector& bits) {
  const VariableRegistry reg(inst.n_t);
  if (bits.size() != reg.size())
    throw InvalidArgument(fmt::format("bit vector has {} entries, expected {}", bits.size(), reg.size()));
  const int n = inst.n_t;
  auto x = [&](int i, int j) -> double { return bits[reg.edge(i, j)]; };
  auto sq = [](double v) { return v * v; };

  PenaltyBreakdown p;
  double edges = 0.0;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      if (i != j) {
        p.h += x(i, j) * (inst.C(i, j) + inst.c[i]);
        edges += x(i, j);
      }
  p.c[0] = sq(edges - (inst.n_s + 1));

  double dep0 = 0.0;
  double arr0 = 0.0;
  for (int i = 1; i <= n; ++i) {
    dep0 += x(0, i);
    arr0 += x(i, 0);
  }
  p.c[1] = sq(dep0 - 1.0);
  p.c[2] = sq(arr0 - 1.0);

  for (int i = 1; i <= n; ++i) {
    double out = 0.0;
    double in = 0.0;
    for (int j = 0; j <= n; ++j)
      if (j != i) {
        out += x(i, j);
        in += x(j, i);
      }
    p.c[3] += sq(out + bits[reg.slack_departure(i)] - 1.0);
    p.c[4] += sq(in + bits[reg.slack_arrival(i)] - 1.0);
    p.c[5] += sq(in - out);
  }

  const int first = dummy_two_cycles_forbidden(inst) ? 0 : 1;
  for (int i = first; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) p.c[6] += x(i, j) * x(j, i);

  for (int i = 0; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (j == i || !x(i, j)) continue;
      for (int k = 0; k <= n; ++k)
        if (k != i && k != j && timing_conflict(inst, i, j, k)) p.c[7] += x(j, k);
    }

  p.weighted_total = w.l_h * p.h;
  for (int k = 1; k <= 8; ++k) p.weighted_total += w.constraint(k) * p.constraint(k);
  return p;
}

}  // namespace adr::qubo
