#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adr/bits.hpp"
#include "adr/instance.hpp"
#include "adr/registry.hpp"

namespace adr::qubo {

/// Multipliers of the objective and of the eight constraint penalties.
struct LagrangeWeights {
  double l_h = 1.0;
  double l1 = 2500.0;
  double l2 = 300.0;
  double l3 = 300.0;
  double l4 = 300.0;
  double l5 = 300.0;
  double l6 = 2500.0;
  double l7 = 4000.0;
  double l8 = 5000.0;

  /// l1..l8 by constraint number.
  double constraint(int k) const;
  double& constraint(int k);
  void check() const;

  bool operator==(const LagrangeWeights&) const = default;
};

struct Term {
  std::uint32_t i;
  std::uint32_t j;  // i <= j; i == j is a linear term
  double value;

  bool operator==(const Term&) const = default;
};

/// Immutable QUBO: energy(x) = offset + sum_{i<=j} Q_ij x_i x_j.
class QuboModel {
public:
  /// Sorts by (i, j), swaps keys with i > j, merges duplicates and drops zeros.
  QuboModel(std::size_t n_vars, double offset, std::vector<Term> terms,
            std::optional<VariableRegistry> registry = std::nullopt);

  std::size_t n_vars() const noexcept { return n_vars_; }
  double offset() const noexcept { return offset_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  const std::optional<VariableRegistry>& registry() const noexcept { return registry_; }

  /// Q_ij (order of i and j irrelevant); 0 when absent.
  double coefficient(std::size_t i, std::size_t j) const;

  /// Name of variable `index`: registry name when present, else "v<index>".
  std::string name(std::size_t index) const;

private:
  std::size_t n_vars_;
  double offset_;
  std::vector<Term> terms_;
  std::optional<VariableRegistry> registry_;
};

/// Unweighted objective and constraint values, evaluated from their
/// defining sums rather than from the expanded coefficients.
struct PenaltyBreakdown {
  double h = 0.0;
  double c[8] = {};  // c[k-1] is constraint k
  double weighted_total = 0.0;

  double constraint(int k) const { return c[k - 1]; }
  double penalty() const;  // sum of unweighted c_k
};

/// Expands objective and penalties into a QUBO with a constant offset.
QuboModel build_qubo(const ProblemInstance& instance, const LagrangeWeights& weights = {});

/// offset + linear + quadratic terms. Throws InvalidArgument on length mismatch.
double energy(const QuboModel& model, const BitVector& bits);

PenaltyBreakdown penalty_breakdown(const ProblemInstance& instance, const LagrangeWeights& weights,
                                   const BitVector& bits);

/// Text export: optional comment lines ("c ..."), a header
/// `p qubo <n_vars> <n_terms> <offset>`, then `i j value` sorted by (i, j).
void write_qubo(std::ostream& out, const QuboModel& model, std::span<const std::string> comments = {});
std::string export_qubo(const QuboModel& model);
/// Sidecar map, one `index name` line per variable.
void write_name_map(std::ostream& out, const QuboModel& model);
std::string export_name_map(const QuboModel& model);

/// Reads the export format back. Comment lines starting with 'c' or '#' are skipped.
QuboModel read_qubo(std::istream& in);
QuboModel import_qubo(std::string_view text);

}  // namespace adr::qubo
