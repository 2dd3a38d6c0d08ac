#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "adr/bits.hpp"
#include "adr/errors.hpp"
#include "adr/instance.hpp"

namespace adr::mission {

struct MissionPlan {
  std::vector<int> sequence;            // real debris indices in visiting order
  std::vector<std::string> labels;
  std::vector<double> arrival_times;    // per target, then the return to the dummy node
  std::vector<double> transfer_costs;   // legs between consecutive targets
  std::vector<double> disposal_costs;   // per target
  double total_transfer = 0.0;
  double total_disposal = 0.0;
  double total = 0.0;
  double duration = 0.0;                // arrival at the last target
  double t_max = 0.0;
  double t_s = 0.0;
  std::string cost_unit;

  double margin() const { return t_max - duration; }
};

struct ConstraintVerdict {
  bool pass = true;
  std::string detail;
};

struct ValidationReport {
  std::array<ConstraintVerdict, 8> verdicts;  // verdicts[k-1] is constraint k
  bool valid = true;

  const ConstraintVerdict& constraint(int k) const { return verdicts[k - 1]; }
  std::string describe() const;
};

/// Raised by decode for vectors that are not a single valid tour.
class InvalidSolution : public DataError {
public:
  InvalidSolution(const std::string& what, ValidationReport report)
      : DataError(what), report_(std::move(report)) {}
  const ValidationReport& report() const noexcept { return report_; }

private:
  ValidationReport report_;
};

/// Checks the eight constraints from their combinatorial definitions.
ValidationReport validate(const BitVector& bits, const ProblemInstance& inst);

/// Costs and schedule of a visiting order, without feasibility checks.
MissionPlan plan_for_sequence(std::span<const int> sequence, const ProblemInstance& inst);

/// Timing chain 0 -> s1 -> ... -> sN -> 0 with servicing gaps.
bool schedule_feasible(std::span<const int> sequence, const ProblemInstance& inst);

MissionPlan decode(const BitVector& bits, const ProblemInstance& inst);

BitVector encode(std::span<const int> sequence, const ProblemInstance& inst);

struct FeasiblePath {
  std::vector<int> sequence;
  double cost = 0.0;
  std::vector<double> arrival_times;
};

inline constexpr std::size_t kOracleGuard = 10'000'000;

/// All schedulable ordered selections of n_s targets, sorted by cost then
/// lexicographically. Refuses when n_t!/(n_t-n_s)! exceeds `guard`.
std::vector<FeasiblePath> oracle_enumerate(const ProblemInstance& inst, std::size_t guard = kOracleGuard);

using BigInt = boost::multiprecision::cpp_int;

/// n_t! / (n_t - n_s)!
BigInt count_paths(int n_t, int n_s);

}  // namespace adr::mission
