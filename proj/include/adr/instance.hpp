#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace adr {

/// Dense row-major square matrix of doubles.
class SquareMatrix {
public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }
  const std::vector<double>& data() const noexcept { return data_; }

  bool operator==(const SquareMatrix&) const = default;

private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Everything a solver needs to know about one mission-planning problem.
///
/// Node 0 is the dummy start/end node; nodes 1..n_t are real debris. The
/// tables always include the dummy row and column:
///   T(0,i) = 0, T(i,0) = t_max, C(0,i) = C(i,0) = 0, c[0] = 0.
struct ProblemInstance {
  int n_t = 0;
  int n_s = 0;
  double t_max = 0.0;  // days
  double t_s = 0.0;    // days of servicing per debris
  std::vector<std::string> labels;  // size n_t; labels[i-1] names debris i
  SquareMatrix T;                   // alignment times, days from t0
  SquareMatrix C;                   // transfer costs
  std::vector<double> c;            // disposal costs, size n_t + 1
  std::string cost_unit;            // "m/s" for catalog-derived data, empty for abstract units

  std::size_t nodes() const noexcept { return static_cast<std::size_t>(n_t) + 1; }
  const std::string& label(int node) const;

  /// Throws InvalidArgument when any documented invariant is broken.
  void check() const;

  bool operator==(const ProblemInstance&) const = default;
};

/// Builds an instance from tables over the real debris only (n_t x n_t,
/// index 0 = debris 1) and synthesizes the dummy row and column.
ProblemInstance instance_from_real_tables(int n_s, double t_max, double t_s,
                                          std::vector<std::string> labels,
                                          const SquareMatrix& real_T,
                                          const SquareMatrix& real_C,
                                          const std::vector<double>& real_c);

/// Relative tolerance used for every floating comparison on table values.
inline constexpr double kRelTol = 1e-9;

inline bool approx_equal(double a, double b, double rel = kRelTol) {
  const double scale = std::max({1.0, a < 0 ? -a : a, b < 0 ? -b : b});
  const double d = a - b;
  return (d < 0 ? -d : d) <= rel * scale;
}

/// True when `lhs > rhs` by more than the relative tolerance.
inline bool definitely_greater(double lhs, double rhs, double rel = kRelTol) {
  return lhs > rhs && !approx_equal(lhs, rhs, rel);
}

}  // namespace adr

namespace adr {

/// Timing rule shared by the QUBO and the validators: the consecutive legs
/// i -> j -> k conflict when arriving at j at T(i,j) plus the servicing time
/// is strictly later than the departure epoch T(j,k). Equality is feasible.
inline bool timing_conflict(const ProblemInstance& inst, int i, int j, int k) {
  return definitely_greater(inst.T(i, j) + inst.t_s, inst.T(j, k));
}

/// Whether the anti-2-cycle rule also covers pairs involving the dummy node.
/// It does except for single-target missions, whose only tour 0 -> j -> 0 is
/// itself a 2-cycle through the dummy.
inline bool dummy_two_cycles_forbidden(const ProblemInstance& inst) { return inst.n_s >= 2; }

}  // namespace adr
