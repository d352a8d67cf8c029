#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace ucx::numerics {

using ScalarFn = std::function<double(double)>;

inline constexpr double kRootTol = 1e-12;
inline constexpr double kLpTol = 1e-9;

struct Bracket {
  double lo;
  double hi;
  double tol = kRootTol;
};

/// Bisection on a sign-changing bracket. Stops when the bracket is narrower
/// than tol or stops shrinking in floating point.
/// Throws NoSignChange, NonFinite, InvalidArgument.
double bisect_root(const ScalarFn& fn, const Bracket& b);

/// Equality-constrained LP over nonnegative weights:
///   maximize objective . w  s.t.  eq_matrix w = eq_rhs, w >= 0.
/// eq_matrix is stored row-major (rows() x cols()).
struct LpProblem {
  std::vector<double> objective;
  std::vector<std::vector<double>> eq_matrix;
  std::vector<double> eq_rhs;

  std::size_t cols() const { return objective.size(); }
  std::size_t rows() const { return eq_rhs.size(); }
};

struct LpSolution {
  std::vector<double> weights;
  double value = 0.0;
  std::size_t pivots = 0;
};

/// Dense two-phase tableau simplex with Bland's rule.
/// Throws Infeasible when no weights satisfy the constraints, Unbounded
/// (an internal error for the simplex-constrained problems used here).
LpSolution solve_lp(const LpProblem& problem, double tol = kLpTol);

/// (fn(s+h) - fn(s-h)) / (2h). Throws NonFinite, InvalidArgument.
double central_diff(const ScalarFn& fn, double s, double h);

enum class Extremum { Min, Max };

struct ScanResult {
  double arg;
  double val;
};

/// Evaluates fn on n equispaced points of [lo, hi] (endpoints included) and
/// returns the first extremal sample. Throws NonFinite naming the argument.
ScanResult scan_extremum(const ScalarFn& fn, double lo, double hi, std::size_t n, Extremum mode);

/// The i-th of n equispaced points on [lo, hi]; exact at both ends.
double grid_point(double lo, double hi, std::size_t i, std::size_t n);

}  // namespace ucx::numerics
