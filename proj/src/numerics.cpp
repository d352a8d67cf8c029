#include "ucx/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ucx/error.hpp"

namespace ucx::numerics {

namespace {

double checked(const ScalarFn& fn, double t) {
  const double v = fn(t);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os.precision(17);
    os << "function value " << v << " at argument " << t;
    throw Error(ErrorCode::NonFinite, os.str());
  }
  return v;
}

// Dense tableau. Row i holds constraint i in basis form; the last column is
// the right-hand side. `reduced` holds c_j - c_B^T B^{-1} A_j.
struct Tableau {
  std::size_t rows = 0;
  std::size_t cols = 0;  // structural + artificial columns, rhs excluded
  std::vector<double> cells;  // rows x (cols + 1)
  std::vector<std::size_t> basis;
  std::vector<double> reduced;
  double objective = 0.0;  // c_B^T rhs

  double& at(std::size_t i, std::size_t j) { return cells[i * (cols + 1) + j]; }
  double at(std::size_t i, std::size_t j) const { return cells[i * (cols + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, cols); }
  double rhs(std::size_t i) const { return at(i, cols); }

  void pivot(std::size_t r, std::size_t c) {
    const double inv = 1.0 / at(r, c);
    for (std::size_t j = 0; j <= cols; ++j) at(r, j) *= inv;
    at(r, c) = 1.0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const double factor = at(i, c);
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j <= cols; ++j) at(i, j) -= factor * at(r, j);
      at(i, c) = 0.0;
    }
    const double factor = reduced[c];
    if (factor != 0.0) {
      for (std::size_t j = 0; j < cols; ++j) reduced[j] -= factor * at(r, j);
      objective += factor * rhs(r);
      reduced[c] = 0.0;
    }
    basis[r] = c;
  }

  void set_costs(const std::vector<double>& costs) {
    reduced = costs;
    objective = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      const double cb = costs[basis[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) reduced[j] -= cb * at(i, j);
      objective += cb * rhs(i);
    }
  }
};

constexpr double kPivotTol = 1e-11;

// Maximizes with Bland's rule over columns [0, allowed). Returns pivot count.
std::size_t run_simplex(Tableau& t, std::size_t allowed, double rc_tol) {
  std::size_t pivots = 0;
  for (;;) {
    std::size_t enter = allowed;
    for (std::size_t j = 0; j < allowed; ++j) {
      if (t.reduced[j] > rc_tol) {
        enter = j;
        break;
      }
    }
    if (enter == allowed) return pivots;

    std::size_t leave = t.rows;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.rows; ++i) {
      const double a = t.at(i, enter);
      if (a <= kPivotTol) continue;
      const double ratio = std::max(0.0, t.rhs(i)) / a;
      if (ratio < best_ratio || (ratio == best_ratio && t.basis[i] < t.basis[leave])) {
        best_ratio = ratio;
        leave = i;
      }
    }
    if (leave == t.rows) {
      throw Error(ErrorCode::Unbounded, "objective unbounded above; simplex row missing?");
    }
    t.pivot(leave, enter);
    ++pivots;
  }
}

}  // namespace

double grid_point(double lo, double hi, std::size_t i, std::size_t n) {
  if (n < 2 || i == 0) return lo;
  if (i + 1 == n) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

double bisect_root(const ScalarFn& fn, const Bracket& b) {
  if (!(b.lo < b.hi) || !(b.tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "bracket requires lo < hi and tol > 0");
  }
  double lo = b.lo;
  double hi = b.hi;
  double f_lo = checked(fn, lo);
  const double f_hi = checked(fn, hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "f(" << lo << ")=" << f_lo << ", f(" << hi << ")=" << f_hi;
    throw Error(ErrorCode::NoSignChange, os.str());
  }
  while (hi - lo > b.tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = checked(fn, mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

LpSolution solve_lp(const LpProblem& problem, double tol) {
  const std::size_t n = problem.cols();
  const std::size_t m = problem.rows();
  if (problem.eq_matrix.size() != m) {
    throw Error(ErrorCode::InvalidArgument, "eq_matrix row count differs from eq_rhs");
  }
  for (const auto& row : problem.eq_matrix) {
    if (row.size() != n) throw Error(ErrorCode::InvalidArgument, "eq_matrix row length differs from objective");
  }

  Tableau t;
  t.rows = m;
  t.cols = n + m;
  t.cells.assign(m * (t.cols + 1), 0.0);
  t.basis.resize(m);
  double rhs_scale = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = problem.eq_rhs[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = sign * problem.eq_matrix[i][j];
    t.at(i, n + i) = 1.0;
    t.rhs(i) = sign * problem.eq_rhs[i];
    t.basis[i] = n + i;
    rhs_scale = std::max(rhs_scale, std::abs(problem.eq_rhs[i]));
  }

  // Phase 1: maximize -sum(artificials).
  std::vector<double> costs(t.cols, 0.0);
  for (std::size_t i = 0; i < m; ++i) costs[n + i] = -1.0;
  t.set_costs(costs);
  std::size_t pivots = run_simplex(t, t.cols, 1e-12);
  if (t.objective < -tol * rhs_scale) {
    std::ostringstream os;
    os.precision(3);
    os << "phase-1 infeasibility " << -t.objective;
    throw Error(ErrorCode::Infeasible, os.str());
  }

  // Drive zero-level artificials out of the basis; drop redundant rows.
  std::vector<bool> keep(m, true);
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis[i] < n) continue;
    std::size_t col = n;
    double best = kPivotTol;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(t.at(i, j)) > best) {
        best = std::abs(t.at(i, j));
        col = j;
      }
    }
    if (col == n) {
      keep[i] = false;
    } else {
      t.pivot(i, col);
      ++pivots;
    }
  }
  if (std::find(keep.begin(), keep.end(), false) != keep.end()) {
    Tableau reduced;
    reduced.cols = t.cols;
    for (std::size_t i = 0; i < m; ++i) {
      if (!keep[i]) continue;
      reduced.cells.insert(reduced.cells.end(), t.cells.begin() + static_cast<std::ptrdiff_t>(i * (t.cols + 1)),
                           t.cells.begin() + static_cast<std::ptrdiff_t>((i + 1) * (t.cols + 1)));
      reduced.basis.push_back(t.basis[i]);
      ++reduced.rows;
    }
    t = std::move(reduced);
  }

  // Phase 2 over structural columns only.
  costs.assign(t.cols, 0.0);
  double c_scale = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    costs[j] = problem.objective[j];
    c_scale = std::max(c_scale, std::abs(costs[j]));
  }
  t.set_costs(costs);
  pivots += run_simplex(t, n, 1e-12 * c_scale);

  LpSolution sol;
  sol.weights.assign(n, 0.0);
  for (std::size_t i = 0; i < t.rows; ++i) {
    if (t.basis[i] < n) sol.weights[t.basis[i]] = std::max(0.0, t.rhs(i));
  }
  sol.value = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.value += problem.objective[j] * sol.weights[j];
  sol.pivots = pivots;
  return sol;
}

double central_diff(const ScalarFn& fn, double s, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "step h must be positive");
  return (checked(fn, s + h) - checked(fn, s - h)) / (2.0 * h);
}

ScanResult scan_extremum(const ScalarFn& fn, double lo, double hi, std::size_t n, Extremum mode) {
  if (!(lo < hi) || n < 2) throw Error(ErrorCode::InvalidArgument, "scan requires lo < hi and n >= 2");
  ScanResult best{lo, checked(fn, lo)};
  for (std::size_t i = 1; i < n; ++i) {
    const double t = grid_point(lo, hi, i, n);
    const double v = checked(fn, t);
    const bool better = mode == Extremum::Min ? v < best.val : v > best.val;
    if (better) best = {t, v};
  }
  return best;
}

}  // namespace ucx::numerics
