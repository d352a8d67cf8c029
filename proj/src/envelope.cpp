#include "ucx/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ucx/error.hpp"
#include "ucx/numerics.hpp"
#include "ucx/parallel.hpp"

namespace ucx {

double default_radius(Exponent p, std::optional<double> eps) {
  double r = 8.0;
  if (eps && *eps > 0.0) r = 8.0 * std::max(1.0, 2.0 * std::pow(*eps, -p.value()));
  return std::max(r, std::pow(2.0, p.value() + 1.0));
}

namespace {

// Face1 slice parameters: s = 1 + 9u^2 for u uniform on [0, 1], geometric up
// to 1e8 beyond. The face behaves like (s - 1)^p near s = 1, so uniform s
// undersamples exactly where the p < 2 extremals sit.
std::vector<double> face1_parameters(std::size_t n) {
  std::vector<double> s;
  const std::size_t n_uniform = std::max<std::size_t>(2, n / 2);
  for (std::size_t i = 0; i < n_uniform; ++i) {
    const double u = numerics::grid_point(0.0, 1.0, i, n_uniform);
    s.push_back(1.0 + 9.0 * u * u);
  }
  const std::size_t n_geo = n > n_uniform + 1 ? n - n_uniform - 1 : 0;
  for (std::size_t i = 1; i <= n_geo; ++i) {
    s.push_back(10.0 * std::pow(1e7, static_cast<double>(i) / static_cast<double>(n_geo)));
  }
  return s;
}

struct Ray {
  LambdaPoint dir;
  double value;  // boundary value at dir
  std::size_t scales;
};

// Rays are laid out scale-major, outermost ring first: the simplex scans
// columns in index order, and the outer ring spans the hull in few pivots.
void add_rays(ObstacleGrid& grid, const std::vector<Ray>& rays, std::size_t n_scales) {
  for (std::size_t k = n_scales; k >= 1; --k) {
    for (const Ray& ray : rays) {
      if (k > ray.scales) continue;
      const double lambda =
          grid.radius * static_cast<double>(k) / static_cast<double>(ray.scales) / ray.dir.max_coord();
      grid.points.push_back(ray.dir.scaled(lambda));
      grid.values.push_back(lambda * ray.value);
    }
  }
}

}  // namespace

ObstacleGrid sample_boundary(Exponent p, Theta theta, std::size_t n_per_face, double radius) {
  if (n_per_face < 2) throw Error(ErrorCode::InvalidArgument, "n_per_face must be at least 2");
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  const double pv = p.value();

  ObstacleGrid grid;
  grid.p = pv;
  grid.theta = theta.value();
  grid.radius = radius;
  grid.points.push_back({0.0, 0.0, 0.0});
  grid.values.push_back(0.0);

  std::vector<Ray> rays;
  auto ray = [&](const LambdaPoint& dir, std::size_t scales) {
    rays.push_back({dir, boundary_value(dir, p, theta), scales});
  };
  // Face3: f = t u, g = -(1-t) u.
  for (std::size_t i = 0; i < n_per_face; ++i) {
    const double t = numerics::grid_point(0.0, 1.0, i, n_per_face);
    ray({std::pow(t, pv), std::pow(1.0 - t, pv), 1.0}, n_per_face);
  }
  // Face1 and its mirror Face2, normalized by s: (1, (1 - s^{-1/p})^p, 1/s).
  for (double s : face1_parameters(n_per_face)) {
    const double v = std::pow(s, -1.0 / pv);
    const double a = std::pow(1.0 - v, pv);
    ray({1.0, a, 1.0 / s}, n_per_face);
    ray({a, 1.0, 1.0 / s}, n_per_face);
  }
  // Anchors: edge x3 = 0 and the ray through (1, 1, 2^p).
  ray({1.0, 1.0, 0.0}, 1);
  ray({1.0, 1.0, std::pow(2.0, pv)}, 1);
  add_rays(grid, rays, n_per_face);
  return grid;
}

EnvelopeQuery concavify(const ObstacleGrid& grid, const LambdaPoint& x) {
  const std::size_t n = grid.size();
  numerics::LpProblem lp;
  lp.objective = grid.values;
  lp.eq_matrix.assign(4, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    lp.eq_matrix[0][i] = grid.points[i].x1;
    lp.eq_matrix[1][i] = grid.points[i].x2;
    lp.eq_matrix[2][i] = grid.points[i].x3;
    lp.eq_matrix[3][i] = 1.0;
  }
  lp.eq_rhs = {x.x1, x.x2, x.x3, 1.0};

  numerics::LpSolution sol;
  try {
    sol = numerics::solve_lp(lp);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Infeasible) throw;
    std::ostringstream os;
    os.precision(17);
    os << "(" << x.x1 << ", " << x.x2 << ", " << x.x3 << ") outside the sampled hull (radius " << grid.radius
       << "); " << e.what();
    throw Error(ErrorCode::Infeasible, os.str());
  }

  EnvelopeQuery q;
  q.x = x;
  q.result = sol.value;
  for (std::size_t i = 0; i < n; ++i) {
    if (sol.weights[i] > 0.0) q.active_weights.emplace_back(i, sol.weights[i]);
  }
  return q;
}

std::vector<std::pair<double, double>> envelope_slice(Exponent p, Theta theta, std::span<const double> x3_grid,
                                                      const ObstacleGrid& grid) {
  if (grid.p != p.value() || grid.theta != theta.value()) {
    throw Error(ErrorCode::InvalidArgument, "obstacle grid was sampled for a different (p, theta)");
  }
  const double top = std::pow(2.0, p.value());
  std::vector<std::pair<double, double>> table(x3_grid.size());
  parallel_for(x3_grid.size(), [&](std::size_t i) {
    const double x3 = x3_grid[i];
    if (!(x3 >= 0.0 && x3 <= top)) throw Error(ErrorCode::OutOfRange, "slice x3 must lie in [0, 2^p]");
    table[i] = {x3, concavify(grid, {1.0, 1.0, x3}).result};
  });
  return table;
}

std::vector<SliceRow> slice_table(const ModulusQuery& q, std::span<const double> x3_grid, const ObstacleGrid& grid,
                                  const SearchBudget& budget, const SandwichTolerance& tol) {
  const Theta half = Theta::half();
  const auto slice = envelope_slice(q.p, half, x3_grid, grid);
  const Certificate cert = certificate_for(q);
  std::vector<SliceRow> rows;
  rows.reserve(slice.size());
  for (const auto& [x3, env] : slice) {
    SliceRow row;
    row.x3 = x3;
    row.envelope = env;
    const LambdaPoint x{1.0, 1.0, x3};
    row.certificate = cert.value(x);
    const BruteForceResult bf = brute_force_B(x, q.p, half, budget);
    row.brute_force = bf.value;
    row.brute_residual = bf.residual;
    // An infeasible brute-force witness bounds nothing, so only the upper
    // half of the sandwich is checked on that row.
    const bool bf_feasible = bf.residual <= kFeasibleResidual;
    row.flagged = (bf_feasible && bf.value - tol.below > env) || env > row.certificate + tol.above;
    rows.push_back(row);
  }
  return rows;
}

void write_slice_csv(std::ostream& os, std::span<const SliceRow> rows) {
  os << "x3,envelope,certificate,brute_force\n";
  for (const SliceRow& r : rows) {
    os << format_double(r.x3) << ',' << format_double(r.envelope) << ',' << format_double(r.certificate) << ','
       << format_double(r.brute_force) << '\n';
  }
}

}  // namespace ucx
