#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "ucx/bellman.hpp"
#include "ucx/certificates.hpp"
#include "ucx/domain.hpp"

namespace ucx {

/// Sampled boundary points of the truncated cone with their obstacle
/// values. Immutable once built; safe to share across queries.
struct ObstacleGrid {
  std::vector<LambdaPoint> points;
  std::vector<double> values;
  double p = 0.0;
  double theta = 0.0;
  double radius = 0.0;

  std::size_t size() const { return points.size(); }
};

/// 8 max(1, 2 ε^{-p}), raised to 2^{p+1} so (1,1,2^p) stays inside the hull.
double default_radius(Exponent p, std::optional<double> eps);

/// Each face gets n_per_face directions times n_per_face scales in
/// (0, radius]; the apex, the ray through (1,1,2^p) and the edge direction
/// (1,1,0) are added. Slice parameters on Face1/Face2 are 1 + 9u^2 with u
/// uniform (clustered at s = 1) and geometric beyond 10.
ObstacleGrid sample_boundary(Exponent p, Theta theta, std::size_t n_per_face, double radius);

struct EnvelopeQuery {
  LambdaPoint x;
  double result = 0.0;
  std::vector<std::pair<std::size_t, double>> active_weights;
};

/// Grid concavification max Σ λ_i R(y_i) s.t. Σ λ_i y_i = x, Σ λ_i = 1.
/// Under-approximates B. Throws Infeasible when x is outside the hull.
EnvelopeQuery concavify(const ObstacleGrid& grid, const LambdaPoint& x);

/// (x3, B̂(1, 1, x3)) for each x3 in [0, 2^p].
std::vector<std::pair<double, double>> envelope_slice(Exponent p, Theta theta, std::span<const double> x3_grid,
                                                      const ObstacleGrid& grid);

struct SliceRow {
  double x3 = 0.0;
  double envelope = 0.0;
  double certificate = 0.0;
  double brute_force = 0.0;
  double brute_residual = 0.0;
  bool flagged = false;  // sandwich violated
};

struct SandwichTolerance {
  double below = 5e-3;  // brute force may exceed the grid envelope by this much
  double above = 1e-9;  // envelope over the certificate
};

/// envelope_slice plus the certificate and brute-force columns, with the
/// sandwich brute - below <= envelope <= certificate + above checked per row.
std::vector<SliceRow> slice_table(const ModulusQuery& q, std::span<const double> x3_grid, const ObstacleGrid& grid,
                                  const SearchBudget& budget, const SandwichTolerance& tol = {});

/// Header `x3,envelope,certificate,brute_force`, 17 significant digits.
void write_slice_csv(std::ostream& os, std::span<const SliceRow> rows);

}  // namespace ucx
