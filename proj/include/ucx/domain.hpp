#pragma once

#include <array>
#include <string_view>

namespace ucx {

/// Lebesgue exponent p. The constructor enforces p > 1; the Hanner-gap code
/// that also accepts p = 1 takes a plain double.
class Exponent {
 public:
  explicit Exponent(double p);
  double value() const noexcept { return p_; }
  double inv() const noexcept { return 1.0 / p_; }

 private:
  double p_;
};

/// Convex-combination weight between f and g in the payoff |θf + (1-θ)g|^p.
class Theta {
 public:
  explicit Theta(double theta);
  static Theta half() { return Theta(0.5); }
  double value() const noexcept { return theta_; }

 private:
  double theta_;
};

/// Averaged moments (<|f|^p>, <|g|^p>, <|f-g|^p>). Membership in the cone is
/// not an invariant of the type; see contains().
struct LambdaPoint {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  std::array<double, 3> as_array() const { return {x1, x2, x3}; }
  LambdaPoint scaled(double lambda) const { return {lambda * x1, lambda * x2, lambda * x3}; }
  double max_coord() const;
};

enum class BoundaryFace {
  Face3,  // x1^{1/p} + x2^{1/p} = x3^{1/p}
  Face1,  // x2^{1/p} + x3^{1/p} = x1^{1/p}
  Face2,  // x3^{1/p} + x1^{1/p} = x2^{1/p}
  Interior,
  Outside,
};

std::string_view to_string(BoundaryFace face);
inline bool is_face(BoundaryFace f) { return f != BoundaryFace::Interior && f != BoundaryFace::Outside; }

inline constexpr double kFaceTol = 1e-9;

/// Classifies x against the three p-th-root triangle inequalities.
/// The tolerance is relative to the largest p-th root; the apex is a face.
/// When x sits on an edge the first matching face in the order Face3, Face1,
/// Face2 is returned. Throws NegativeCoordinate.
BoundaryFace contains(const LambdaPoint& x, Exponent p, double tol = kFaceTol);

/// Boundary data B|_{∂Λ}: the payoff of the collinear pair with moments x.
/// Throws NotOnBoundary for Interior/Outside points.
double boundary_value(const LambdaPoint& x, Exponent p, Theta theta, double tol = kFaceTol);

/// Boundary data evaluated with the formula of a specific face, no
/// classification. Used to check agreement on edges.
double face_formula(BoundaryFace face, const LambdaPoint& x, Exponent p, Theta theta);

/// Slice parametrization of the θ = 1/2 boundary data at x3 = 1:
/// g(s) = |1 - s^{1/p}|^p, f(s) = (s^{1/p} - 1/2)^p, with analytic
/// derivatives. Valid for s >= 2^{-p}.
struct BoundaryProfile {
  double s;
  double g;
  double f;
  double g_prime;
  double f_prime;
};

double slice_lower_bound(Exponent p);

/// Throws OutOfRange if s < 2^{-p}.
BoundaryProfile boundary_profile(double s, Exponent p);

/// (s, g(s), 1), or (g(s), s, 1) when swapped.
LambdaPoint slice_point(double s, Exponent p, bool swapped = false);

}  // namespace ucx
