#pragma once

#include "ucx/domain.hpp"
#include "ucx/numerics.hpp"

namespace ucx {

/// (p, ε) with 0 <= ε <= 2. Validated on construction (DomainError).
struct ModulusQuery {
  ModulusQuery(Exponent p, double eps);
  Exponent p;
  double eps;
};

/// Root s* of s + g(s) = 2 ε^{-p} on [2^{-p}, inf).
struct SStar {
  double s_star;
  double eps;
  Exponent p;
  double residual;  // s* + g(s*) - 2 ε^{-p}
};

inline constexpr double kSStarCap = 1e12;

/// 1 - (1 - (ε/2)^p)^{1/p}; WrongRegime for p < 2.
double delta_closed_form(const ModulusQuery& q);

/// Bisection for s*, growing the right end of the bracket geometrically.
/// Requires p <= 2. DomainError for ε = 0, BracketFailure past kSStarCap.
SStar solve_s_star(const ModulusQuery& q, double tol = numerics::kRootTol);

/// 1 - ε (s*^{1/p} - 1/2), for 1 < p < 2 (p = 2 accepted for cross-checks).
double delta_via_s_star(const ModulusQuery& q, double tol = numerics::kRootTol);

/// Root δ in [0,1] of (1 - δ + ε/2)^p + |1 - δ - ε/2|^p = 2 for 1 < p <= 2.
double delta_implicit(const ModulusQuery& q, double tol = numerics::kRootTol);

enum class ModulusRoute { ClosedForm, SStarPath };

std::string_view to_string(ModulusRoute route);
ModulusRoute route_for(Exponent p);

/// Dispatcher: closed form for p >= 2, the s* path for 1 < p < 2, δ(0) = 0.
double delta(const ModulusQuery& q);

}  // namespace ucx
