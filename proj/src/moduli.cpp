#include "ucx/moduli.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

#include "ucx/error.hpp"

namespace ucx {

ModulusQuery::ModulusQuery(Exponent p_, double eps_) : p(p_), eps(eps_) {
  if (!(eps_ >= 0.0 && eps_ <= 2.0)) {
    std::ostringstream os;
    os << "epsilon must lie in [0,2], got " << eps_;
    throw Error(ErrorCode::DomainError, os.str());
  }
}

std::string_view to_string(ModulusRoute route) {
  return route == ModulusRoute::ClosedForm ? "closed_form" : "s_star";
}

ModulusRoute route_for(Exponent p) { return p.value() >= 2.0 ? ModulusRoute::ClosedForm : ModulusRoute::SStarPath; }

double delta_closed_form(const ModulusQuery& q) {
  const double p = q.p.value();
  if (p < 2.0) throw Error(ErrorCode::WrongRegime, "closed form needs p >= 2");
  const double tail = std::pow(0.5 * q.eps, p);
  return std::clamp(1.0 - std::pow(1.0 - tail, 1.0 / p), 0.0, 1.0);
}

SStar solve_s_star(const ModulusQuery& q, double tol) {
  const double p = q.p.value();
  if (p > 2.0) throw Error(ErrorCode::WrongRegime, "s* path is defined for 1 < p <= 2");
  if (q.eps == 0.0) throw Error(ErrorCode::DomainError, "s* undefined at epsilon = 0");

  const double target = 2.0 * std::pow(q.eps, -p);
  const auto phi = [&](double s) { return s + boundary_profile(s, q.p).g - target; };
  const double lo = slice_lower_bound(q.p);

  double root = lo;
  if (phi(lo) < 0.0) {
    double hi = std::max(1.0, 2.0 * lo);
    while (phi(hi) < 0.0) {
      hi *= 2.0;
      if (hi > kSStarCap) {
        std::ostringstream os;
        os << "no sign change below " << kSStarCap << " for eps=" << q.eps;
        throw Error(ErrorCode::BracketFailure, os.str());
      }
    }
    root = numerics::bisect_root(phi, {lo, hi, tol});
  }
  return SStar{root, q.eps, q.p, phi(root)};
}

double delta_via_s_star(const ModulusQuery& q, double tol) {
  if (q.eps == 0.0) return 0.0;
  const SStar s = solve_s_star(q, tol);
  const double t = std::pow(s.s_star, q.p.inv());
  return std::clamp(1.0 - q.eps * (t - 0.5), 0.0, 1.0);
}

double delta_implicit(const ModulusQuery& q, double tol) {
  const double p = q.p.value();
  if (p > 2.0) throw Error(ErrorCode::WrongRegime, "implicit equation is the modulus only for 1 < p <= 2");
  if (q.eps == 0.0) return 0.0;
  if (q.eps == 2.0) return 1.0;
  const double half = 0.5 * q.eps;
  const auto lhs = [&](double d) {
    return std::pow(1.0 - d + half, p) + std::pow(std::abs(1.0 - d - half), p) - 2.0;
  };
  return numerics::bisect_root(lhs, {0.0, 1.0, tol});
}

double delta(const ModulusQuery& q) {
  if (q.eps == 0.0) return 0.0;
  if (route_for(q.p) == ModulusRoute::ClosedForm) {
    const double d = delta_closed_form(q);
#ifndef NDEBUG
    if (q.p.value() == 2.0) assert(std::abs(d - delta_via_s_star(q)) < 1e-10);
#endif
    return d;
  }
  return delta_via_s_star(q);
}

}  // namespace ucx
