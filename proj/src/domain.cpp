#include "ucx/domain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ucx/error.hpp"

namespace ucx {

Exponent::Exponent(double p) : p_(p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    std::ostringstream os;
    os << "exponent must satisfy 1 < p < inf, got " << p;
    throw Error(ErrorCode::DomainError, os.str());
  }
}

Theta::Theta(double theta) : theta_(theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    std::ostringstream os;
    os << "theta must lie in [0,1], got " << theta;
    throw Error(ErrorCode::DomainError, os.str());
  }
}

double LambdaPoint::max_coord() const { return std::max({x1, x2, x3}); }

std::string_view to_string(BoundaryFace face) {
  switch (face) {
    case BoundaryFace::Face3: return "Face3";
    case BoundaryFace::Face1: return "Face1";
    case BoundaryFace::Face2: return "Face2";
    case BoundaryFace::Interior: return "Interior";
    case BoundaryFace::Outside: return "Outside";
  }
  return "Unknown";
}

namespace {

struct Roots {
  double r1, r2, r3;
};

Roots roots_of(const LambdaPoint& x, Exponent p) {
  if (x.x1 < 0.0 || x.x2 < 0.0 || x.x3 < 0.0) {
    std::ostringstream os;
    os.precision(17);
    os << "(" << x.x1 << ", " << x.x2 << ", " << x.x3 << ")";
    throw Error(ErrorCode::NegativeCoordinate, os.str());
  }
  const double q = p.inv();
  return {std::pow(x.x1, q), std::pow(x.x2, q), std::pow(x.x3, q)};
}

}  // namespace

BoundaryFace contains(const LambdaPoint& x, Exponent p, double tol) {
  const Roots r = roots_of(x, p);
  const double scale = std::max({r.r1, r.r2, r.r3});
  if (scale == 0.0) return BoundaryFace::Face3;
  const double band = tol * scale;
  const double slack3 = r.r1 + r.r2 - r.r3;
  const double slack1 = r.r2 + r.r3 - r.r1;
  const double slack2 = r.r3 + r.r1 - r.r2;
  if (slack3 < -band || slack1 < -band || slack2 < -band) return BoundaryFace::Outside;
  if (std::abs(slack3) <= band) return BoundaryFace::Face3;
  if (std::abs(slack1) <= band) return BoundaryFace::Face1;
  if (std::abs(slack2) <= band) return BoundaryFace::Face2;
  return BoundaryFace::Interior;
}

double face_formula(BoundaryFace face, const LambdaPoint& x, Exponent p, Theta theta) {
  const Roots r = roots_of(x, p);
  const double th = theta.value();
  switch (face) {
    case BoundaryFace::Face3:
      return std::pow(std::abs(th * r.r1 - (1.0 - th) * r.r2), p.value());
    case BoundaryFace::Face1:
      return std::pow(th * r.r3 + r.r2, p.value());
    case BoundaryFace::Face2:
      return std::pow(r.r1 + (1.0 - th) * r.r3, p.value());
    default:
      throw Error(ErrorCode::NotOnBoundary, "no boundary formula for " + std::string(to_string(face)));
  }
}

double boundary_value(const LambdaPoint& x, Exponent p, Theta theta, double tol) {
  const BoundaryFace face = contains(x, p, tol);
  if (!is_face(face)) {
    std::ostringstream os;
    os.precision(17);
    os << "(" << x.x1 << ", " << x.x2 << ", " << x.x3 << ") is " << to_string(face);
    throw Error(ErrorCode::NotOnBoundary, os.str());
  }
  return face_formula(face, x, p, theta);
}

double slice_lower_bound(Exponent p) { return std::pow(2.0, -p.value()); }

BoundaryProfile boundary_profile(double s, Exponent p) {
  const double lower = slice_lower_bound(p);
  if (!(s >= lower) || !std::isfinite(s)) {
    std::ostringstream os;
    os.precision(17);
    os << "slice parameter " << s << " below 2^-p = " << lower;
    throw Error(ErrorCode::OutOfRange, os.str());
  }
  const double pv = p.value();
  const double t = std::pow(s, p.inv());
  const double jac = t / s;  // d t / d s * p = s^{1/p - 1}
  const double head = std::max(0.0, t - 0.5);
  const double gap = 1.0 - t;

  BoundaryProfile out{};
  out.s = s;
  out.g = std::pow(std::abs(gap), pv);
  out.f = std::pow(head, pv);
  out.f_prime = std::pow(head, pv - 1.0) * jac;
  if (s == 1.0 || gap == 0.0) {
    out.g_prime = 0.0;
  } else {
    const double sign = gap > 0.0 ? 1.0 : -1.0;
    out.g_prime = -sign * std::pow(std::abs(gap), pv - 1.0) * jac;
  }
  return out;
}

LambdaPoint slice_point(double s, Exponent p, bool swapped) {
  const BoundaryProfile prof = boundary_profile(s, p);
  return swapped ? LambdaPoint{prof.g, s, 1.0} : LambdaPoint{s, prof.g, 1.0};
}

}  // namespace ucx
