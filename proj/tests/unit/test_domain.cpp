#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ucx/domain.hpp"
#include "ucx/error.hpp"
#include "ucx/numerics.hpp"

using namespace ucx;

namespace {

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected ucx::Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("Exponent and Theta validation") {
  CHECK(code_of([] { Exponent(1.0); }) == ErrorCode::DomainError);
  CHECK(code_of([] { Exponent(std::nan("")); }) == ErrorCode::DomainError);
  CHECK(code_of([] { Theta(1.5); }) == ErrorCode::DomainError);
  CHECK(Exponent(4.0).inv() == 0.25);
  CHECK(Theta::half().value() == 0.5);
}

TEST_CASE("contains examples") {
  CHECK(contains({1.0, 1.0, 8.0}, Exponent(3.0)) == BoundaryFace::Face3);
  CHECK(contains({1.0, 1.0, 1.0}, Exponent(2.0)) == BoundaryFace::Interior);
  CHECK(contains({1.0, 1.0, 9.0}, Exponent(1.0001)) == BoundaryFace::Outside);
  CHECK(contains({0.0, 0.0, 0.0}, Exponent(2.0)) == BoundaryFace::Face3);
  CHECK(contains({4.0, 1.0, 1.0}, Exponent(2.0)) == BoundaryFace::Face1);
  CHECK(contains({1.0, 4.0, 1.0}, Exponent(2.0)) == BoundaryFace::Face2);
  CHECK(code_of([] { contains({-1.0, 1.0, 1.0}, Exponent(2.0)); }) == ErrorCode::NegativeCoordinate);
}

TEST_CASE("contains is homogeneous and symmetric in x1, x2") {
  const Exponent p(2.7);
  const LambdaPoint pts[] = {{1.0, 1.0, std::pow(2.0, 2.7)}, {3.0, 0.2, 1.0}, {0.4, 0.5, 0.3}, {1.0, 1.0, 20.0}};
  for (const auto& x : pts) {
    const BoundaryFace f = contains(x, p);
    CHECK(contains(x.scaled(1e3), p) == f);
    CHECK(contains(x.scaled(1e-3), p) == f);
    BoundaryFace mirrored = contains({x.x2, x.x1, x.x3}, p);
    if (f == BoundaryFace::Face1) CHECK(mirrored == BoundaryFace::Face2);
    else if (f == BoundaryFace::Face2) CHECK(mirrored == BoundaryFace::Face1);
    else CHECK(mirrored == f);
  }
}

TEST_CASE("boundary_value examples") {
  const Theta half = Theta::half();
  for (double pv : {1.2, 1.5, 2.0, 3.0, 7.0}) {
    const Exponent p(pv);
    CHECK(std::abs(boundary_value({1.0, 1.0, std::pow(2.0, pv)}, p, half)) < 1e-12);
  }
  CHECK(boundary_value(slice_point(4.0, Exponent(2.0)), Exponent(2.0), half) == doctest::Approx(2.25));
  CHECK(boundary_value({1.0, 4.0, 1.0}, Exponent(2.0), half) == doctest::Approx(2.25));
  CHECK(code_of([] { boundary_value({1.0, 1.0, 1.0}, Exponent(2.0), Theta::half()); }) ==
        ErrorCode::NotOnBoundary);
}

TEST_CASE("boundary_value mirror symmetry at theta = 1/2") {
  const Exponent p(1.7);
  for (double s : {0.4, 1.0, 2.5, 40.0}) {
    const double a = boundary_value(slice_point(s, p), p, Theta::half());
    const double b = boundary_value(slice_point(s, p, true), p, Theta::half());
    CHECK(a == doctest::Approx(b).epsilon(1e-13));
  }
}

TEST_CASE("face formulas agree on edges") {
  const Exponent p(2.5);
  const Theta th(0.3);
  // Face3 and Face1 meet where x2 = 0
  const LambdaPoint e31{2.0, 0.0, 2.0};
  CHECK(face_formula(BoundaryFace::Face3, e31, p, th) == doctest::Approx(face_formula(BoundaryFace::Face1, e31, p, th)));
  // Face1 and Face2 meet where x3 = 0
  const LambdaPoint e12{3.0, 3.0, 0.0};
  CHECK(face_formula(BoundaryFace::Face1, e12, p, th) == doctest::Approx(face_formula(BoundaryFace::Face2, e12, p, th)));
  // Face3 and Face2 meet where x1 = 0
  const LambdaPoint e32{0.0, 1.5, 1.5};
  CHECK(face_formula(BoundaryFace::Face3, e32, p, th) == doctest::Approx(face_formula(BoundaryFace::Face2, e32, p, th)));
}

TEST_CASE("boundary_profile examples") {
  const Exponent p15(1.5);
  const double lo = std::pow(2.0, -1.5);
  const auto a = boundary_profile(lo, p15);
  CHECK(a.g == doctest::Approx(lo));
  CHECK(a.f == 0.0);
  CHECK(a.f_prime == 0.0);
  CHECK(1.0 + a.g_prime == doctest::Approx(0.0).epsilon(1e-15));

  const auto b = boundary_profile(1.0, p15);
  CHECK(b.g == 0.0);
  CHECK(b.g_prime == 0.0);
  CHECK(b.f == doctest::Approx(std::pow(0.5, 1.5)));
  CHECK(b.f_prime == doctest::Approx(std::sqrt(0.5)));

  // f'(4) = 0.75 and g'(4) = 0.5 at p = 2 (mpmath)
  const auto c = boundary_profile(4.0, Exponent(2.0));
  CHECK(c.g == doctest::Approx(1.0));
  CHECK(c.f == doctest::Approx(2.25));
  CHECK(c.g_prime == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(c.f_prime == doctest::Approx(0.75).epsilon(1e-14));

  const auto d = boundary_profile(4.0, p15);
  CHECK(d.f_prime == doctest::Approx(0.895307136408493).epsilon(1e-13));
  CHECK(d.g_prime == doctest::Approx(0.776627154436381).epsilon(1e-13));

  CHECK(code_of([] { boundary_profile(0.1, Exponent(2.0)); }) == ErrorCode::OutOfRange);
}

TEST_CASE("boundary_profile derivatives match central differences") {
  for (double pv : {1.1, 1.5, 1.9, 2.0, 3.0, 6.0}) {
    const Exponent p(pv);
    for (double s : {0.6, 0.9, 1.3, 2.0, 7.5, 60.0}) {
      if (s <= slice_lower_bound(p) + 1e-3) continue;
      const double h = 1e-6 * s;
      const double fd_f = numerics::central_diff([&](double t) { return boundary_profile(t, p).f; }, s, h);
      const double fd_g = numerics::central_diff([&](double t) { return boundary_profile(t, p).g; }, s, h);
      const auto bp = boundary_profile(s, p);
      CHECK(std::abs(fd_f - bp.f_prime) < 1e-6 * std::max(1.0, std::abs(bp.f_prime)));
      CHECK(std::abs(fd_g - bp.g_prime) < 1e-6 * std::max(1.0, std::abs(bp.g_prime)));
    }
  }
}

TEST_CASE("slice_point examples") {
  const Exponent p2(2.0);
  const auto a = slice_point(0.25, p2);
  CHECK(a.x1 == 0.25);
  CHECK(a.x2 == doctest::Approx(0.25));
  CHECK(a.x3 == 1.0);
  const auto b = slice_point(1.0, p2);
  CHECK(b.x1 == 1.0);
  CHECK(b.x2 == 0.0);
  // (1, 0, 1) is the Face3/Face1 edge; contains reports the first face
  CHECK(is_face(contains(b, p2)));
  const auto c = slice_point(4.0, p2);
  CHECK(c.x2 == doctest::Approx(1.0));
  CHECK(contains(c, p2) == BoundaryFace::Face1);
  CHECK(contains(slice_point(4.0, p2, true), p2) == BoundaryFace::Face2);
}

TEST_CASE("slice points lie on the boundary for all s") {
  for (double pv : {1.3, 2.0, 4.0}) {
    const Exponent p(pv);
    for (double s = slice_lower_bound(p); s < 200.0; s *= 1.37) {
      CHECK(is_face(contains(slice_point(s, p), p)));
      CHECK(is_face(contains(slice_point(s, p, true), p)));
    }
  }
}
