#include "ucx/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ucx/error.hpp"
#include "ucx/numerics.hpp"

namespace ucx {

using numerics::grid_point;

std::string_view to_string(Regime regime) { return regime == Regime::GE2 ? "GE2" : "LT2"; }

Regime regime_for(Exponent p) { return p.value() >= 2.0 ? Regime::GE2 : Regime::LT2; }

Certificate certificate_ge2(Exponent p) {
  if (p.value() < 2.0) throw Error(ErrorCode::WrongRegime, "certificate_ge2 needs p >= 2");
  Certificate cert{0.0, {0.5, 0.5, -std::pow(2.0, -p.value())}, {Regime::GE2, p, std::nullopt, std::nullopt}};
  return cert;
}

Certificate certificate_lt2(const ModulusQuery& q) {
  if (q.p.value() >= 2.0) throw Error(ErrorCode::WrongRegime, "certificate_lt2 needs 1 < p < 2");
  const SStar root = solve_s_star(q);
  const BoundaryProfile prof = boundary_profile(root.s_star, q.p);
  // f'(2^{-p}) = 0 = 1 + g'(2^{-p}); the certificate is identically zero there.
  const double denom = 1.0 + prof.g_prime;
  const double kappa = denom > 0.0 ? prof.f_prime / denom : 0.0;
  const double two_eps_p = 2.0 * std::pow(q.eps, -q.p.value());
  return Certificate{0.0,
                     {kappa, kappa, prof.f - two_eps_p * kappa},
                     {Regime::LT2, q.p, q.eps, root.s_star}};
}

Certificate certificate_for(const ModulusQuery& q) {
  return regime_for(q.p) == Regime::GE2 ? certificate_ge2(q.p) : certificate_lt2(q);
}

double majorization_gap(double s, const Certificate& cert) {
  const BoundaryProfile prof = boundary_profile(s, cert.meta.p);
  return cert.value({s, prof.g, 1.0}) - prof.f;
}

double majorization_tail_gap(double u, const Certificate& cert) {
  if (!(u >= 0.0 && u <= 1.0)) throw Error(ErrorCode::OutOfRange, "tail variable u must lie in [0,1]");
  const double p = cert.meta.p.value();
  const double v = std::pow(u, 1.0 / p);
  return cert.c0 * u + cert.c[0] + cert.c[1] * std::pow(1.0 - v, p) + cert.c[2] * u - std::pow(1.0 - 0.5 * v, p);
}

double w_function(double s, Exponent p) {
  if (p.value() < 2.0) throw Error(ErrorCode::WrongRegime, "W is the p >= 2 appendix function");
  if (!(s >= 1.0 && s <= 2.0)) throw Error(ErrorCode::OutOfRange, "W is defined on [1, 2]");
  const double e = p.value() - 1.0;
  return 1.0 - std::pow(s - 1.0, e) - 2.0 * std::pow(1.0 - 0.5 * s, e);
}

double slope_claim(double s, Exponent p) {
  const BoundaryProfile prof = boundary_profile(s, p);
  return prof.f * (1.0 + prof.g_prime) - prof.f_prime * (s + prof.g);
}

namespace {

// Tail forms in u = 1/s, v = u^{1/p}, valid for s >= 1.
double slope_claim_tail(double u, double p) {
  const double v = std::pow(u, 1.0 / p);
  const double a = 1.0 - 0.5 * v;
  const double b = 1.0 - v;
  return std::pow(a, p) * (1.0 + std::pow(b, p - 1.0)) - std::pow(a, p - 1.0) * (1.0 + std::pow(b, p));
}

double ratio_tail(double u, double p) {
  const double v = std::pow(u, 1.0 / p);
  return std::pow(1.0 - 0.5 * v, p - 1.0) / (1.0 + std::pow(1.0 - v, p - 1.0));
}

double gap_slope(double s, const Certificate& cert) {
  const BoundaryProfile prof = boundary_profile(s, cert.meta.p);
  return cert.c[0] + cert.c[1] * prof.g_prime - prof.f_prime;
}

double ratio(double s, Exponent p) {
  const BoundaryProfile prof = boundary_profile(s, p);
  return prof.f_prime / (1.0 + prof.g_prime);
}

struct Extreme {
  double value;
  double arg;
};

// Extreme of fn over grid points first..n-1 of [lo, hi].
template <class Fn>
Extreme scan(Fn&& fn, double lo, double hi, std::size_t n, bool want_min, std::size_t first = 0) {
  Extreme best{want_min ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity(), lo};
  for (std::size_t i = first; i < n; ++i) {
    const double s = grid_point(lo, hi, i, n);
    const double v = fn(s);
    if (!std::isfinite(v)) return {std::numeric_limits<double>::quiet_NaN(), s};
    if (want_min ? v < best.value : v > best.value) best = {v, s};
  }
  return best;
}

VerificationReport make(std::string claim, std::size_t grid, Extreme e, bool pass) {
  return {std::move(claim), grid, e.value, e.arg, pass && std::isfinite(e.value)};
}

void common_reports(std::vector<VerificationReport>& out, const Certificate& cert, double lo, double hi,
                    const AppendixOptions& o) {
  const Exponent p = cert.meta.p;
  const std::size_t n = o.grid_n;
  const double u_max = 1.0 / hi;

  auto u_min = scan([&](double s) { return majorization_gap(s, cert); }, lo, hi, n, true);
  out.push_back(make("U_nonneg", n, u_min, u_min.value >= -o.tol));

  auto tail = scan([&](double u) { return majorization_tail_gap(u, cert); }, 0.0, u_max, n, true, 1);
  out.push_back(make("U_tail_nonneg", n, tail, tail.value >= -o.tol));

  auto d = scan([&](double s) { return slope_claim(s, p); }, lo, hi, n, false);
  out.push_back(make("slope_claim", n, d, d.value <= o.tol));

  auto d_tail = scan([&](double u) { return slope_claim_tail(u, p.value()); }, 0.0, u_max, n, false, 1);
  out.push_back(make("slope_claim_tail", n, d_tail, d_tail.value <= o.tol));
}

void ge2_reports(std::vector<VerificationReport>& out, const Certificate& cert, double lo, double hi,
                 const AppendixOptions& o) {
  const Exponent p = cert.meta.p;
  const std::size_t n = o.grid_n;

  const double u_lo = majorization_gap(lo, cert);
  out.push_back(make("U_left_endpoint", 1, {std::abs(u_lo), lo}, std::abs(u_lo) <= o.tol));

  auto slope = scan([&](double s) { return gap_slope(s, cert); }, lo, hi, n, true);
  out.push_back(make("U_prime_nonneg", n, slope, slope.value >= -o.tol));

  auto w_min = scan([&](double s) { return w_function(s, p); }, 1.0, 2.0, n, true);
  out.push_back(make("W_nonneg", n, w_min, w_min.value >= -o.tol));

  // Second differences on the uniform grid; nonpositive up to a relative band.
  Extreme conc{-std::numeric_limits<double>::infinity(), 1.0};
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double s = grid_point(1.0, 2.0, i, n);
    const double mid = w_function(s, p);
    const double second = w_function(grid_point(1.0, 2.0, i - 1, n), p) - 2.0 * mid +
                          w_function(grid_point(1.0, 2.0, i + 1, n), p);
    const double scaled = second / std::max(1.0, std::abs(mid));
    if (scaled > conc.value) conc = {scaled, s};
  }
  out.push_back(make("W_concave", n, conc, conc.value <= o.concavity_tol));

  const double w1 = w_function(1.0, p);
  const double w1_err = std::abs(w1 - (1.0 - std::pow(2.0, 2.0 - p.value())));
  out.push_back(make("W_left_endpoint", 1, {w1_err, 1.0}, w1_err <= o.tol && w1 >= 0.0));
  const double w2 = std::abs(w_function(2.0, p));
  out.push_back(make("W_right_endpoint", 1, {w2, 2.0}, w2 <= o.tol));

  // W(s) = 2 U'(s^{-p}): ties W to the monotonicity of U on [2^{-p}, 1].
  auto ident = scan([&](double s) { return std::abs(w_function(s, p) - 2.0 * gap_slope(std::pow(s, -p.value()), cert)); },
                    1.0, 2.0, n, false);
  out.push_back(make("W_identity", n, ident, ident.value <= o.tol));
}

void lt2_reports(std::vector<VerificationReport>& out, const Certificate& cert, double lo, double hi,
                 const AppendixOptions& o) {
  const Exponent p = cert.meta.p;
  const std::size_t n = o.grid_n;
  const double s_star = *cert.meta.s_star;
  const double kappa = cert.c[0];

  const double u_star = std::abs(majorization_gap(s_star, cert));
  out.push_back(make("U_at_s_star", 1, {u_star, s_star}, u_star <= 1e-10));

  // 1 + g' vanishes at s = 2^{-p}; the strict claims run on (2^{-p}, hi].
  auto pos = scan([&](double s) { return 1.0 + boundary_profile(s, p).g_prime; }, lo, hi, n, true, 1);
  out.push_back(make("one_plus_g_prime_pos", n, pos, pos.value > 0.0));

  Extreme dec{-std::numeric_limits<double>::infinity(), lo};
  double prev = ratio(grid_point(lo, hi, 1, n), p);
  for (std::size_t i = 2; i < n; ++i) {
    const double s = grid_point(lo, hi, i, n);
    const double cur = ratio(s, p);
    if (cur - prev > dec.value) dec = {cur - prev, s};
    prev = cur;
  }
  out.push_back(make("ratio_decreasing", n, dec, dec.value < 0.0));

  const double u_max = 1.0 / hi;
  Extreme dec_tail{-std::numeric_limits<double>::infinity(), u_max};
  prev = ratio_tail(grid_point(0.0, u_max, 1, n), p.value());
  for (std::size_t i = 2; i < n; ++i) {
    const double u = grid_point(0.0, u_max, i, n);
    const double cur = ratio_tail(u, p.value());
    // Increasing u means decreasing s.
    if (prev - cur > dec_tail.value) dec_tail = {prev - cur, u};
    prev = cur;
  }
  out.push_back(make("ratio_tail_decreasing", n, dec_tail, dec_tail.value < 0.0));

  // U'/(1 + g') = κ* - f'/(1 + g'): negative before s*, positive after.
  double violation = 0.0;
  double violation_at = s_star;
  std::size_t changes = 0;
  double change_at = std::numeric_limits<double>::quiet_NaN();
  bool change_brackets_root = false;
  int prev_sign = 0;
  double prev_s = lo;
  for (std::size_t i = 1; i < n; ++i) {
    const double s = grid_point(lo, hi, i, n);
    const double h = kappa - ratio(s, p);
    const double bad = s < s_star ? std::max(0.0, h) : (s > s_star ? std::max(0.0, -h) : 0.0);
    if (bad > violation) {
      violation = bad;
      violation_at = s;
    }
    const int sign = h > 0.0 ? 1 : (h < 0.0 ? -1 : 0);
    if (sign != 0) {
      if (prev_sign != 0 && sign != prev_sign) {
        ++changes;
        change_at = 0.5 * (prev_s + s);
        change_brackets_root = prev_s <= s_star && s_star <= s;
      }
      prev_sign = sign;
      prev_s = s;
    }
  }
  const bool sign_ok = violation <= o.tol && changes == 1 && change_brackets_root;
  out.push_back(make("U_prime_sign", n, {violation, changes == 1 ? change_at : violation_at}, sign_ok));

  const double zero = std::abs(kappa - ratio(s_star, p));
  out.push_back(make("U_prime_zero_at_s_star", 1, {zero, s_star}, zero <= 1e-9));
}

}  // namespace

std::vector<VerificationReport> verify_appendix(Exponent p, std::optional<double> eps, const AppendixOptions& opts) {
  if (opts.grid_n < 3) throw Error(ErrorCode::InvalidArgument, "grid_n must be at least 3");
  const Regime regime = regime_for(p);
  if (regime == Regime::LT2 && !eps) throw Error(ErrorCode::DomainError, "epsilon required for p<2");

  const Certificate cert = regime == Regime::GE2 ? certificate_ge2(p) : certificate_lt2(ModulusQuery(p, *eps));
  const double lo = slice_lower_bound(p);
  double hi = std::max(opts.s_max, 1.0);
  if (cert.meta.s_star) hi = std::max(hi, 2.0 * *cert.meta.s_star);

  std::vector<VerificationReport> out;
  common_reports(out, cert, lo, hi, opts);
  if (regime == Regime::GE2) {
    ge2_reports(out, cert, lo, hi, opts);
  } else {
    lt2_reports(out, cert, lo, hi, opts);
  }
  return out;
}

double chord_midpoint_offset(const ModulusQuery& q) {
  const SStar root = solve_s_star(q);
  const BoundaryProfile prof = boundary_profile(root.s_star, q.p);
  const double target = std::pow(q.eps, -q.p.value());
  const double mid = 0.5 * (root.s_star + prof.g);
  return std::abs(mid - target) / std::max(1.0, target);
}

VerificationReport sharpness_check(Exponent p, double eps, double s_probe, std::size_t n_chord) {
  if (n_chord < 2) throw Error(ErrorCode::InvalidArgument, "n_chord must be at least 2");
  const ModulusQuery q(p, eps);
  const Certificate cert = certificate_for(q);

  LambdaPoint a;
  LambdaPoint d;
  double value_a = 0.0;
  double value_d = 0.0;
  double tau_max = 1.0;
  if (cert.meta.regime == Regime::LT2) {
    const double s = *cert.meta.s_star;
    a = slice_point(s, p, false);
    d = slice_point(s, p, true);
    value_a = value_d = boundary_profile(s, p).f;
  } else {
    const double lo = slice_lower_bound(p);
    if (!(s_probe > lo)) throw Error(ErrorCode::OutOfRange, "s_probe must exceed 2^{-p}");
    a = {lo, lo, 1.0};
    d = slice_point(s_probe, p, false);
    value_a = 0.0;
    value_d = boundary_profile(s_probe, p).f;
    const double window = 2.0 * std::pow(eps, -p.value());
    tau_max = std::min(1.0, (window - lo) / (s_probe - lo));
  }

  Extreme worst{0.0, 0.0};
  for (std::size_t k = 0; k < n_chord; ++k) {
    const double tau = grid_point(0.0, tau_max, k, n_chord);
    const LambdaPoint x{a.x1 + tau * (d.x1 - a.x1), a.x2 + tau * (d.x2 - a.x2), a.x3 + tau * (d.x3 - a.x3)};
    const double chord = (1.0 - tau) * value_a + tau * value_d;
    const double gap = std::abs(chord - cert.value(x));
    if (gap > worst.value) worst = {gap, tau};
  }

  if (cert.meta.regime == Regime::LT2) {
    const double offset = chord_midpoint_offset(q);
    return make("chord_gap_lt2", n_chord, worst, worst.value < 1e-10 && offset <= 1e-12);
  }
  // For p >= 2 the gap only tends to zero as s_probe grows; p = 2 is exact.
  const bool exact = p.value() == 2.0;
  return make("chord_gap_ge2", n_chord, worst, !exact || worst.value < 1e-10);
}

VerificationReport certificate_touch(const Certificate& cert) {
  const Exponent p = cert.meta.p;
  const Theta half = Theta::half();
  std::vector<LambdaPoint> anchors;
  if (cert.meta.regime == Regime::GE2) {
    const double lo = slice_lower_bound(p);
    anchors = {{1.0, 1.0, std::pow(2.0, p.value())}, {lo, lo, 1.0}, {1.0, 1.0, 0.0}};
  } else {
    anchors = {slice_point(*cert.meta.s_star, p, false), slice_point(*cert.meta.s_star, p, true)};
  }
  Extreme worst{0.0, 0.0};
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const double err = std::abs(cert.value(anchors[i]) - boundary_value(anchors[i], p, half));
    if (err > worst.value || i == 0) worst = {err, static_cast<double>(i)};
  }
  return make("certificate_touch_" + std::string(to_string(cert.meta.regime)), anchors.size(), worst,
              worst.value <= 1e-10);
}

}  // namespace ucx
