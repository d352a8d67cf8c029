#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ucx/domain.hpp"
#include "ucx/moduli.hpp"
#include "ucx/report.hpp"

namespace ucx {

enum class Regime { GE2, LT2 };

std::string_view to_string(Regime regime);
Regime regime_for(Exponent p);

struct CertificateMeta {
  Regime regime;
  Exponent p;
  std::optional<double> eps;     // LT2 only
  std::optional<double> s_star;  // LT2 only
};

/// Affine majorant c0 + c.x of the Bellman function on Λ.
struct Certificate {
  double c0 = 0.0;
  std::array<double, 3> c{};
  CertificateMeta meta;

  double value(const LambdaPoint& x) const { return c0 + c[0] * x.x1 + c[1] * x.x2 + c[2] * x.x3; }
};

/// (x1 + x2)/2 - x3/2^p. WrongRegime for p < 2.
Certificate certificate_ge2(Exponent p);

/// x3 f(s*) + κ [x1 + x2 - 2 ε^{-p} x3] with κ = f'(s*)/(1 + g'(s*)).
/// WrongRegime unless 1 < p < 2; DomainError for ε = 0.
Certificate certificate_lt2(const ModulusQuery& q);

/// The certificate matching the regime of q.p (ε is ignored for p >= 2).
Certificate certificate_for(const ModulusQuery& q);

/// U(s) = cert(s, g(s), 1) - f(s). OutOfRange for s < 2^{-p}.
double majorization_gap(double s, const Certificate& cert);

/// u U(1/u) for 0 <= u <= 1, evaluated in the x1-normalized form so that
/// the s -> inf tail stays O(1) and free of cancellation.
double majorization_tail_gap(double u, const Certificate& cert);

/// 1 - (s-1)^{p-1} - 2 (1 - s/2)^{p-1} on [1, 2], p >= 2.
double w_function(double s, Exponent p);

/// f(s)(1 + g'(s)) - f'(s)(s + g(s)).
double slope_claim(double s, Exponent p);

struct AppendixOptions {
  std::size_t grid_n = 10001;
  double s_max = 100.0;
  double tol = 1e-12;         // sign claims
  double concavity_tol = 1e-9;  // relative, for W second differences
};

/// Scans every appendix claim for the regime of p. ε is required iff p < 2
/// (DomainError otherwise). Failures are recorded, never thrown.
std::vector<VerificationReport> verify_appendix(Exponent p, std::optional<double> eps,
                                                const AppendixOptions& opts = {});

/// Chord argument. p < 2: max |L - cert| on [A, D] with
/// A = (s*, g(s*), 1), D = (g(s*), s*, 1); s_probe is ignored.
/// p >= 2: max |L_s - cert| on the chord [(2^{-p}, 2^{-p}, 1), D(s_probe)],
/// restricted to the window x1 <= 2 ε^{-p} so that probes are comparable.
VerificationReport sharpness_check(Exponent p, double eps, double s_probe, std::size_t n_chord);

/// max |((s* + g(s*))/2, same) - (ε^{-p}, ε^{-p})| relative to max(1, ε^{-p}).
double chord_midpoint_offset(const ModulusQuery& q);

/// Largest |cert - boundary data| over the certificate's touching points:
/// GE2 at (1,1,2^p), (2^{-p},2^{-p},1) and (1,1,0); LT2 at A and D.
VerificationReport certificate_touch(const Certificate& cert);

}  // namespace ucx
