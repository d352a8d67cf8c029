// Acceptance suite: one line per criterion, exit status 0 iff all pass.
//
//   criterion=<n> pass=<bool> time=<s> budget=<s> <details>
//
// A criterion fails if its numerical check fails or it overruns its budget.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ucx/bellman.hpp"
#include "ucx/certificates.hpp"
#include "ucx/cli.hpp"
#include "ucx/envelope.hpp"
#include "ucx/moduli.hpp"
#include "ucx/report.hpp"

using namespace ucx;

namespace {

// mpmath, 30 digits (tests/oracles/oracle_values.py)
constexpr double kSStar15 = 1.7151951681195114516;
constexpr double kDelta15 = 0.067122610329016173255;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED(" << what << ")";
    }
  }
  template <typename T>
  void note(const std::string& key, const T& v) {
    detail << ' ' << key << '=' << v;
  }
  void note(const std::string& key, double v) { detail << ' ' << key << '=' << format_double(v); }
};

int failures = 0;

void criterion(int id, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " exception: " << e.what();
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (dt > budget_s) o.require(false, "runtime");
  if (!o.pass) ++failures;
  std::cout << "criterion=" << id << " pass=" << (o.pass ? "true" : "false") << " time=" << format_double(dt)
            << " budget=" << budget_s << o.detail.str() << std::endl;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = numerics::grid_point(lo, hi, i, n);
  return v;
}

std::string run_cli(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = cli::run(args, out, err);
  return out.str();
}

}  // namespace

int main() {
  criterion(1, 1.0, [](Outcome& o) {
    const auto grid = linspace(0.0, 2.0, 50);
    double worst_p2 = 0.0;
    for (double pv : {2.0, 2.5, 3.0, 4.0, 8.0}) {
      const Exponent p(pv);
      double prev = -1.0;
      bool monotone = true;
      for (double e : grid) {
        const double d = delta_closed_form({p, e});
        monotone = monotone && d >= prev;
        prev = d;
        if (pv == 2.0) worst_p2 = std::max(worst_p2, std::abs(d - delta_implicit({p, e})));
      }
      o.require(delta_closed_form({p, 0.0}) == 0.0, "delta(0)=0");
      o.require(delta_closed_form({p, 2.0}) == 1.0, "delta(2)=1");
      o.require(monotone, "nondecreasing");
    }
    o.require(worst_p2 < 1e-10, "p=2 implicit agreement");
    o.note("p2_implicit_gap", worst_p2);
  });

  criterion(2, 1.0, [](Outcome& o) {
    double worst_gap = 0.0, worst_res = 0.0;
    for (double pv : {1.1, 1.3, 1.5, 1.7, 1.9}) {
      for (int k = 1; k <= 19; ++k) {
        const ModulusQuery q(Exponent(pv), 0.1 * k);
        worst_gap = std::max(worst_gap, std::abs(delta_via_s_star(q) - delta_implicit(q)));
        worst_res = std::max(worst_res, std::abs(solve_s_star(q).residual));
      }
    }
    const ModulusQuery anchor(Exponent(1.5), 1.0);
    const double s = solve_s_star(anchor).s_star;
    const double d_s = delta_via_s_star(anchor), d_i = delta_implicit(anchor);
    o.require(worst_gap < 1e-8, "route agreement");
    o.require(worst_res < 1e-10, "s* residual");
    o.require(std::abs(s - kSStar15) < 1e-9, "s* anchor");
    o.require(std::abs(d_s - kDelta15) < 1e-9 && std::abs(d_i - kDelta15) < 1e-9, "delta anchor");
    o.note("route_gap", worst_gap);
    o.note("s_star_residual", worst_res);
    o.note("s_star", s);
    o.note("delta", d_s);
  });

  criterion(3, 10.0, [](Outcome& o) {
    std::size_t reports = 0;
    auto take = [&](const std::vector<VerificationReport>& rs, const std::string& tag) {
      for (const auto& r : rs) {
        ++reports;
        o.require(r.pass, tag + ":" + r.claim);
      }
    };
    for (double pv : {2.0, 2.5, 3.0, 5.0}) {
      take(verify_appendix(Exponent(pv), std::nullopt), "p=" + format_double(pv));
    }
    for (double pv : {1.2, 1.5, 1.8}) {
      for (double e : {0.5, 1.0, 1.5}) {
        take(verify_appendix(Exponent(pv), e), "p=" + format_double(pv) + ",eps=" + format_double(e));
      }
    }
    o.note("reports", reports);
  });

  criterion(4, 1.0, [](Outcome& o) {
    const auto lt = sharpness_check(Exponent(1.5), 1.0, 0.0, 1001);
    const double mid = chord_midpoint_offset({Exponent(1.5), 1.0});
    const auto near = sharpness_check(Exponent(3.0), 1.0, 1e3, 1001);
    const auto far = sharpness_check(Exponent(3.0), 1.0, 1e6, 1001);
    const auto touch_ge = certificate_touch(certificate_ge2(Exponent(3.0)));
    const auto touch_lt = certificate_touch(certificate_lt2({Exponent(1.5), 1.0}));
    o.require(lt.worst_value < 1e-10, "p=1.5 chord gap");
    o.require(mid <= 1e-12, "midpoint on chord");
    o.require(far.worst_value < near.worst_value, "p=3 gap shrinks");
    o.require(touch_ge.worst_value <= 1e-10 && touch_lt.worst_value <= 1e-10, "touch");
    o.note("chord_gap_lt2", lt.worst_value);
    o.note("midpoint_offset", mid);
    o.note("gap_1e3", near.worst_value);
    o.note("gap_1e6", far.worst_value);
  });

  criterion(5, 60.0, [](Outcome& o) {
    const Theta half = Theta::half();
    {
      const Exponent p(4.0);
      const ObstacleGrid grid = sample_boundary(p, half, 60, default_radius(p, 1.0));
      const auto slice = envelope_slice(p, half, linspace(0.0, 16.0, 25), grid);
      const Certificate cert = certificate_ge2(p);
      double below = 0.0, above = -1.0;
      for (const auto& [x3, b] : slice) {
        const double c = cert.value({1.0, 1.0, x3});
        below = std::max(below, c - b);
        above = std::max(above, b - c);
      }
      o.require(below <= 5e-3 && above <= 1e-9, "p=4 slice sandwich");
      o.note("p4_max_below", below);
      o.note("p4_max_above", above);
    }
    {
      const Exponent p(1.5);
      const ModulusQuery q(p, 1.0);
      const ObstacleGrid grid = sample_boundary(p, half, 60, default_radius(p, 1.0));
      const double b = concavify(grid, {1.0, 1.0, 1.0}).result;
      const double c = certificate_lt2(q).value({1.0, 1.0, 1.0});
      o.require(c - 5e-3 <= b && b <= c + 1e-9, "p=1.5 sandwich at x3=1");
      o.note("p15_envelope", b);
      o.note("p15_certificate", c);
    }
    const SearchBudget budget{200, 2000, 1, 10.0};
    for (auto [pv, eps] : {std::pair{4.0, 1.0}, {1.5, 1.0}, {2.0, 1.0}}) {
      const Exponent p(pv);
      const LambdaPoint x{1.0, 1.0, std::pow(eps, pv)};
      const auto bf = brute_force_B(x, p, half, budget);
      const double c = certificate_for({p, eps}).value(x);
      const std::string tag = "bf_p" + format_double(pv);
      o.require(bf.residual <= kFeasibleResidual && std::abs(bf.value - c) <= 5e-3, tag);
      o.note(tag, bf.value);
      o.note(tag + "_gap", c - bf.value);
    }
  });

  criterion(6, 5.0, [](Outcome& o) {
    for (double pv : {1.0, 1.5, 2.0, 3.0, 4.0}) {
      Rng rng(Rng::stream(6, static_cast<std::uint64_t>(pv * 10)));
      double lo = 0.0, hi = 0.0;
      for (int i = 0; i < 10000; ++i) {
        const double gap = hanner_gap(sample_step_pair(rng), pv);
        lo = std::min(lo, gap);
        hi = std::max(hi, gap);
      }
      const std::string tag = "p" + format_double(pv);
      if (pv <= 2.0) o.require(lo >= -1e-12, tag + " gap>=0");
      if (pv >= 2.0) o.require(hi <= 1e-12, tag + " gap<=0");
      if (pv == 2.0) o.require(std::max(-lo, hi) <= 1e-12, tag + " |gap|");
      o.note(tag + "_min", lo);
      o.note(tag + "_max", hi);
    }
  });

  criterion(7, 10.0, [](Outcome& o) {
    for (auto [pv, eps] : {std::pair{2.0, 1.0}, {4.0, 1.0}, {1.5, 1.0}}) {
      const auto w = witness_test(Exponent(pv), eps, 10000, 1);
      const std::string tag = "p" + format_double(pv);
      o.require(w.report.pass, tag);
      o.note(tag + "_survivors", w.survivors);
      o.note(tag + "_excess", w.report.worst_value);
    }
  });

  criterion(8, 120.0, [](Outcome& o) {
    const std::vector<std::vector<std::string>> lines = {
        {"envelope", "--p", "4", "--grid-n", "60", "--slices", "25"},
        {"envelope", "--p", "1.5", "--eps", "1", "--grid-n", "60", "--slices", "25"},
        {"bruteforce", "--p", "4", "--x", "1,1,1", "--restarts", "200", "--local-steps", "2000"},
        {"bruteforce", "--p", "1.5", "--x", "1,1,1", "--restarts", "200", "--local-steps", "2000"},
        {"bruteforce", "--p", "2", "--x", "1,1,1", "--restarts", "200", "--local-steps", "2000"},
        {"verify", "--p", "2", "--eps", "1", "--trials", "10000"},
        {"verify", "--p", "4", "--eps", "1", "--trials", "10000"},
        {"verify", "--p", "1.5", "--eps", "1", "--trials", "10000"},
    };
    const char* saved = std::getenv("UCX_THREADS");
    const std::string restore = saved ? saved : "";
    std::size_t bytes = 0;
    for (const auto& args : lines) {
      int c1 = 0, c2 = 0;
      ::setenv("UCX_THREADS", "1", 1);
      const std::string a = run_cli(args, c1);
      ::setenv("UCX_THREADS", "3", 1);
      const std::string b = run_cli(args, c2);
      bytes += a.size();
      o.require(a == b && c1 == c2, args[0] + " " + args[2]);
      o.require(c1 == cli::kExitOk, "exit code " + args[0] + " " + args[2]);
    }
    if (saved) ::setenv("UCX_THREADS", restore.c_str(), 1);
    else ::unsetenv("UCX_THREADS");
    o.note("commands", lines.size());
    o.note("bytes", bytes);
  });

  std::cout << "summary failures=" << failures << std::endl;
  return failures == 0 ? 0 : 1;
}
