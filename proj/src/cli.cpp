#include "ucx/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ucx/bellman.hpp"
#include "ucx/certificates.hpp"
#include "ucx/envelope.hpp"
#include "ucx/error.hpp"
#include "ucx/moduli.hpp"
#include "ucx/numerics.hpp"

namespace ucx::cli {

using nlohmann::json;

namespace {

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("malformed " + what + ": '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw UsageError("malformed " + what + ": '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

// Routes output to --output when given.
class Sink {
 public:
  Sink(const RunConfig& cfg, std::ostream& fallback) : stream_(&fallback) {
    if (!cfg.output.empty()) {
      file_.open(cfg.output);
      if (!file_) throw UsageError("cannot open output file '" + cfg.output + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

json report_json(const VerificationReport& r) {
  return {{"claim", r.claim}, {"pass", r.pass}, {"worst", r.worst_value}, {"at", r.worst_arg}, {"grid", r.grid}};
}

std::vector<double> slice_grid(double p, std::size_t n, std::optional<double> extra) {
  const double top = std::pow(2.0, p);
  std::vector<double> x3;
  for (std::size_t i = 0; i < n; ++i) x3.push_back(numerics::grid_point(0.0, top, i, n));
  if (extra && *extra >= 0.0 && *extra <= top) x3.push_back(*extra);
  std::sort(x3.begin(), x3.end());
  x3.erase(std::unique(x3.begin(), x3.end()), x3.end());
  return x3;
}

}  // namespace

void RunConfig::validate() const {
  if (!(p > 1.0) || !std::isfinite(p)) throw UsageError("p must satisfy p > 1");
  for (double e : eps) {
    if (!(e >= 0.0 && e <= 2.0)) throw UsageError("epsilon must lie in [0,2]");
  }
  if (grid_n < 2) throw UsageError("grid-n must be at least 2");
  if (restarts == 0 || local_steps == 0) throw UsageError("restarts and local-steps must be positive");
}

std::vector<double> parse_eps_grid(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() == 1) return {parse_number(parts[0], "epsilon")};
  if (parts.size() != 3) throw UsageError("epsilon grid must be 'lo:hi:n' or a number, got '" + spec + "'");
  const double lo = parse_number(parts[0], "epsilon grid start");
  const double hi = parse_number(parts[1], "epsilon grid end");
  const double n_raw = parse_number(parts[2], "epsilon grid count");
  if (n_raw < 1.0 || n_raw != std::floor(n_raw)) throw UsageError("epsilon grid count must be a positive integer");
  const auto n = static_cast<std::size_t>(n_raw);
  if (n == 1) {
    if (lo != hi) throw UsageError("a one-point epsilon grid needs lo == hi");
    return {lo};
  }
  if (!(lo < hi)) throw UsageError("epsilon grid needs lo < hi");
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(numerics::grid_point(lo, hi, i, n));
  return out;
}

std::vector<double> parse_point(const std::string& spec) {
  const auto parts = split(spec, ',');
  if (parts.size() != 3) throw UsageError("point must be 'x1,x2,x3', got '" + spec + "'");
  std::vector<double> x;
  for (const auto& part : parts) x.push_back(parse_number(part, "point coordinate"));
  for (double v : x) {
    if (v < 0.0) throw UsageError("point coordinates must be nonnegative, got '" + spec + "'");
  }
  return x;
}

int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
  cfg.validate();
  const Exponent p(cfg.p);
  const std::vector<double> grid = cfg.eps.empty() ? parse_eps_grid("0:2:21") : cfg.eps;

  struct Row {
    double eps, delta;
    ModulusRoute route;
    double residual;
  };
  std::vector<Row> rows;
  for (double e : grid) {
    const ModulusQuery q(p, e);
    const double d = delta(q);
    const double residual = cfg.p <= 2.0 ? std::abs(d - delta_implicit(q)) : 0.0;
    rows.push_back({e, d, route_for(p), residual});
  }

  Sink sink(cfg, out);
  std::ostream& os = sink.get();
  if (cfg.format == Format::Json) {
    json arr = json::array();
    for (const Row& r : rows) {
      arr.push_back({{"p", cfg.p},
                     {"eps", r.eps},
                     {"delta", r.delta},
                     {"route", std::string(to_string(r.route))},
                     {"cross_check_residual", r.residual}});
    }
    os << arr.dump() << '\n';
  } else {
    os << "p,eps,delta,route,cross_check_residual\n";
    for (const Row& r : rows) {
      os << format_double(cfg.p) << ',' << format_double(r.eps) << ',' << format_double(r.delta) << ','
         << to_string(r.route) << ',' << format_double(r.residual) << '\n';
    }
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
  cfg.validate();
  if (cfg.p < 2.0 && cfg.eps.empty()) throw UsageError("epsilon required for p<2");
  if (cfg.eps.size() > 1) throw UsageError("verify takes a single epsilon");
  if (!cfg.eps.empty() && !(cfg.eps.front() > 0.0)) throw UsageError("verify needs epsilon > 0");
  if (cfg.grid_n < 3) throw UsageError("grid-n must be at least 3 for verify");
  const Exponent p(cfg.p);
  const double eps = cfg.eps.empty() ? 1.0 : cfg.eps.front();

  AppendixOptions opts;
  opts.grid_n = cfg.grid_n;
  opts.s_max = cfg.s_max;
  std::vector<VerificationReport> reports =
      verify_appendix(p, cfg.p < 2.0 ? std::optional<double>(eps) : std::nullopt, opts);

  const std::size_t n_chord = 1001;
  const VerificationReport chord = sharpness_check(p, eps, cfg.s_probe, n_chord);
  reports.push_back(chord);
  if (cfg.p >= 2.0) {
    const VerificationReport far = sharpness_check(p, eps, cfg.s_probe * 1e3, n_chord);
    reports.push_back(far);
    const bool exact = chord.worst_value < 1e-10 && far.worst_value < 1e-10;
    reports.push_back({"chord_gap_shrinks", n_chord, far.worst_value - chord.worst_value, cfg.s_probe * 1e3,
                       exact || far.worst_value < chord.worst_value});
  }
  reports.push_back(certificate_touch(certificate_for(ModulusQuery(p, eps))));
  if (cfg.trials > 0) reports.push_back(witness_test(p, eps, cfg.trials, cfg.seed).report);

  bool all = true;
  for (const auto& r : reports) all = all && r.pass;

  Sink sink(cfg, out);
  std::ostream& os = sink.get();
  if (cfg.format == Format::Json) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(report_json(r));
    os << arr.dump() << '\n';
  } else {
    for (const auto& r : reports) os << r.line() << '\n';
  }
  return all ? kExitOk : kExitVerificationFailed;
}

int cmd_envelope(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  cfg.validate();
  if (cfg.p < 2.0 && cfg.eps.empty()) throw UsageError("epsilon required for p<2");
  if (cfg.eps.size() > 1) throw UsageError("envelope takes a single epsilon");
  if (!cfg.eps.empty() && !(cfg.eps.front() > 0.0)) throw UsageError("envelope needs epsilon > 0");
  if (cfg.slices < 2) throw UsageError("slices must be at least 2");
  const Exponent p(cfg.p);
  const std::optional<double> eps = cfg.eps.empty() ? std::nullopt : std::optional<double>(cfg.eps.front());
  const ModulusQuery q(p, eps.value_or(1.0));

  const ObstacleGrid grid = sample_boundary(p, Theta::half(), cfg.grid_n, default_radius(p, eps));
  const std::vector<double> x3 =
      slice_grid(cfg.p, cfg.slices, eps ? std::optional<double>(std::pow(*eps, cfg.p)) : std::nullopt);
  SearchBudget budget;
  budget.restarts = cfg.restarts;
  budget.local_steps = cfg.local_steps;
  budget.seed = cfg.seed;
  const std::vector<SliceRow> rows = slice_table(q, x3, grid, budget);

  Sink sink(cfg, out);
  std::ostream& os = sink.get();
  if (cfg.format == Format::Json) {
    json arr = json::array();
    for (const SliceRow& r : rows) {
      arr.push_back({{"x3", r.x3}, {"envelope", r.envelope}, {"certificate", r.certificate},
                     {"brute_force", r.brute_force}});
    }
    os << arr.dump() << '\n';
  } else {
    write_slice_csv(os, rows);
  }

  bool ok = true;
  for (const SliceRow& r : rows) {
    if (!r.flagged) continue;
    ok = false;
    err << "sandwich violated at x3=" << format_double(r.x3) << ": brute_force=" << format_double(r.brute_force)
        << " envelope=" << format_double(r.envelope) << " certificate=" << format_double(r.certificate) << '\n';
  }
  return ok ? kExitOk : kExitVerificationFailed;
}

int cmd_bruteforce(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  cfg.validate();
  if (!cfg.x) throw UsageError("bruteforce needs --x x1,x2,x3");
  const Exponent p(cfg.p);
  const LambdaPoint x{(*cfg.x)[0], (*cfg.x)[1], (*cfg.x)[2]};
  if (contains(x, p) == BoundaryFace::Outside) {
    err << "point lies outside the moment cone for p=" << format_double(cfg.p) << '\n';
    return kExitVerificationFailed;
  }
  SearchBudget budget;
  budget.restarts = cfg.restarts;
  budget.local_steps = cfg.local_steps;
  budget.seed = cfg.seed;
  const BruteForceResult res = brute_force_B(x, p, Theta::half(), budget);

  Sink sink(cfg, out);
  std::ostream& os = sink.get();
  if (cfg.format == Format::Json) {
    json atoms = json::array();
    for (const Atom& a : res.witness.atoms) atoms.push_back({{"w", a.weight}, {"f", a.f}, {"g", a.g}});
    os << json{{"x", {x.x1, x.x2, x.x3}}, {"p", res.p},         {"theta", res.theta},
               {"value", res.value},       {"residual", res.residual}, {"atoms", atoms}}
              .dump()
       << '\n';
  } else {
    os << res.serialize();
  }
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sharp moduli of uniform convexity of L^p and their Bellman-function certificates", "ucx"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string eps_spec;
  std::string x_spec;
  std::string format = "csv";
  std::optional<std::size_t> grid_n;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "Lebesgue exponent p > 1")->required();
    sub->add_option("--eps", eps_spec, "epsilon, or a grid lo:hi:n");
    sub->add_option("--grid-n", grid_n, "scan resolution (verify) / samples per face (envelope)");
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--output", cfg.output, "write to this file instead of stdout");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };
  std::optional<std::size_t> restarts;
  std::optional<std::size_t> local_steps;
  auto budget = [&](CLI::App* sub) {
    sub->add_option("--restarts", restarts, "brute-force restarts");
    sub->add_option("--local-steps", local_steps, "brute-force pattern-search sweeps per restart");
  };

  CLI::App* table = app.add_subcommand("table", "tabulate delta(eps) with a cross-check residual");
  common(table);
  CLI::App* verify = app.add_subcommand("verify", "scan the certificate and boundary claims");
  common(verify);
  verify->add_option("--s-max", cfg.s_max, "right end of the direct s scan");
  verify->add_option("--s-probe", cfg.s_probe, "chord probe for p >= 2");
  verify->add_option("--trials", cfg.trials, "random pairs for the midpoint witness test (0 skips it)");
  CLI::App* envelope = app.add_subcommand("envelope", "grid concavification of B(1,1,x3)");
  common(envelope);
  envelope->add_option("--slices", cfg.slices, "x3 grid points on [0, 2^p]");
  budget(envelope);
  CLI::App* brute = app.add_subcommand("bruteforce", "step-function lower bound for B(x)");
  common(brute);
  brute->add_option("--x", x_spec, "point x1,x2,x3")->allow_extra_args(false);
  budget(brute);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    cfg.format = format == "json" ? Format::Json : Format::Csv;
    if (!eps_spec.empty()) cfg.eps = parse_eps_grid(eps_spec);
    if (table->parsed()) {
      cfg.command = Command::Table;
      cfg.grid_n = grid_n.value_or(2);
      return cmd_table(cfg, out, err);
    }
    if (verify->parsed()) {
      cfg.command = Command::Verify;
      cfg.grid_n = grid_n.value_or(10001);
      return cmd_verify(cfg, out, err);
    }
    if (envelope->parsed()) {
      cfg.command = Command::Envelope;
      cfg.grid_n = grid_n.value_or(30);
      cfg.restarts = restarts.value_or(20);
      cfg.local_steps = local_steps.value_or(600);
      return cmd_envelope(cfg, out, err);
    }
    cfg.command = Command::BruteForce;
    cfg.grid_n = grid_n.value_or(2);
    cfg.restarts = restarts.value_or(200);
    cfg.local_steps = local_steps.value_or(2000);
    if (x_spec.empty()) throw UsageError("bruteforce needs --x x1,x2,x3");
    cfg.x = parse_point(x_spec);
    return cmd_bruteforce(cfg, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::DomainError ? kExitUsage : kExitVerificationFailed;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"ucx"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace ucx::cli
