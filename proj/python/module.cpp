#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ucx/bellman.hpp"
#include "ucx/certificates.hpp"
#include "ucx/cli.hpp"
#include "ucx/envelope.hpp"
#include "ucx/error.hpp"
#include "ucx/moduli.hpp"

namespace py = pybind11;
using namespace ucx;

namespace {

LambdaPoint to_point(const std::array<double, 3>& x) { return {x[0], x[1], x[2]}; }

py::dict report_dict(const VerificationReport& r) {
  py::dict d;
  d["claim"] = r.claim;
  d["pass"] = r.pass;
  d["worst"] = r.worst_value;
  d["at"] = r.worst_arg;
  d["grid"] = r.grid;
  return d;
}

StepPair to_pair(const std::vector<std::array<double, 3>>& atoms) {
  StepPair pair;
  for (const auto& a : atoms) pair.atoms.push_back({a[0], a[1], a[2]});
  return pair;
}

std::vector<std::array<double, 3>> from_pair(const StepPair& pair) {
  std::vector<std::array<double, 3>> out;
  for (const Atom& a : pair.atoms) out.push_back({a.weight, a.f, a.g});
  return out;
}

}  // namespace

PYBIND11_MODULE(_ucx, m) {
  m.doc() = "Moduli of uniform convexity of L^p and their Bellman certificates";

  static py::exception<Error> error_type(m, "UcxError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error_type.ptr(), (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.def(
      "delta", [](double p, double eps) { return delta({Exponent(p), eps}); }, py::arg("p"), py::arg("eps"),
      "Sharp modulus of convexity of L^p at eps.");
  m.def(
      "delta_closed_form", [](double p, double eps) { return delta_closed_form({Exponent(p), eps}); }, py::arg("p"),
      py::arg("eps"));
  m.def(
      "delta_via_s_star", [](double p, double eps) { return delta_via_s_star({Exponent(p), eps}); }, py::arg("p"),
      py::arg("eps"));
  m.def(
      "delta_implicit", [](double p, double eps) { return delta_implicit({Exponent(p), eps}); }, py::arg("p"),
      py::arg("eps"));
  m.def(
      "solve_s_star",
      [](double p, double eps) {
        const SStar s = solve_s_star({Exponent(p), eps});
        return py::make_tuple(s.s_star, s.residual);
      },
      py::arg("p"), py::arg("eps"), "(s*, residual) for s + g(s) = 2 eps^-p.");
  m.def(
      "route", [](double p) { return std::string(to_string(route_for(Exponent(p)))); }, py::arg("p"));

  m.def(
      "contains",
      [](const std::array<double, 3>& x, double p) { return std::string(to_string(contains(to_point(x), Exponent(p)))); },
      py::arg("x"), py::arg("p"));
  m.def(
      "boundary_value",
      [](const std::array<double, 3>& x, double p, double theta) {
        return boundary_value(to_point(x), Exponent(p), Theta(theta));
      },
      py::arg("x"), py::arg("p"), py::arg("theta") = 0.5);
  m.def(
      "boundary_profile",
      [](double s, double p) {
        const BoundaryProfile b = boundary_profile(s, Exponent(p));
        py::dict d;
        d["s"] = b.s;
        d["g"] = b.g;
        d["f"] = b.f;
        d["g_prime"] = b.g_prime;
        d["f_prime"] = b.f_prime;
        return d;
      },
      py::arg("s"), py::arg("p"));

  py::class_<Certificate>(m, "Certificate")
      .def_readonly("c0", &Certificate::c0)
      .def_readonly("c", &Certificate::c)
      .def_property_readonly("regime", [](const Certificate& c) { return std::string(to_string(c.meta.regime)); })
      .def_property_readonly("s_star", [](const Certificate& c) { return c.meta.s_star; })
      .def(
          "value", [](const Certificate& c, const std::array<double, 3>& x) { return c.value(to_point(x)); },
          py::arg("x"));
  m.def(
      "certificate", [](double p, double eps) { return certificate_for({Exponent(p), eps}); }, py::arg("p"),
      py::arg("eps") = 1.0, "Affine majorant for the regime of p (eps is ignored for p >= 2).");

  m.def(
      "verify_appendix",
      [](double p, std::optional<double> eps, std::size_t grid_n, double s_max) {
        AppendixOptions opts;
        opts.grid_n = grid_n;
        opts.s_max = s_max;
        py::list out;
        for (const auto& r : verify_appendix(Exponent(p), eps, opts)) out.append(report_dict(r));
        return out;
      },
      py::arg("p"), py::arg("eps") = py::none(), py::arg("grid_n") = 10001, py::arg("s_max") = 100.0);
  m.def(
      "sharpness_check",
      [](double p, double eps, double s_probe, std::size_t n_chord) {
        return report_dict(sharpness_check(Exponent(p), eps, s_probe, n_chord));
      },
      py::arg("p"), py::arg("eps") = 1.0, py::arg("s_probe") = 1e3, py::arg("n_chord") = 1001);

  m.def(
      "moment", [](const std::vector<std::array<double, 3>>& atoms, double p) {
        const LambdaPoint x = moment(to_pair(atoms), Exponent(p));
        return x.as_array();
      },
      py::arg("atoms"), py::arg("p"), "atoms: (weight, f, g) triples.");
  m.def(
      "payoff",
      [](const std::vector<std::array<double, 3>>& atoms, double p, double theta) {
        return payoff(to_pair(atoms), Exponent(p), Theta(theta));
      },
      py::arg("atoms"), py::arg("p"), py::arg("theta") = 0.5);
  m.def(
      "hanner_gap",
      [](const std::vector<std::array<double, 3>>& atoms, double p) { return hanner_gap(to_pair(atoms), p); },
      py::arg("atoms"), py::arg("p"));
  m.def(
      "brute_force_B",
      [](const std::array<double, 3>& x, double p, double theta, std::size_t restarts, std::size_t local_steps,
         std::uint64_t seed) {
        SearchBudget budget;
        budget.restarts = restarts;
        budget.local_steps = local_steps;
        budget.seed = seed;
        BruteForceResult r;
        {
          py::gil_scoped_release release;
          r = brute_force_B(to_point(x), Exponent(p), Theta(theta), budget);
        }
        py::dict d;
        d["value"] = r.value;
        d["residual"] = r.residual;
        d["reached"] = r.reached.as_array();
        d["witness"] = from_pair(r.witness);
        return d;
      },
      py::arg("x"), py::arg("p"), py::arg("theta") = 0.5, py::arg("restarts") = 200, py::arg("local_steps") = 2000,
      py::arg("seed") = 1);
  m.def(
      "witness_test",
      [](double p, double eps, std::size_t trials, std::uint64_t seed) {
        const WitnessReport w = witness_test(Exponent(p), eps, trials, seed);
        py::dict d = report_dict(w.report);
        d["survivors"] = w.survivors;
        d["max_midpoint_norm"] = w.max_midpoint_norm;
        d["bound"] = w.bound;
        return d;
      },
      py::arg("p"), py::arg("eps"), py::arg("trials") = 10000, py::arg("seed") = 1);

  m.def(
      "envelope_slice",
      [](double p, const std::vector<double>& x3, std::size_t n_per_face, std::optional<double> eps) {
        const Exponent pe(p);
        std::vector<std::pair<double, double>> rows;
        {
          py::gil_scoped_release release;
          const ObstacleGrid grid = sample_boundary(pe, Theta::half(), n_per_face, default_radius(pe, eps));
          rows = envelope_slice(pe, Theta::half(), x3, grid);
        }
        std::vector<double> out;
        for (const auto& r : rows) out.push_back(r.second);
        return out;
      },
      py::arg("p"), py::arg("x3"), py::arg("n_per_face") = 30, py::arg("eps") = py::none(),
      "Grid concavification B(1, 1, x3) at theta = 1/2.");

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line front end in-process: (exit code, stdout, stderr).");
}
