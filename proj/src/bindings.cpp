// Python module exposing the main operations: instance handling, the
// three-phase solver, the SAT route, the count formulas, the matrix
// program interpreter, and the harness utilities.

#include <optional>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tripound/bap.hpp"
#include "tripound/counting.hpp"
#include "tripound/harness.hpp"
#include "tripound/model.hpp"
#include "tripound/sat.hpp"
#include "tripound/tripound.hpp"

namespace py = pybind11;

PYBIND11_MODULE(tripound, m) {
  using namespace tripound;

  m.doc() = "conflict-constrained pairing laboratory";

  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<SolveError>(m, "SolveError");
  py::register_exception<BapError>(m, "BapError");
  py::register_exception<SizeLimitError>(m, "SizeLimitError");
  py::register_exception<SpecInvalid>(m, "SpecInvalid");

  py::class_<ElementTable>(m, "ElementTable")
      .def_readonly("names", &ElementTable::names)
      .def("id_of", &ElementTable::id_of, py::arg("name"));

  py::class_<Instance>(m, "Instance")
      .def_property_readonly("n", &Instance::n)
      .def_readonly("forbidden", &Instance::forbidden)
      .def_readonly("table", &Instance::table)
      .def("partner_of", &Instance::partner_of, py::arg("id"))
      .def("__eq__", [](const Instance& a, const Instance& b) { return a == b; })
      .def("__repr__", [](const Instance& inst) {
        return "<Instance n=" + std::to_string(inst.n()) + " i=" +
               std::to_string(inst.forbidden.size()) + ">";
      });

  m.def("make_instance", &make_instance, py::arg("names"), py::arg("incompatible"));
  m.def("parse_instance", &parse_instance, py::arg("text"));
  m.def("serialize_instance", &serialize_instance, py::arg("inst"));

  py::class_<Pairing>(m, "Pairing")
      .def_readonly("rows", &Pairing::rows)
      .def("__eq__", [](const Pairing& a, const Pairing& b) { return a == b; });

  m.def("serialize_pairing", &serialize_pairing, py::arg("inst"), py::arg("pairing"));
  m.def(
      "check_pairing",
      [](const Instance& inst, const Pairing& p) {
        const CheckResult res = check_pairing(inst, p);
        std::vector<std::string> problems;
        for (const Violation& v : res.violations) problems.push_back(describe(inst, v));
        return py::make_tuple(res.valid(), problems);
      },
      py::arg("inst"), py::arg("pairing"),
      "Returns (valid, list of violation descriptions).");

  py::enum_<SolveMode>(m, "SolveMode")
      .value("Faithful", SolveMode::Faithful)
      .value("Extended", SolveMode::Extended);
  py::enum_<ScanMode>(m, "ScanMode")
      .value("Linear", ScanMode::Linear)
      .value("Indexed", ScanMode::Indexed)
      .value("Prefix", ScanMode::Prefix);

  py::class_<TripoundTrace>(m, "TripoundTrace")
      .def_readonly("k", &TripoundTrace::k)
      .def_readonly("a", &TripoundTrace::a)
      .def_readonly("free_count", &TripoundTrace::free_count)
      .def_readonly("steps_phase_a", &TripoundTrace::steps_phase_a)
      .def_readonly("steps_phase_b", &TripoundTrace::steps_phase_b)
      .def_readonly("steps_phase_c", &TripoundTrace::steps_phase_c)
      .def_readonly("fallback_used", &TripoundTrace::fallback_used)
      .def_property_readonly("total_steps", &TripoundTrace::total_steps);

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("pairing", &SolveResult::pairing)
      .def_readonly("trace", &SolveResult::trace);

  m.def("tripound_solve", &tripound_solve, py::arg("inst"),
        py::arg("mode") = SolveMode::Faithful, py::arg("scan") = ScanMode::Linear);
  m.def("feasibility_threshold", &feasibility_threshold, py::arg("n"), py::arg("i"));

  m.def(
      "encode_dimacs",
      [](const Instance& inst) { return write_dimacs(encode(inst).first); },
      py::arg("inst"));
  m.def(
      "solve_via_sat",
      [](const Instance& inst) -> std::optional<Pairing> {
        auto [cnf, vm] = encode(inst);
        const DpllResult res = dpll_solve(cnf);
        if (!res.sat) return std::nullopt;
        return decode(res.assignment, vm);
      },
      py::arg("inst"), "Returns a Pairing, or None when unsatisfiable.");

  py::enum_<PhiVariant>(m, "PhiVariant")
      .value("EvenStep", PhiVariant::EvenStep)
      .value("UnitStep", PhiVariant::UnitStep);

  m.def(
      "eval_phi",
      [](long long e, long long i, long long a_start, PhiVariant variant) {
        return eval_phi({e, i, a_start, variant});
      },
      py::arg("e"), py::arg("i"), py::arg("a_start") = 2,
      py::arg("variant") = PhiVariant::EvenStep);
  m.def("count_arrangements_bruteforce", &count_arrangements_bruteforce, py::arg("inst"));
  m.def("count_matchings_bruteforce", &count_matchings_bruteforce, py::arg("inst"));
  m.def("enumerate_matchings", &enumerate_matchings, py::arg("inst"));

  py::class_<CountReport>(m, "CountReport")
      .def_readonly("phi_value", &CountReport::phi_value)
      .def_readonly("brute_arrangements", &CountReport::brute_arrangements)
      .def_readonly("brute_matchings", &CountReport::brute_matchings)
      .def_readonly("agree", &CountReport::agree);

  m.def("compare_counts", &compare_counts, py::arg("inst"),
        py::arg("variant") = PhiVariant::EvenStep);

  m.def("bundled_tripound_text", &bundled_tripound_text);
  m.def(
      "run_bundled",
      [](const Instance& inst, long long step_cap) {
        const BapState fin =
            run_bap(bundled_tripound(), make_tripound_state(inst, step_cap));
        return py::make_tuple(pairing_from_state(fin, inst), fin.steps);
      },
      py::arg("inst"), py::arg("step_cap") = kDefaultStepCap,
      "Runs the bundled program; returns (Pairing, steps).");
  m.def(
      "run_program",
      [](const std::string& text, const Instance& inst, long long step_cap) {
        const BapState fin =
            run_bap(parse_bap(text), make_tripound_state(inst, step_cap));
        return py::make_tuple(render_matrix(fin, "D", &inst.table), fin.steps);
      },
      py::arg("text"), py::arg("inst"), py::arg("step_cap") = kDefaultStepCap,
      "Parses and runs program text on the instance; returns (D text, steps).");

  m.def("lcg_next", &lcg_next, py::arg("state"));
  m.def(
      "gen_instance",
      [](int n, int i, uint64_t seed, bool incompatibles_first) {
        return gen_instance({n, i, seed, incompatibles_first});
      },
      py::arg("n"), py::arg("i"), py::arg("seed"),
      py::arg("incompatibles_first") = false);

  py::class_<ScalingPoint>(m, "ScalingPoint")
      .def_readonly("n", &ScalingPoint::n)
      .def_readonly("i", &ScalingPoint::i)
      .def_readonly("steps", &ScalingPoint::steps)
      .def_readonly("free_count", &ScalingPoint::free_count);

  py::class_<ScalingReport>(m, "ScalingReport")
      .def_readonly("points", &ScalingReport::points)
      .def_readonly("slope", &ScalingReport::slope)
      .def_readonly("intercept", &ScalingReport::intercept)
      .def_readonly("max_residual", &ScalingReport::max_residual);

  m.def(
      "measure_scaling",
      [](const std::vector<int>& sizes, ScanMode scan, uint64_t seed) {
        return measure_scaling(sizes, scan, seed);
      },
      py::arg("sizes"), py::arg("scan") = ScanMode::Linear, py::arg("seed") = 1);

  m.def(
      "determinism_check",
      [](const Instance& inst, int runs) {
        const DeterminismVerdict v = determinism_check(inst, runs);
        return py::make_tuple(v.ok, v.divergence);
      },
      py::arg("inst"), py::arg("runs") = 3,
      "Returns (ok, first divergence description).");

  m.def(
      "verify_all",
      [](int max_n, uint64_t seed) {
        const VerifyReport rep = verify_all({max_n, seed});
        return py::make_tuple(rep.ok(), serialize_verify_report(rep));
      },
      py::arg("max_n") = 8, py::arg("seed") = 1,
      "Returns (ok, report text).");
}
