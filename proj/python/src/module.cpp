#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "chainscreen/applications.hpp"
#include "chainscreen/cli.hpp"
#include "chainscreen/comparative.hpp"
#include "chainscreen/complete_info.hpp"
#include "chainscreen/errors.hpp"
#include "chainscreen/scenario_io.hpp"
#include "chainscreen/solver.hpp"

namespace py = pybind11;
using namespace chainscreen;

namespace {

py::dict profile_dict(const CompleteInfoProfile& p) {
  py::dict d;
  d["ubar"] = p.ubar;
  d["u_c"] = p.u_c;
  d["upper_closure"] = p.upper_closure;
  d["lower_closure"] = p.lower_closure;
  d["lower_closure_textual"] = p.lower_closure_textual;
  d["K"] = p.K;
  return d;
}

py::dict solution_dict(const Solution& s, const CompleteInfoProfile& p) {
  py::list segs;
  for (const auto& seg : s.segments) {
    py::dict e;
    e["from"] = seg.first + 1;
    e["to"] = seg.last + 1;
    const bool flat = seg.label == SegmentLabel::Constant;
    e["label"] = flat ? "CONSTANT" : "FOLLOW_CURVE";
    e["level"] = flat ? py::object(py::float_(seg.level)) : py::object(py::none());
    segs.append(e);
  }
  py::dict d;
  d["promise"] = s.promise.values();
  d["value"] = s.value;
  d["segments"] = segs;
  d["K"] = p.K;
  d["K_used"] = s.constant_segments;
  return d;
}

py::tuple generated(const GeneratedScenario& g) { return py::make_tuple(g.scenario, g.reference_u_c); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Screening over nested choice sets";

  static py::exception<Error> error(m, "ChainscreenError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      error(e.what());
    }
  });

  py::class_<Scenario>(m, "Scenario")
      .def_property_readonly("types", [](const Scenario& s) { return s.chain.labels(); })
      .def_property_readonly("weights", [](const Scenario& s) { return s.chain.weights(); })
      .def_readonly("u_grid", &Scenario::u_grid)
      .def_readonly("metadata", &Scenario::metadata)
      .def("with_weights",
           [](const Scenario& s, std::vector<double> w) {
             Scenario out = s;
             out.chain = s.chain.with_weights(std::move(w));
             return out;
           })
      .def("to_json", [](const Scenario& s) { return scenario_to_json(s); })
      .def("__len__", &Scenario::size)
      .def("__repr__", [](const Scenario& s) {
        std::ostringstream os;
        os << "<Scenario with " << s.size() << " types, " << s.u_grid.size() << " grid levels>";
        return os.str();
      });

  m.def("load_scenario", &load_scenario, py::arg("path"));
  m.def("parse_scenario", &parse_scenario, py::arg("text"));

  m.def("complete_info", [](const Scenario& s) { return profile_dict(complete_info_curve(s.surface)); },
        py::arg("scenario"));

  m.def(
      "solve",
      [](const Scenario& s, bool structural) {
        const auto p = complete_info_curve(s.surface);
        return solution_dict(structural ? structural_solve(s, p) : solve_dp(s, p), p);
      },
      py::arg("scenario"), py::arg("structural") = false);

  m.def(
      "brute_force_value",
      [](const Scenario& s) { return brute_force(s, complete_info_curve(s.surface)).value; },
      py::arg("scenario"));

  m.def(
      "fosd_compare",
      [](const Scenario& s, const std::vector<double>& w) {
        const auto r = fosd_compare(s, w);
        return py::make_tuple(r.base_opt, r.alt_opt, r.pass());
      },
      py::arg("scenario"), py::arg("alt_weights"));

  m.def(
      "fda_closed_form",
      [](double q, double L) {
        auto c = fda_preset(FdaCase::Interior);
        c.q = q;
        c.L = L;
        const auto cf = fda_closed_form(c);
        py::dict d;
        d["alpha_star"] = cf.alpha_star;
        d["alpha_hat"] = cf.alpha_hat;
        d["p_star"] = cf.p_star;
        d["p_hat"] = cf.p_hat;
        return d;
      },
      py::arg("q") = 0.4, py::arg("L") = 1.0);

  m.def(
      "fda_scenario",
      [](const std::string& which) {
        FdaCase c = FdaCase::Interior;
        if (which == "increasing") {
          c = FdaCase::Increasing;
        } else if (which == "decreasing") {
          c = FdaCase::Decreasing;
        } else if (which != "interior") {
          throw Error(ErrorKind::InvalidConfig, "unknown case " + which);
        }
        return generated(fda_scenario(fda_preset(c)));
      },
      py::arg("case") = "interior");
  m.def(
      "civil_servant_scenario", [](double alpha) { return generated(civil_servant_scenario(civil_servant_uniform(alpha))); },
      py::arg("alpha"));
  m.def("ceo_scenario", [] { return generated(ceo_scenario(ceo_default())); });

  // Same verbs and exit codes as the command-line tool.
  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "chainscreen");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
