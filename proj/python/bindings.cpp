#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cvent/entanglement.hpp"
#include "cvent/epr.hpp"
#include "cvent/errors.hpp"
#include "cvent/sweep.hpp"
#include "cvent/table_one.hpp"
#include "cvent/teleportation.hpp"
#include "cvent/thresholds.hpp"
#include "cvent/validation.hpp"

namespace py = pybind11;
using namespace cvent;

namespace {

ThresholdKind parse_threshold(const std::string& name) {
  for (auto k : {ThresholdKind::FidelityClassical, ThresholdKind::FidelityCrossover,
                 ThresholdKind::EprCrossover}) {
    if (threshold_name(k) == name) return k;
  }
  throw InvalidSpec("unknown threshold '" + name + "'");
}

FidelityResult fidelity(const ResourceSpec& spec, const std::string& route, int nodes) {
  const auto rule = QuadratureRule::gauss_hermite(nodes);
  if (route == "numeric") return fidelity_bk(char_fn_numeric(build_resource_circuit(spec)), rule);
  if (route == "epr") return fidelity_epr_form(subtracted_signal(spec));
  if (route == "closed") {
    if (spec.family == Family::PacsSplit) return fidelity_bk(char_fn_psi1_closed(spec), rule);
    if (spec.family == Family::OddCatSplit) return fidelity_bk(char_fn_psi2_closed(spec), rule);
    throw InvalidSpec("closed fidelity route needs a split family");
  }
  throw InvalidSpec("unknown fidelity route '" + route + "'");
}

py::dict record_dict(const MetricRecord& r) {
  auto opt = [](const std::optional<double>& v) -> py::object {
    return v ? py::object(py::float_(*v)) : py::object(py::none());
  };
  py::dict d;
  d["family"] = std::string(family_name(r.family));
  d["alpha"] = r.alpha_mod;
  d["phase"] = r.phase;
  d["n_plus_m"] = r.n_plus_m;
  d["entropy_bits"] = opt(r.entropy_bits);
  d["epr_variance"] = opt(r.epr_variance);
  d["fidelity"] = opt(r.fidelity);
  d["cutoff"] = r.cutoff_used;
  d["truncation_loss"] = r.truncation_loss;
  d["converged"] = r.converged;
  d["failure"] = r.failure;
  return d;
}

SweepSpec sweep_spec(const std::string& family, double alpha_min, double alpha_max,
                     double alpha_step, const std::optional<std::vector<double>>& phases,
                     const std::vector<int>& nm, const std::string& metrics, int cutoff,
                     int quadrature_nodes, const std::optional<std::string>& fidelity_route) {
  SweepSpec s;
  s.family = parse_family(family);
  s.alpha_min = alpha_min;
  s.alpha_max = alpha_max;
  s.alpha_step = alpha_step;
  s.phases = phases.value_or(std::vector<double>{});
  s.subtraction_totals = nm;
  s.metrics = parse_metrics(metrics);
  s.cutoff = cutoff;
  s.quadrature_nodes = quadrature_nodes;
  if (fidelity_route) s.fidelity_route = parse_fidelity_route(*fidelity_route);
  return s;
}

}  // namespace

PYBIND11_MODULE(_cvent, m) {
  m.doc() = "Non-Gaussian two-mode entangled resources in truncated Fock space";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<TruncationOverflow>(m, "TruncationOverflow", base.ptr());
  py::register_exception<CutoffTooSmall>(m, "CutoffTooSmall", base.ptr());
  py::register_exception<DegenerateState>(m, "DegenerateState", base.ptr());
  py::register_exception<ConvergenceFailure>(m, "ConvergenceFailure", base.ptr());
  py::register_exception<NumericalInstability>(m, "NumericalInstability", base.ptr());
  py::register_exception<QuadratureNotConverged>(m, "QuadratureNotConverged", base.ptr());
  py::register_exception<BracketFailure>(m, "BracketFailure", base.ptr());
  py::register_exception<InvalidSpec>(m, "InvalidSpec", base.ptr());

  m.attr("DEFAULT_CUTOFF") = kDefaultCutoff;
  m.attr("DEFAULT_QUADRATURE_NODES") = kDefaultQuadratureNodes;
  m.attr("CSV_HEADER") = kCsvHeader;

  py::class_<ResourceSpec>(m, "ResourceSpec")
      .def_static("pacs", &ResourceSpec::pacs, py::arg("alpha"), py::arg("phase") = 0.0,
                  py::arg("n") = 0, py::arg("m") = 0, py::arg("cutoff") = kDefaultCutoff)
      .def_static("odd_cat", &ResourceSpec::odd_cat, py::arg("alpha"), py::arg("phase") = 0.0,
                  py::arg("n") = 0, py::arg("m") = 0, py::arg("cutoff") = kDefaultCutoff)
      .def_static(
          "tmss",
          [](const std::string& family, double lambda, int n, int m, int cutoff) {
            return ResourceSpec::tmss(parse_family(family), lambda, n, m, cutoff);
          },
          py::arg("family"), py::arg("lam"), py::arg("n") = 0, py::arg("m") = 0,
          py::arg("cutoff") = kDefaultCutoff)
      .def_property_readonly("family",
                             [](const ResourceSpec& s) { return std::string(family_name(s.family)); })
      .def_readonly("alpha_mod", &ResourceSpec::alpha_mod)
      .def_readonly("alpha_phase", &ResourceSpec::alpha_phase)
      .def_readonly("n_sub_a", &ResourceSpec::n_sub_a)
      .def_readonly("n_sub_b", &ResourceSpec::n_sub_b)
      .def_readonly("lam", &ResourceSpec::lambda)
      .def_readonly("cutoff", &ResourceSpec::cutoff)
      .def("__repr__", &describe);

  m.def(
      "amplitudes",
      [](const ResourceSpec& spec) { return Eigen::MatrixXcd(build_resource_circuit(spec).amplitudes()); },
      py::arg("spec"), "Normalized two-mode amplitudes c[n_a, n_b] built through the circuit.");

  py::class_<EntropyResult>(m, "EntropyResult")
      .def_readonly("entropy_bits", &EntropyResult::entropy_bits)
      .def_readonly("eigenvalues", &EntropyResult::eigenvalues);
  py::class_<EprResult>(m, "EprResult")
      .def_readonly("total_variance", &EprResult::total_variance)
      .def_readonly("phase_used", &EprResult::phase_used)
      .def_readonly("correlated", &EprResult::correlated)
      .def_readonly("boundary", &EprResult::boundary);
  py::class_<FidelityResult>(m, "FidelityResult")
      .def_readonly("fidelity", &FidelityResult::fidelity)
      .def_readonly("error_estimate", &FidelityResult::quadrature_error_estimate)
      .def_readonly("beats_classical", &FidelityResult::beats_classical)
      .def_readonly("boundary", &FidelityResult::boundary);

  m.def("entropy", [](const ResourceSpec& s) { return entropy_numeric(build_resource_circuit(s)); },
        py::arg("spec"));
  m.def("entropy_pacs_closed", &entropy_psi1_closed, py::arg("alpha"), py::arg("n_plus_m"));
  m.def(
      "entropy_cat_closed",
      [](double alpha, int n_plus_m) { return entropy_psi2_closed(alpha, parity_of(n_plus_m)); },
      py::arg("alpha"), py::arg("n_plus_m"));

  m.def("epr", [](const ResourceSpec& s) { return epr_numeric(build_resource_circuit(s)); },
        py::arg("spec"));
  m.def("epr_pacs_closed", &epr_psi1_closed, py::arg("alpha"), py::arg("phase"),
        py::arg("n_plus_m"));
  m.def(
      "epr_cat_closed",
      [](double alpha, double phase, int n_plus_m) {
        return epr_psi2_closed(alpha, phase, parity_of(n_plus_m));
      },
      py::arg("alpha"), py::arg("phase"), py::arg("n_plus_m"));

  m.def("fidelity", &fidelity, py::arg("spec"), py::arg("route") = "numeric",
        py::arg("quadrature_nodes") = kDefaultQuadratureNodes,
        "Teleportation fidelity; route is 'numeric', 'closed' or 'epr'.");
  m.def("fidelity_pacs_closed", &fidelity_psi1_closed, py::arg("alpha"), py::arg("n_plus_m"));

  m.def(
      "threshold",
      [](const std::string& kind, const std::string& route, int cutoff, double tolerance) {
        ThresholdOptions o;
        o.metric.route = route == "numeric" ? MetricRoute::Numeric : MetricRoute::Closed;
        if (route != "numeric" && route != "closed") throw InvalidSpec("unknown route '" + route + "'");
        o.metric.cutoff = cutoff;
        o.tolerance = tolerance;
        const auto r = threshold_scan(parse_threshold(kind), o);
        return py::dict(py::arg("alpha") = r.alpha, py::arg("residual") = r.residual,
                        py::arg("bracket_width") = r.bracket_width,
                        py::arg("evaluations") = r.evaluations);
      },
      py::arg("kind"), py::arg("route") = "closed", py::arg("cutoff") = kDefaultCutoff,
      py::arg("tolerance") = 1e-6,
      "kind is 'fidelity_classical', 'fidelity_crossover' or 'epr_crossover'.");

  m.def(
      "sweep",
      [](const std::string& family, double alpha_min, double alpha_max, double alpha_step,
         const std::optional<std::vector<double>>& phases, const std::vector<int>& nm,
         const std::string& metrics, int cutoff, int quadrature_nodes,
         const std::optional<std::string>& fidelity_route, int threads) {
        const auto spec = sweep_spec(family, alpha_min, alpha_max, alpha_step, phases, nm,
                                     metrics, cutoff, quadrature_nodes, fidelity_route);
        std::vector<MetricRecord> records;
        {
          py::gil_scoped_release release;
          records = run_sweep(spec, threads);
        }
        py::list out;
        for (const auto& r : records) out.append(record_dict(r));
        return out;
      },
      py::arg("family"), py::arg("alpha_min"), py::arg("alpha_max"), py::arg("alpha_step"),
      py::arg("phases") = py::none(), py::arg("nm") = std::vector<int>{0},
      py::arg("metrics") = "entropy,epr,fidelity", py::arg("cutoff") = kDefaultCutoff,
      py::arg("quadrature_nodes") = kDefaultQuadratureNodes, py::arg("fidelity_route") = py::none(),
      py::arg("threads") = 0, "phases=None optimizes the phase per row.");

  m.def(
      "sweep_csv",
      [](const std::string& family, double alpha_min, double alpha_max, double alpha_step,
         const std::optional<std::vector<double>>& phases, const std::vector<int>& nm,
         const std::string& metrics, int cutoff, int quadrature_nodes,
         const std::optional<std::string>& fidelity_route, int threads) {
        const auto spec = sweep_spec(family, alpha_min, alpha_max, alpha_step, phases, nm,
                                     metrics, cutoff, quadrature_nodes, fidelity_route);
        py::gil_scoped_release release;
        return to_csv(run_sweep(spec, threads));
      },
      py::arg("family"), py::arg("alpha_min"), py::arg("alpha_max"), py::arg("alpha_step"),
      py::arg("phases") = py::none(), py::arg("nm") = std::vector<int>{0},
      py::arg("metrics") = "entropy,epr,fidelity", py::arg("cutoff") = kDefaultCutoff,
      py::arg("quadrature_nodes") = kDefaultQuadratureNodes, py::arg("fidelity_route") = py::none(),
      py::arg("threads") = 0);

  m.def("table_one", [] {
    py::list out;
    for (const auto& r : classify_table_one()) {
      out.append(py::dict(py::arg("state") = r.state_label, py::arg("fidelity") = r.fidelity,
                          py::arg("fidelity_class") = std::string(fidelity_class_name(r.fidelity_class)),
                          py::arg("entangled") = r.entangled,
                          py::arg("epr_second_order") = r.epr_second_order,
                          py::arg("entropy_bits") = r.entropy_bits,
                          py::arg("epr_variance") = r.epr_variance, py::arg("boundary") = r.boundary));
    }
    return out;
  });

  m.def(
      "validate",
      [](int cutoff) {
        ValidationOptions o;
        o.cutoff = cutoff;
        py::list out;
        for (const auto& c : run_validation(o)) {
          out.append(py::dict(py::arg("name") = c.name, py::arg("passed") = c.passed,
                              py::arg("max_deviation") = c.max_deviation,
                              py::arg("tolerance") = c.tolerance, py::arg("detail") = c.detail));
        }
        return out;
      },
      py::arg("cutoff") = kDefaultCutoff);
}
