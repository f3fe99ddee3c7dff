// cvent: sweeps, thresholds, the reference classification table and cross-validation
// for photon-subtracted non-Gaussian resources.
//
// Exit codes: 0 success, 1 validation check failed, 2 invalid input,
// 3 numeric failure in a requested threshold.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cvent/errors.hpp"
#include "cvent/sweep.hpp"
#include "cvent/table_one.hpp"
#include "cvent/thresholds.hpp"
#include "cvent/validation.hpp"

namespace {

constexpr int kExitValidationFailed = 1;
constexpr int kExitInvalidSpec = 2;
constexpr int kExitNonConvergence = 3;

struct SweepFlags {
  std::string config;
  std::string family;
  double alpha_min = 0.0;
  double alpha_max = 0.0;
  double alpha_step = 0.0;
  std::string phase;
  std::string nm;
  int cutoff = 0;
  int quadrature_nodes = 0;
  std::string metrics;
  std::string fidelity_route;
  std::string out;
  std::string gnuplot;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw cvent::InvalidSpec("cannot write '" + path + "'");
  f << text;
}

int run_sweep_command(const SweepFlags& flags, const CLI::App& sub) {
  cvent::ConfigMap config;
  if (!flags.config.empty()) config = cvent::load_config(flags.config);

  // Command-line values replace file values key by key.
  auto set = [&](const char* key, const std::string& value) {
    if (sub.count(std::string("--") + key) > 0) config[key] = value;
  };
  auto real = [](double v) { return cvent::format_real(v); };
  set("family", flags.family);
  set("alpha-min", real(flags.alpha_min));
  set("alpha-max", real(flags.alpha_max));
  set("alpha-step", real(flags.alpha_step));
  set("phase", flags.phase);
  set("nm", flags.nm);
  set("cutoff", std::to_string(flags.cutoff));
  set("quadrature-nodes", std::to_string(flags.quadrature_nodes));
  set("metrics", flags.metrics);
  set("fidelity-route", flags.fidelity_route);
  set("out", flags.out);
  set("gnuplot", flags.gnuplot);

  cvent::SweepSpec spec;
  cvent::apply_config(spec, config);
  spec.validate();

  const auto records = cvent::run_sweep(spec);
  for (const auto& r : records) {
    if (!r.failure.empty()) {
      std::cerr << "row alpha=" << cvent::format_real(r.alpha_mod) << " n+m=" << r.n_plus_m
                << " phase=" << cvent::format_real(r.phase) << ": " << r.failure << '\n';
    }
  }

  const std::string out = config.count("out") ? config.at("out") : std::string();
  const std::string csv = cvent::to_csv(records);
  if (out.empty() || out == "-") {
    std::cout << csv;
  } else {
    write_text(out, csv);
  }
  if (config.count("gnuplot") && !config.at("gnuplot").empty()) {
    write_text(config.at("gnuplot"),
               cvent::gnuplot_script(spec, out.empty() || out == "-" ? "sweep.csv" : out));
  }
  return 0;
}

int run_thresholds_command(const cvent::ThresholdOptions& options) {
  int status = 0;
  for (auto kind : {cvent::ThresholdKind::FidelityClassical,
                    cvent::ThresholdKind::FidelityCrossover,
                    cvent::ThresholdKind::EprCrossover}) {
    try {
      const auto r = cvent::threshold_scan(kind, options);
      std::cout << std::left << std::setw(20) << cvent::threshold_name(kind)
                << " alpha=" << std::fixed << std::setprecision(6) << r.alpha
                << std::defaultfloat << std::setprecision(3) << " residual=" << r.residual
                << " bracket=" << r.bracket_width << " evaluations=" << r.evaluations << '\n';
    } catch (const cvent::InvalidSpec&) {
      throw;
    } catch (const cvent::Error& e) {
      std::cerr << cvent::threshold_name(kind) << ": " << e.what() << '\n';
      status = kExitNonConvergence;
    }
  }
  return status;
}

int run_table_command() {
  std::cout << std::left << std::setw(38) << "state" << std::setw(12) << "fidelity"
            << std::setw(12) << "class" << std::setw(11) << "entangled" << std::setw(9) << "EPR"
            << std::setw(10) << "entropy" << "EPR variance\n";
  for (const auto& row : cvent::classify_table_one()) {
    std::cout << std::setw(38) << row.state_label << std::setw(12) << std::setprecision(6)
              << row.fidelity << std::setw(12) << cvent::fidelity_class_name(row.fidelity_class)
              << std::setw(11) << (row.entangled ? "yes" : "no") << std::setw(9)
              << (row.epr_second_order ? "yes" : "no") << std::setw(10) << row.entropy_bits
              << row.epr_variance << (row.boundary ? "  (boundary F = 1/2)" : "") << '\n';
  }
  return 0;
}

int run_validate_command(int cutoff) {
  cvent::ValidationOptions options;
  options.cutoff = cutoff;
  bool all = true;
  for (const auto& c : cvent::run_validation(options)) {
    all = all && c.passed;
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  max deviation "
              << std::setprecision(3) << c.max_deviation << " (tolerance " << c.tolerance << ")";
    if (!c.detail.empty()) std::cout << "  " << c.detail;
    std::cout << '\n';
  }
  return all ? 0 : kExitValidationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement, EPR correlation and teleportation fidelity of photon-subtracted "
               "non-Gaussian resources"};
  app.require_subcommand(1);

  SweepFlags sf;
  auto* sweep = app.add_subcommand("sweep", "Sweep |alpha| (lambda for TMSS families), write CSV");
  sweep->add_option("--config", sf.config, "key=value file; flags override its values")
      ->check(CLI::ExistingFile);
  sweep->add_option("--family", sf.family,
                    "PACS_SPLIT, ODD_CAT_SPLIT, TMSS, TMSS_SUB_A, TMSS_ADD_AB, TMSS_ADDSUB_AB");
  sweep->add_option("--alpha-min", sf.alpha_min);
  sweep->add_option("--alpha-max", sf.alpha_max);
  sweep->add_option("--alpha-step", sf.alpha_step);
  sweep->add_option("--phase", sf.phase, "radians (comma list) or 'auto'");
  sweep->add_option("--nm", sf.nm, "comma list of n+m values");
  sweep->add_option("--cutoff", sf.cutoff);
  sweep->add_option("--quadrature-nodes", sf.quadrature_nodes);
  sweep->add_option("--metrics", sf.metrics, "comma list of entropy, epr, fidelity");
  sweep->add_option("--fidelity-route", sf.fidelity_route, "closed, numeric or epr");
  sweep->add_option("--out", sf.out, "CSV path ('-' for stdout)");
  sweep->add_option("--gnuplot", sf.gnuplot, "also write a gnuplot script here");

  cvent::ThresholdOptions topts;
  std::string route = "closed";
  auto* thresholds = app.add_subcommand("thresholds", "Locate the three |alpha| crossings");
  thresholds->add_option("--cutoff", topts.metric.cutoff);
  thresholds->add_option("--quadrature-nodes", topts.metric.quadrature_nodes);
  thresholds->add_option("--tolerance", topts.tolerance, "bisection width in |alpha|");
  thresholds->add_option("--route", route, "closed or numeric")
      ->check(CLI::IsMember({"closed", "numeric"}));

  auto* table1 = app.add_subcommand("table1", "Classify the reference resources");

  int validate_cutoff = cvent::kDefaultCutoff;
  auto* validate = app.add_subcommand("validate", "Run the cross-validation suite");
  validate->add_option("--cutoff", validate_cutoff);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInvalidSpec;
  }

  try {
    if (*sweep) return run_sweep_command(sf, *sweep);
    if (*thresholds) {
      topts.metric.route = route == "numeric" ? cvent::MetricRoute::Numeric
                                              : cvent::MetricRoute::Closed;
      if (topts.metric.cutoff < 1 || topts.metric.quadrature_nodes < 4) {
        throw cvent::InvalidSpec("cutoff must be >= 1 and quadrature-nodes >= 4");
      }
      return run_thresholds_command(topts);
    }
    if (*table1) return run_table_command();
    if (*validate) return run_validate_command(validate_cutoff);
  } catch (const cvent::InvalidSpec& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitInvalidSpec;
  } catch (const cvent::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNonConvergence;
  }
  return 0;
}
