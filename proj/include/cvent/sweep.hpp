#pragma once

// Parameter sweeps over |α| (λ for the TMSS families) with CSV output.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cvent/quadrature.hpp"
#include "cvent/resources.hpp"

namespace cvent {

enum class Metric { Entropy, Epr, Fidelity };

enum class FidelityRoute {
  Closed,   // quadrature of the closed characteristic function (split families)
  Numeric,  // quadrature of the Fock-space characteristic function
  Epr,      // factorized form on the subtracted signal (split families)
};

struct SweepSpec {
  Family family = Family::PacsSplit;
  double alpha_min = 0.0;
  double alpha_max = 0.0;
  double alpha_step = 0.1;
  // Empty means optimize per row: fidelity if requested, EPR otherwise.
  std::vector<double> phases;
  std::vector<int> subtraction_totals{0};
  int cutoff = kDefaultCutoff;
  int quadrature_nodes = kDefaultQuadratureNodes;
  std::vector<Metric> metrics{Metric::Entropy, Metric::Epr, Metric::Fidelity};
  std::optional<FidelityRoute> fidelity_route;  // default depends on family
  double loss_tolerance = 1e-10;

  bool auto_phase() const { return phases.empty(); }
  bool wants(Metric metric) const;
  FidelityRoute effective_fidelity_route() const;
  std::vector<double> alpha_grid() const;
  // Throws InvalidSpec.
  void validate() const;
};

// key=value lines; '#' starts a comment. Keys are the CLI long-flag names
// without the leading dashes (family, alpha-min, alpha-max, alpha-step,
// phase, nm, cutoff, quadrature-nodes, metrics, fidelity-route).
using ConfigMap = std::map<std::string, std::string>;
ConfigMap parse_config(std::istream& in);
ConfigMap load_config(const std::string& path);
// Applies recognised keys onto `spec`; unknown keys throw InvalidSpec.
void apply_config(SweepSpec& spec, const ConfigMap& config);

std::vector<double> parse_real_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);
std::vector<Metric> parse_metrics(const std::string& text);
FidelityRoute parse_fidelity_route(const std::string& text);

struct MetricRecord {
  Family family = Family::PacsSplit;
  double alpha_mod = 0.0;  // λ for TMSS families
  double phase = 0.0;
  int n_plus_m = 0;
  std::optional<double> entropy_bits;
  std::optional<double> epr_variance;
  std::optional<double> fidelity;
  int cutoff_used = kDefaultCutoff;
  double truncation_loss = 0.0;
  bool converged = false;
  std::string failure;  // empty unless the row failed
};

// One record per (alpha, n+m, phase), ordered by alpha, then n+m, then the
// phase list. Row failures are recorded in-band. `threads` ≤ 0 means
// CVENT_THREADS from the environment, else the hardware concurrency.
std::vector<MetricRecord> run_sweep(const SweepSpec& spec, int threads = 0);
MetricRecord evaluate_row(const SweepSpec& spec, double alpha, int n_plus_m,
                          std::optional<double> phase);

int thread_count_from_env();

inline constexpr const char* kCsvHeader =
    "family,alpha,phase,n_plus_m,entropy_bits,epr_variance,fidelity,cutoff,truncation_loss,"
    "converged";

// 12 significant digits, shortest of fixed/scientific, "nan" for NaN.
std::string format_real(double value);
void write_csv(std::ostream& out, const std::vector<MetricRecord>& records);
std::string to_csv(const std::vector<MetricRecord>& records);

// A gnuplot script plotting each requested metric against alpha, one curve
// per n+m, reading `csv_path`.
std::string gnuplot_script(const SweepSpec& spec, const std::string& csv_path);

}  // namespace cvent
