#include "cvent/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "cvent/entanglement.hpp"
#include "cvent/epr.hpp"
#include "cvent/errors.hpp"
#include "cvent/teleportation.hpp"
#include "cvent/thresholds.hpp"

namespace cvent {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
T parse_number(const std::string& text) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw InvalidSpec("not a number: '" + text + "'");
  return value;
}

ResourceSpec row_resource(const SweepSpec& spec, double alpha, int n_plus_m, double phase,
                          int cutoff) {
  if (is_tmss_family(spec.family)) {
    const int n_a = spec.family == Family::TmssSubA ? n_plus_m : 0;
    return ResourceSpec::tmss(spec.family, alpha, n_a, 0, cutoff);
  }
  ResourceSpec r = spec.family == Family::PacsSplit
                       ? ResourceSpec::pacs(alpha, phase, n_plus_m, 0, cutoff)
                       : ResourceSpec::odd_cat(alpha, phase, n_plus_m, 0, cutoff);
  return r;
}

double row_phase(const SweepSpec& spec, double alpha, int n_plus_m,
                 std::optional<double> phase, const QuadratureRule& rule) {
  if (phase) return *phase;
  if (is_tmss_family(spec.family) || alpha == 0.0) return 0.0;
  if (spec.wants(Metric::Fidelity)) {
    return optimal_fidelity_closed(spec.family, alpha, n_plus_m, rule).phase;
  }
  if (spec.wants(Metric::Epr)) return optimal_epr_closed(spec.family, alpha, n_plus_m).phase;
  return 0.0;
}

double row_fidelity(const SweepSpec& spec, const ResourceSpec& resource,
                    const TwoModeState& state, const QuadratureRule& rule) {
  switch (spec.effective_fidelity_route()) {
    case FidelityRoute::Closed: {
      if (resource.family == Family::PacsSplit) {
        // The closed characteristic function is 0/0 at α = 0, n+m = 0.
        if (NormalizationConstants::of(resource.alpha_mod, resource.n_plus_m()).n1 == 0.0) {
          return fidelity_epr_form(subtracted_signal(resource)).fidelity;
        }
        return fidelity_bk(char_fn_psi1_closed(resource), rule).fidelity;
      }
      return fidelity_bk(char_fn_psi2_closed(resource), rule).fidelity;
    }
    case FidelityRoute::Numeric:
      return fidelity_bk(char_fn_numeric(state), rule).fidelity;
    case FidelityRoute::Epr:
      return fidelity_epr_form(subtracted_signal(resource)).fidelity;
  }
  return kNaN;
}

}  // namespace

bool SweepSpec::wants(Metric metric) const {
  return std::find(metrics.begin(), metrics.end(), metric) != metrics.end();
}

FidelityRoute SweepSpec::effective_fidelity_route() const {
  if (fidelity_route) return *fidelity_route;
  return is_tmss_family(family) ? FidelityRoute::Numeric : FidelityRoute::Closed;
}

std::vector<double> SweepSpec::alpha_grid() const {
  const auto count =
      static_cast<long>(std::floor((alpha_max - alpha_min) / alpha_step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(count);
  for (long i = 0; i < count; ++i) grid.push_back(alpha_min + static_cast<double>(i) * alpha_step);
  return grid;
}

void SweepSpec::validate() const {
  if (!std::isfinite(alpha_min) || !std::isfinite(alpha_max) || !std::isfinite(alpha_step)) {
    throw InvalidSpec("alpha range must be finite");
  }
  if (alpha_min < 0.0) throw InvalidSpec("alpha-min must be >= 0");
  if (alpha_step <= 0.0) throw InvalidSpec("alpha-step must be > 0");
  if (alpha_max < alpha_min) throw InvalidSpec("alpha-max must be >= alpha-min");
  if (alpha_grid().size() > 1'000'000) throw InvalidSpec("alpha grid exceeds one million points");
  if (cutoff < 1) throw InvalidSpec("cutoff must be >= 1");
  if (quadrature_nodes < 4) throw InvalidSpec("quadrature-nodes must be >= 4");
  if (metrics.empty()) throw InvalidSpec("no metrics requested");
  if (subtraction_totals.empty()) throw InvalidSpec("nm list is empty");
  for (int k : subtraction_totals) {
    if (k < 0) throw InvalidSpec("n+m values must be >= 0");
    if (family == Family::TmssSubA && k < 1) {
      throw InvalidSpec("TMSS_SUB_A needs n+m >= 1 (subtractions on mode A)");
    }
    if ((family == Family::Tmss || family == Family::TmssAddAB ||
         family == Family::TmssAddSubAB) && k != 0) {
      throw InvalidSpec(std::string(family_name(family)) + " only takes n+m = 0");
    }
  }
  if (is_tmss_family(family)) {
    if (alpha_max >= 1.0) throw InvalidSpec("lambda (alpha column) must stay below 1");
    if (!phases.empty()) throw InvalidSpec("TMSS families take no phase");
    if (fidelity_route && *fidelity_route != FidelityRoute::Numeric) {
      throw InvalidSpec("TMSS families support only the numeric fidelity route");
    }
  }
  for (double p : phases) {
    if (!std::isfinite(p)) throw InvalidSpec("phase must be finite");
  }
}

ConfigMap parse_config(std::istream& in) {
  ConfigMap out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidSpec("config line " + std::to_string(number) + ": expected key=value");
    }
    const std::string key = lower(trim(std::string_view(line).substr(0, eq)));
    if (key.empty()) throw InvalidSpec("config line " + std::to_string(number) + ": empty key");
    out[key] = trim(std::string_view(line).substr(eq + 1));
  }
  return out;
}

ConfigMap load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidSpec("cannot open config file '" + path + "'");
  return parse_config(in);
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(parse_number<double>(item));
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split_list(text)) out.push_back(parse_number<int>(item));
  return out;
}

std::vector<Metric> parse_metrics(const std::string& text) {
  std::vector<Metric> out;
  for (const auto& item : split_list(text)) {
    const std::string m = lower(item);
    Metric metric;
    if (m == "entropy") metric = Metric::Entropy;
    else if (m == "epr") metric = Metric::Epr;
    else if (m == "fidelity") metric = Metric::Fidelity;
    else throw InvalidSpec("unknown metric '" + item + "'");
    if (std::find(out.begin(), out.end(), metric) == out.end()) out.push_back(metric);
  }
  return out;
}

FidelityRoute parse_fidelity_route(const std::string& text) {
  const std::string r = lower(trim(text));
  if (r == "closed") return FidelityRoute::Closed;
  if (r == "numeric") return FidelityRoute::Numeric;
  if (r == "epr") return FidelityRoute::Epr;
  throw InvalidSpec("unknown fidelity route '" + text + "'");
}

void apply_config(SweepSpec& spec, const ConfigMap& config) {
  for (const auto& [key, value] : config) {
    if (key == "family") spec.family = parse_family(value);
    else if (key == "alpha-min") spec.alpha_min = parse_number<double>(value);
    else if (key == "alpha-max") spec.alpha_max = parse_number<double>(value);
    else if (key == "alpha-step") spec.alpha_step = parse_number<double>(value);
    else if (key == "phase") {
      spec.phases = lower(value) == "auto" ? std::vector<double>{} : parse_real_list(value);
      if (lower(value) != "auto" && spec.phases.empty()) throw InvalidSpec("empty phase list");
    }
    else if (key == "nm") spec.subtraction_totals = parse_int_list(value);
    else if (key == "cutoff") spec.cutoff = parse_number<int>(value);
    else if (key == "quadrature-nodes") spec.quadrature_nodes = parse_number<int>(value);
    else if (key == "metrics") spec.metrics = parse_metrics(value);
    else if (key == "fidelity-route") spec.fidelity_route = parse_fidelity_route(value);
    else if (key == "out" || key == "gnuplot") continue;
    else throw InvalidSpec("unknown config key '" + key + "'");
  }
}

MetricRecord evaluate_row(const SweepSpec& spec, double alpha, int n_plus_m,
                          std::optional<double> phase) {
  MetricRecord rec;
  rec.family = spec.family;
  rec.alpha_mod = alpha;
  rec.n_plus_m = n_plus_m;
  rec.cutoff_used = spec.cutoff;
  rec.phase = phase.value_or(0.0);
  try {
    const auto rule = QuadratureRule::gauss_hermite(spec.quadrature_nodes);
    rec.phase = row_phase(spec, alpha, n_plus_m, phase, rule);
    const ResourceSpec resource = row_resource(spec, alpha, n_plus_m, rec.phase, spec.cutoff);
    const ResourceSpec larger =
        row_resource(spec, alpha, n_plus_m, rec.phase, spec.cutoff + 10);
    const TwoModeState state = build_resource_circuit(resource);
    const TwoModeState state_hi = build_resource_circuit(larger);
    rec.truncation_loss = state.truncation_loss();

    double shift = 0.0;
    if (spec.wants(Metric::Entropy)) {
      rec.entropy_bits = entropy_numeric(state).entropy_bits;
      shift = std::max(shift, std::abs(*rec.entropy_bits - entropy_numeric(state_hi).entropy_bits));
    }
    if (spec.wants(Metric::Epr)) {
      rec.epr_variance = epr_numeric(state, rec.phase).total_variance;
      shift = std::max(shift, std::abs(*rec.epr_variance -
                                       epr_numeric(state_hi, rec.phase).total_variance));
    }
    if (spec.wants(Metric::Fidelity)) {
      rec.fidelity = row_fidelity(spec, resource, state, rule);
      if (spec.effective_fidelity_route() == FidelityRoute::Numeric) {
        shift = std::max(shift,
                         std::abs(*rec.fidelity - row_fidelity(spec, larger, state_hi, rule)));
      }
    }
    rec.converged = shift <= kConvergenceTolerance && rec.truncation_loss <= spec.loss_tolerance;
  } catch (const Error& e) {
    rec.converged = false;
    rec.failure = e.what();
    if (spec.wants(Metric::Entropy)) rec.entropy_bits = kNaN;
    if (spec.wants(Metric::Epr)) rec.epr_variance = kNaN;
    if (spec.wants(Metric::Fidelity)) rec.fidelity = kNaN;
  }
  return rec;
}

int thread_count_from_env() {
  if (const char* env = std::getenv("CVENT_THREADS")) {
    int n = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
    if (ec == std::errc() && ptr == text.data() + text.size() && n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<MetricRecord> run_sweep(const SweepSpec& spec, int threads) {
  spec.validate();
  struct Task {
    double alpha;
    int n_plus_m;
    std::optional<double> phase;
  };
  std::vector<Task> tasks;
  for (double alpha : spec.alpha_grid()) {
    for (int k : spec.subtraction_totals) {
      if (spec.auto_phase()) {
        tasks.push_back({alpha, k, std::nullopt});
      } else {
        for (double p : spec.phases) tasks.push_back({alpha, k, p});
      }
    }
  }
  // Warm the quadrature cache before the workers start.
  QuadratureRule::gauss_hermite(spec.quadrature_nodes).doubled();

  std::vector<MetricRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      records[i] = evaluate_row(spec, tasks[i].alpha, tasks[i].n_plus_m, tasks[i].phase);
    }
  };
  const int n_threads =
      std::clamp(threads > 0 ? threads : thread_count_from_env(), 1,
                 static_cast<int>(std::max<std::size_t>(1, tasks.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  return records;
}

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 12);
  return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const std::vector<MetricRecord>& records) {
  out << kCsvHeader << '\n';
  auto optional_field = [](const std::optional<double>& v) {
    return v ? format_real(*v) : std::string();
  };
  for (const auto& r : records) {
    out << family_name(r.family) << ',' << format_real(r.alpha_mod) << ','
        << format_real(r.phase) << ',' << r.n_plus_m << ',' << optional_field(r.entropy_bits)
        << ',' << optional_field(r.epr_variance) << ',' << optional_field(r.fidelity) << ','
        << r.cutoff_used << ',' << format_real(r.truncation_loss) << ','
        << (r.converged ? "true" : "false") << '\n';
  }
}

std::string to_csv(const std::vector<MetricRecord>& records) {
  std::ostringstream out;
  write_csv(out, records);
  return out.str();
}

std::string gnuplot_script(const SweepSpec& spec, const std::string& csv_path) {
  std::ostringstream g;
  const char* x_label = is_tmss_family(spec.family) ? "lambda" : "|alpha|";
  g << "# " << family_name(spec.family) << " sweep\n"
    << "set datafile separator ','\n"
    << "set key autotitle columnhead\n"
    << "set xlabel '" << x_label << "'\n"
    << "set grid\n"
    << "nms = '";
  for (std::size_t i = 0; i < spec.subtraction_totals.size(); ++i) {
    g << (i ? " " : "") << spec.subtraction_totals[i];
  }
  g << "'\n";
  struct Panel {
    Metric metric;
    int column;
    const char* label;
  };
  const Panel panels[] = {{Metric::Entropy, 5, "entropy (bits)"},
                          {Metric::Epr, 6, "EPR total variance"},
                          {Metric::Fidelity, 7, "teleportation fidelity"}};
  int count = 0;
  for (const auto& p : panels) count += spec.wants(p.metric);
  if (count > 1) g << "set multiplot layout " << count << ",1\n";
  for (const auto& p : panels) {
    if (!spec.wants(p.metric)) continue;
    g << "set ylabel '" << p.label << "'\n"
      << "plot for [k in nms] '" << csv_path << "' using 2:(strcol(4) eq k ? $" << p.column
      << " : 1/0) with lines title 'n+m='.k\n";
  }
  if (count > 1) g << "unset multiplot\n";
  return g.str();
}

}  // namespace cvent
