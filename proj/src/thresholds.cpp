#include "cvent/thresholds.hpp"

#include <cmath>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "cvent/errors.hpp"
#include "cvent/teleportation.hpp"

namespace cvent {

namespace {

ResourceSpec split_spec(Family family, double alpha_mod, double phase, int n_plus_m, int cutoff) {
  if (family == Family::PacsSplit) return ResourceSpec::pacs(alpha_mod, phase, n_plus_m, 0, cutoff);
  if (family == Family::OddCatSplit) {
    return ResourceSpec::odd_cat(alpha_mod, phase, n_plus_m, 0, cutoff);
  }
  throw InvalidSpec("phase optimization applies to split families only");
}

CharFn closed_char_fn(const ResourceSpec& spec) {
  return spec.family == Family::PacsSplit ? char_fn_psi1_closed(spec) : char_fn_psi2_closed(spec);
}

}  // namespace

PhaseOptimum optimal_fidelity_closed(Family family, double alpha_mod, int n_plus_m,
                                     const QuadratureRule& rule) {
  return optimize_phase(
      [&](double phase) {
        const auto spec = split_spec(family, alpha_mod, phase, n_plus_m, kDefaultCutoff);
        return bk_integral(closed_char_fn(spec), rule).fidelity;
      },
      Goal::Maximize);
}

PhaseOptimum optimal_epr_closed(Family family, double alpha_mod, int n_plus_m) {
  return optimize_phase(
      [&](double phase) {
        if (family == Family::PacsSplit) {
          return epr_psi1_closed(alpha_mod, phase, n_plus_m).total_variance;
        }
        split_spec(family, alpha_mod, phase, n_plus_m, kDefaultCutoff);
        return epr_psi2_closed(alpha_mod, phase, parity_of(n_plus_m)).total_variance;
      },
      Goal::Minimize);
}

double pacs_fidelity(double alpha_mod, int n_plus_m, const MetricOptions& options) {
  const auto rule = QuadratureRule::gauss_hermite(options.quadrature_nodes);
  const PhaseOptimum best = optimal_fidelity_closed(Family::PacsSplit, alpha_mod, n_plus_m, rule);
  if (options.route == MetricRoute::Closed) return best.value;
  const auto spec = ResourceSpec::pacs(alpha_mod, best.phase, n_plus_m, 0, options.cutoff);
  return fidelity_epr_form(subtracted_signal(spec)).fidelity;
}

double pacs_epr(double alpha_mod, int n_plus_m, const MetricOptions& options) {
  const PhaseOptimum best = optimal_epr_closed(Family::PacsSplit, alpha_mod, n_plus_m);
  if (options.route == MetricRoute::Closed) return best.value;
  const auto spec = ResourceSpec::pacs(alpha_mod, best.phase, n_plus_m, 0, options.cutoff);
  return epr_numeric(build_resource_circuit(spec), best.phase).total_variance;
}

std::string_view threshold_name(ThresholdKind kind) {
  switch (kind) {
    case ThresholdKind::FidelityClassical:
      return "fidelity_classical";
    case ThresholdKind::FidelityCrossover:
      return "fidelity_crossover";
    case ThresholdKind::EprCrossover:
      return "epr_crossover";
  }
  return "unknown";
}

ThresholdResult threshold_scan(ThresholdKind kind, const ThresholdOptions& options) {
  const MetricOptions& m = options.metric;
  int evaluations = 0;
  auto difference = [&](double alpha) {
    ++evaluations;
    switch (kind) {
      case ThresholdKind::FidelityClassical:
        return pacs_fidelity(alpha, 0, m) - 0.5;
      case ThresholdKind::FidelityCrossover:
        return pacs_fidelity(alpha, 1, m) - pacs_fidelity(alpha, 0, m);
      case ThresholdKind::EprCrossover:
        return pacs_epr(alpha, 1, m) - pacs_epr(alpha, 0, m);
    }
    return 0.0;
  };

  const double lo = options.bracket_lo;
  const double hi = options.bracket_hi;
  if (!(lo < hi) || !(options.tolerance > 0.0)) {
    throw InvalidSpec("threshold bracket must satisfy lo < hi with a positive tolerance");
  }
  const double f_lo = difference(lo);
  const double f_hi = difference(hi);
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw BracketFailure(std::string(threshold_name(kind)) + ": no sign change on [" +
                         std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }

  const double tol = options.tolerance;
  const auto [a, b] = boost::math::tools::bisect(
      difference, lo, hi, [tol](double x, double y) { return std::abs(y - x) <= tol; });

  ThresholdResult r;
  r.kind = kind;
  r.alpha = 0.5 * (a + b);
  r.bracket_width = b - a;
  r.residual = difference(r.alpha);
  r.evaluations = evaluations;
  return r;
}

}  // namespace cvent
