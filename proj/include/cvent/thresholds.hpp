#pragma once

// Phase-optimized metrics of the photon-added-coherent resource and the
// |α| at which they cross one another.

#include <string_view>

#include "cvent/epr.hpp"
#include "cvent/quadrature.hpp"
#include "cvent/resources.hpp"

namespace cvent {

enum class MetricRoute {
  Closed,   // closed-form expressions, phase optimized on them
  Numeric,  // circuit-built Fock states at the closed-form optimal phase
};

// Best fidelity over φ of a split resource, from quadrature of its closed
// characteristic function.
PhaseOptimum optimal_fidelity_closed(Family family, double alpha_mod, int n_plus_m,
                                     const QuadratureRule& rule);
// Smallest EPR total variance over φ of a split resource, closed form.
PhaseOptimum optimal_epr_closed(Family family, double alpha_mod, int n_plus_m);

struct MetricOptions {
  MetricRoute route = MetricRoute::Closed;
  int cutoff = kDefaultCutoff;
  int quadrature_nodes = kDefaultQuadratureNodes;
};

// Optimal-phase fidelity and EPR variance of PACS_SPLIT at (|α|, n+m).
double pacs_fidelity(double alpha_mod, int n_plus_m, const MetricOptions& options);
double pacs_epr(double alpha_mod, int n_plus_m, const MetricOptions& options);

enum class ThresholdKind {
  FidelityClassical,  // F(n+m=0) = 1/2
  FidelityCrossover,  // F(n+m=1) = F(n+m=0)
  EprCrossover,       // EPR(n+m=1) = EPR(n+m=0)
};

std::string_view threshold_name(ThresholdKind kind);

struct ThresholdOptions {
  MetricOptions metric;
  double bracket_lo = 1e-3;
  double bracket_hi = 2.5;
  double tolerance = 1e-6;
};

struct ThresholdResult {
  ThresholdKind kind = ThresholdKind::FidelityClassical;
  double alpha = 0.0;
  // Difference of the two crossing metrics at `alpha`.
  double residual = 0.0;
  double bracket_width = 0.0;
  int evaluations = 0;
};

// Bisection on |α| within the bracket. Throws BracketFailure if the metric
// difference has the same sign at both ends.
ThresholdResult threshold_scan(ThresholdKind kind, const ThresholdOptions& options = {});

}  // namespace cvent
