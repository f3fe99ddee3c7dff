#pragma once

// Cross-checks between independent routes to the same quantity.

#include <string>
#include <vector>

#include "cvent/fock.hpp"

namespace cvent {

struct ValidationCheck {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct ValidationOptions {
  int cutoff = kDefaultCutoff;
  int random_arguments = 50;
  unsigned seed = 20240229;
};

// Largest |a − e^{iθ} b| after aligning the global phase of b to a.
double phase_aligned_distance(const TwoModeState& a, const TwoModeState& b);

// Closed-form vs circuit states, entropy, EPR and characteristic-function
// closed forms vs Fock-space numerics, three fidelity routes, and the
// vacuum/TMSS calibration anchors.
std::vector<ValidationCheck> run_validation(const ValidationOptions& options = {});

}  // namespace cvent
