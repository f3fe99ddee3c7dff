#pragma once

// Classification of pure bipartite resources by teleportation fidelity
// (relative to the classical 1/2), entanglement and second-order EPR
// correlation.

#include <string>
#include <vector>

#include "cvent/resources.hpp"

namespace cvent {

enum class FidelityClass { AboveHalf, BelowHalf };

std::string_view fidelity_class_name(FidelityClass c);

struct TableOneRow {
  std::string state_label;
  ResourceSpec resource;
  double entropy_bits = 0.0;
  double epr_variance = 1.0;
  double fidelity = 0.0;
  FidelityClass fidelity_class = FidelityClass::BelowHalf;
  bool entangled = false;
  bool epr_second_order = false;
  // Fidelity within 1e-8 of 1/2: the separable supremum, reported as BELOW_HALF.
  bool boundary = false;
};

// Evaluates one resource at its stored parameters.
TableOneRow classify(const std::string& label, const ResourceSpec& resource);

// The reference scenarios:
//   a†b†|TMSS⟩ at λ = 0.3 and a†b†ab|TMSS⟩ at λ = 0.2 (F > 1/2 without EPR),
//   a|TMSS⟩ at λ = 0.38 (EPR present, F < 1/2),
//   the odd-cat split resource at |α| = 1, n+m = 0, fidelity-optimal phase,
//   the two-mode vacuum (separable, boundary),
//   |TMSS⟩ at λ = 0.3 and PACS_SPLIT at |α| = 0.8, n+m = 0 (reference rows).
std::vector<TableOneRow> classify_table_one();

}  // namespace cvent
