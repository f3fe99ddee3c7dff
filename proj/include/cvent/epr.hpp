#pragma once

// Second-order EPR correlation: the total variance
//   Δ²(x_A − x_B) + Δ²(p_A + p_B),  x = (a + a†)/2,  p = −i(a − a†)/2,
// which equals 1 for the vacuum. Values strictly below 1 witness
// entanglement.

#include <functional>

#include "cvent/fock.hpp"
#include "cvent/resources.hpp"

namespace cvent {

enum class EprMethod { Numeric, ClosedForm };

// Distance from 1 inside which a variance is reported as a boundary case.
inline constexpr double kEprBoundaryBand = 1e-12;

struct EprResult {
  double total_variance = 1.0;
  double phase_used = 0.0;
  bool correlated = false;  // total_variance < 1, strictly
  bool boundary = false;    // |total_variance − 1| ≤ kEprBoundaryBand
  EprMethod method = EprMethod::Numeric;
};

EprResult make_epr_result(double total_variance, double phase, EprMethod method);

// From the moment set: 1 + (n_a + n_b − ⟨ab⟩ − ⟨a†b†⟩) − |⟨a⟩ − ⟨b⟩*|².
// Throws NumericalInstability if the imaginary residue exceeds 1e-8.
// `phase_used` is only recorded in the result.
EprResult epr_numeric(const TwoModeState& state, double phase_used = 0.0);

// Closed form for the photon-added-coherent resource, α = |α|e^{iφ}. At
// α = 0 with n+m = 0 the φ-independent limit 2 is returned.
EprResult epr_psi1_closed(double alpha_mod, double phase, int n_plus_m);

// 1 + |α|²[(1 + (−1)^{n+m}e^{−2|α|²})/(1 − (−1)^{n+m}e^{−2|α|²}) + cos 2φ].
// Throws DegenerateState at α = 0.
EprResult epr_psi2_closed(double alpha_mod, double phase, Parity parity);

enum class Goal { Minimize, Maximize };

struct PhaseOptimum {
  double phase = 0.0;  // in [0, π)
  double value = 0.0;
  bool flat = false;   // metric constant to 1e-12 over the scan
};

// Grid scan of [0, π) at step π/360, then golden-section refinement of the
// best bracket to 1e-8 in phase. Every metric here is π-periodic in φ.
PhaseOptimum optimize_phase(const std::function<double(double)>& metric, Goal goal);

}  // namespace cvent
