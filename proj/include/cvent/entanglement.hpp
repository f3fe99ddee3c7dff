#pragma once

// Degree of entanglement of pure two-mode states: von Neumann entropy (in
// bits) of the reduced state, numerically from a partial trace or from the
// 2×2 reduced matrices of the split resources.

#include <span>
#include <vector>

#include "cvent/fock.hpp"
#include "cvent/resources.hpp"

namespace cvent {

enum class EntropyMethod { Numeric, ClosedForm };

struct EntropyResult {
  double entropy_bits = 0.0;
  std::vector<double> eigenvalues;
  EntropyMethod method = EntropyMethod::Numeric;
};

// −Σ λ log₂ λ with 0·log 0 = 0. Eigenvalues in [−1e-10, 0) are clipped to
// zero; anything more negative throws NumericalInstability.
double entropy_bits_from_eigenvalues(std::span<const double> eigenvalues);

EntropyResult entropy_numeric(const TwoModeState& state);

// Eigenvalues of (1/2N₁)[[|α|²+2M₁², √2α*M₁], [√2αM₁, |α|²]]. At α = 0 with
// n+m = 0 the α → 0 limit (½, ½) is returned.
EntropyResult entropy_psi1_closed(double alpha_mod, int n_plus_m);

// Eigenvalues λ±/N₂ with λ± = (1 ± e^{−|α|²})[1 ∓ (−1)^{n+m} e^{−|α|²}].
// Throws DegenerateState at α = 0 (the odd cat vanishes).
EntropyResult entropy_psi2_closed(double alpha_mod, Parity parity);

}  // namespace cvent
