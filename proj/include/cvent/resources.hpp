#pragma once

// Single-mode inputs and the two-mode resources built from them.
//
// The split resources (PACS_SPLIT, ODD_CAT_SPLIT) can be built two ways:
// through the beam-splitter circuit in Fock space, or from their closed-form
// decompositions into displaced Fock states / cat-state products. The two
// routes share no code beyond coherent-state amplitudes and serve as each
// other's oracle.

#include <string>
#include <string_view>

#include "cvent/fock.hpp"

namespace cvent {

enum class Family {
  PacsSplit,     // a†|α⟩ ⊗ |0⟩ through the beam splitter, then a^n b^m
  OddCatSplit,   // (|α⟩ − |−α⟩) ⊗ |0⟩ through the beam splitter, then a^n b^m
  Tmss,          // two-mode squeezed vacuum
  TmssSubA,      // a^n b^m |TMSS⟩ with n ≥ 1
  TmssAddAB,     // a† b† |TMSS⟩
  TmssAddSubAB,  // a† b† a b |TMSS⟩
};

std::string_view family_name(Family family);
// Accepts the upper-case names above (case-insensitive); throws InvalidSpec.
Family parse_family(std::string_view name);
bool is_tmss_family(Family family);

enum class Parity { Even, Odd };
inline Parity parity_of(int n) { return n % 2 == 0 ? Parity::Even : Parity::Odd; }

struct ResourceSpec {
  Family family = Family::PacsSplit;
  double alpha_mod = 0.0;
  double alpha_phase = 0.0;
  int n_sub_a = 0;
  int n_sub_b = 0;
  double lambda = 0.0;  // TMSS families only
  int cutoff = kDefaultCutoff;

  cplx alpha() const;
  int n_plus_m() const { return n_sub_a + n_sub_b; }
  // Throws InvalidSpec for out-of-range fields or a parameter that does not
  // belong to the family.
  void validate() const;

  static ResourceSpec pacs(double alpha_mod, double phase, int n_sub_a, int n_sub_b = 0,
                           int cutoff = kDefaultCutoff);
  static ResourceSpec odd_cat(double alpha_mod, double phase, int n_sub_a, int n_sub_b = 0,
                              int cutoff = kDefaultCutoff);
  static ResourceSpec tmss(Family family, double lambda, int n_sub_a = 0, int n_sub_b = 0,
                           int cutoff = kDefaultCutoff);
};

std::string describe(const ResourceSpec& spec);

// N₁ = (n+m+|α|²)² + |α|², N₂ = 2[1 − (−1)^{n+m} e^{−2|α|²}], M₁ = n+m+|α|².
struct NormalizationConstants {
  double n1;
  double n2;
  double m1;

  static NormalizationConstants of(double alpha_mod, int n_plus_m);
};

// Throws CutoffTooSmall unless |α|² ≤ cutoff/4. The truncated Poisson vector
// is renormalized and the discarded tail booked as truncation loss.
SingleModeState coherent(cplx alpha, int cutoff);
SingleModeState photon_added_coherent(cplx alpha, int cutoff);
// Throws DegenerateState at α = 0.
SingleModeState odd_cat(cplx alpha, int cutoff);
SingleModeState even_cat(cplx alpha, int cutoff);
// √(1−λ²) Σ λⁿ |n⟩|n⟩, renormalized after truncation. Requires 0 ≤ λ < 1.
TwoModeState tmss(double lambda, int cutoff);

// The normalized subtracted signal a^{n+m}|ψ⟩ that enters the beam splitter
// (equivalent input for the split families). PACS and cat families only.
SingleModeState subtracted_signal(const ResourceSpec& spec);

// Vacuum ⊗ input → beam splitter → n annihilations on A, m on B →
// normalize; TMSS families apply their ladder operators to |TMSS⟩.
// Throws DegenerateState if the unnormalized result vanishes.
TwoModeState build_resource_circuit(const ResourceSpec& spec);

// Closed-form superposition before normalization; its squared norm is N₁
// (PACS) or N₂ (cat) up to truncation.
TwoModeState closed_form_unnormalized(const ResourceSpec& spec);
// closed_form_unnormalized divided by √N₁ or √N₂. PACS and cat only.
TwoModeState build_resource_closed_form(const ResourceSpec& spec);

enum class SmallAlphaKind { Psi1, Psi1Sub, Psi2, Psi2Sub };

// Leading-order expansions of the n+m = 0 resources and their singly
// subtracted versions, exactly as truncated (unnormalized):
//   Psi1    |1,0⟩ − |0,1⟩ + α(|2,0⟩ + |0,2⟩ − √2|1,1⟩)
//   Psi1Sub |0,0⟩ + √2 α(|1,0⟩ − |0,1⟩)
//   Psi2    |1,0⟩ − |0,1⟩ + α²/(2√6)(|3,0⟩ − |0,3⟩ − √3|2,1⟩ + √3|1,2⟩)
//   Psi2Sub |0,0⟩ + α²/(2√2)(|2,0⟩ + |0,2⟩ − √2|1,1⟩)
TwoModeState small_alpha_state(SmallAlphaKind kind, cplx alpha, int cutoff);

}  // namespace cvent
