#pragma once

// Braunstein–Kimble teleportation of coherent states through a two-mode
// resource.
//
// The average fidelity is
//   F = (1/π) ∫ d²λ  C_in(λ) C_in(−λ) C_E(λ*, λ) e^{−(λ*γ* − λγ)}
// where C_E(λ₂, λ₃) = ⟨D_A(λ₂) D_B(λ₃)⟩ is the symmetric-ordered
// characteristic function of the resource and γ = ⟨a⟩ − ⟨b⟩* is the first
// moment of a − b†. Bob's unit-gain displacement absorbs that known offset,
// so any coherent-product resource scores exactly 1/2. For coherent inputs
// C_in(λ)C_in(−λ) = e^{−|λ|²} independently of the input amplitude, which
// is the Gauss–Hermite weight of the tensor rule.

#include <functional>
#include <limits>

#include "cvent/fock.hpp"
#include "cvent/quadrature.hpp"
#include "cvent/resources.hpp"

namespace cvent {

enum class CharFnKind { ClosedPsi1, ClosedPsi2, NumericFock };

struct CharFn {
  CharFnKind kind = CharFnKind::NumericFock;
  std::function<cplx(cplx, cplx)> evaluator;
  // γ = ⟨a⟩ − ⟨b⟩* of the resource.
  cplx epr_offset{0.0, 0.0};
  // Largest |λ|² either argument may take.
  double domain_abs_sq = std::numeric_limits<double>::infinity();

  cplx operator()(cplx lambda2, cplx lambda3) const { return evaluator(lambda2, lambda3); }
};

// ⟨Ψ|D_A(λ₂) D_B(λ₃)|Ψ⟩ from exact truncated displacement matrices. The
// state is shared, not copied, between evaluator copies. Evaluations with
// |λ|² above the cutoff throw CutoffTooSmall.
CharFn char_fn_numeric(const TwoModeState& state);

// e^{−(|λ₂|²+|λ₃|²)/2 + δ − δ*} [|α|² + (M₁+δ)(M₁−δ*)] / N₁,
// δ = α*(λ₂ − λ₃)/√2. Throws DegenerateState when N₁ = 0.
CharFn char_fn_psi1_closed(const ResourceSpec& spec);

// (2/N₂) e^{−(|λ₂|²+|λ₃|²)/2} [cosh(δ−δ*) − (−1)^{n+m} e^{−2|α|²} cosh(δ+δ*)].
CharFn char_fn_psi2_closed(const ResourceSpec& spec);

enum class FidelityMethod { Quadrature, EprForm, ClosedForm };

// Distance from 1/2 inside which a fidelity is reported as a boundary case.
inline constexpr double kFidelityBoundaryBand = 1e-8;
inline constexpr double kQuadratureTolerance = 1e-8;

struct FidelityResult {
  double fidelity = 0.0;
  FidelityMethod method = FidelityMethod::Quadrature;
  double quadrature_error_estimate = 0.0;
  bool beats_classical = false;  // fidelity > 1/2, strictly
  bool boundary = false;
};

FidelityResult make_fidelity_result(double fidelity, FidelityMethod method,
                                    double error_estimate = 0.0);

struct BkIntegral {
  double fidelity = 0.0;
  // Total 2D weight of nodes left out (outside the char-fn domain or below
  // 1e-20). Since |C_E| ≤ 1 it bounds the omitted contribution times π.
  double skipped_weight = 0.0;
};

// One tensor-rule evaluation of the fidelity integral. `input_amplitude`
// keeps the input characteristic functions explicit; their phases cancel.
BkIntegral bk_integral(const CharFn& char_fn, const QuadratureRule& rule,
                       cplx input_amplitude = {0.0, 0.0});

// bk_integral with an error estimate from doubling the node count. Throws
// QuadratureNotConverged if the estimate exceeds `tolerance`.
FidelityResult fidelity_bk(const CharFn& char_fn,
                           const QuadratureRule& rule =
                               QuadratureRule::gauss_hermite(kDefaultQuadratureNodes),
                           double tolerance = kQuadratureTolerance);

// For resources made by splitting a signal against vacuum on the beam
// splitter, the fidelity factorizes into
//   ⟨0|e^{−2(P−⟨P⟩)²}|0⟩ · ⟨s|e^{−2(X−⟨X⟩)²}|s⟩ = (1/√2) ⟨s|e^{−2(X−⟨X⟩)²}|s⟩
// with |s⟩ the subtracted signal a^{n+m}|ψ⟩. With the beam-splitter sign
// convention used here the signal enters through its X quadrature.
FidelityResult fidelity_epr_form(const SingleModeState& subtracted_signal,
                                 double tolerance = kConvergenceTolerance);

// Closed-form fidelity of the photon-added-coherent resource at its optimal
// phase φ = 0:
//   [M(M + |αβ|) + |α|²/2 (1 + |β|²/2)] / (2N₁) · e^{−(|α| − |β|/2)²},
//   |β| = 2|α|(1 + (M + |α|²)/N₁), M = n+m.
// Returns the limit 1/4 at α = 0, M = 0.
FidelityResult fidelity_psi1_closed(double alpha_mod, int n_plus_m);

}  // namespace cvent
