#include "cvent/teleportation.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "cvent/errors.hpp"

namespace cvent {

namespace {

constexpr double kNegligibleWeight = 1e-20;

// cosh(u) − 1 for complex u without cancellation near u = 0.
cplx cosh_minus_one(cplx u) {
  const cplx s = std::sinh(0.5 * u);
  return 2.0 * s * s;
}

}  // namespace

CharFn char_fn_numeric(const TwoModeState& state) {
  auto psi = std::make_shared<const Eigen::MatrixXcd>(state.normalized().amplitudes());
  const int cutoff = state.cutoff();
  const MomentSet m = moments(state);

  CharFn fn;
  fn.kind = CharFnKind::NumericFock;
  fn.epr_offset = m.mean_a - std::conj(m.mean_b);
  fn.domain_abs_sq = cutoff;
  fn.evaluator = [psi, cutoff](cplx lambda2, cplx lambda3) -> cplx {
    if (std::norm(lambda2) > cutoff || std::norm(lambda3) > cutoff) {
      throw CutoffTooSmall("characteristic function argument beyond |lambda|^2 = " +
                           std::to_string(cutoff));
    }
    const Eigen::MatrixXcd d2 = displacement_matrix(lambda2, cutoff);
    const Eigen::MatrixXcd d3 = displacement_matrix(lambda3, cutoff);
    // ⟨Ψ|D₂ ⊗ D₃|Ψ⟩ = Tr(Ψ† D₂ Ψ D₃ᵀ)
    const Eigen::MatrixXcd left = d2 * (*psi);
    const Eigen::MatrixXcd both = left * d3.transpose();
    return (psi->conjugate().cwiseProduct(both)).sum();
  };
  return fn;
}

CharFn char_fn_psi1_closed(const ResourceSpec& spec) {
  spec.validate();
  if (spec.family != Family::PacsSplit) {
    throw InvalidSpec("char_fn_psi1_closed needs a PACS_SPLIT resource");
  }
  const auto k = NormalizationConstants::of(spec.alpha_mod, spec.n_plus_m());
  if (k.n1 == 0.0) {
    throw DegenerateState("closed-form PACS characteristic function is 0/0 at alpha = 0, n+m = 0");
  }
  const cplx alpha = spec.alpha();
  const double a2 = std::norm(alpha);
  const double n1 = k.n1;
  const double m1 = k.m1;

  CharFn fn;
  fn.kind = CharFnKind::ClosedPsi1;
  // ⟨a − b†⟩ = √2 Re⟨a⟩ of the subtracted signal, ⟨a⟩ = α(1 + (M + |α|²)/N₁).
  fn.epr_offset = std::sqrt(2.0) * alpha.real() * (1.0 + (spec.n_plus_m() + a2) / n1);
  fn.evaluator = [alpha, a2, n1, m1](cplx lambda2, cplx lambda3) -> cplx {
    const cplx delta = std::conj(alpha) / std::sqrt(2.0) * (lambda2 - lambda3);
    const cplx gauss =
        std::exp(-0.5 * (std::norm(lambda2) + std::norm(lambda3)) + delta - std::conj(delta));
    return gauss / n1 * (a2 + (m1 + delta) * (m1 - std::conj(delta)));
  };
  return fn;
}

CharFn char_fn_psi2_closed(const ResourceSpec& spec) {
  spec.validate();
  if (spec.family != Family::OddCatSplit) {
    throw InvalidSpec("char_fn_psi2_closed needs an ODD_CAT_SPLIT resource");
  }
  if (spec.alpha_mod == 0.0) {
    throw DegenerateState("odd cat resource vanishes at alpha = 0");
  }
  const cplx alpha = spec.alpha();
  const double a2 = std::norm(alpha);
  const double s = spec.n_plus_m() % 2 == 0 ? 1.0 : -1.0;
  const double n2 = NormalizationConstants::of(spec.alpha_mod, spec.n_plus_m()).n2;
  const double e2 = std::exp(-2.0 * a2);
  const double one_minus_se2 = s > 0 ? -std::expm1(-2.0 * a2) : 1.0 + e2;

  CharFn fn;
  fn.kind = CharFnKind::ClosedPsi2;
  fn.evaluator = [alpha, s, n2, e2, one_minus_se2](cplx lambda2, cplx lambda3) -> cplx {
    const cplx delta = std::conj(alpha) / std::sqrt(2.0) * (lambda2 - lambda3);
    const cplx minus = delta - std::conj(delta);
    const cplx plus = delta + std::conj(delta);
    // cosh(u) − s E cosh(v) rewritten as (cosh u − 1) − s E (cosh v − 1) + (1 − s E)
    const cplx bracket =
        cosh_minus_one(minus) - s * e2 * cosh_minus_one(plus) + one_minus_se2;
    return 2.0 * std::exp(-0.5 * (std::norm(lambda2) + std::norm(lambda3))) / n2 * bracket;
  };
  return fn;
}

FidelityResult make_fidelity_result(double fidelity, FidelityMethod method,
                                    double error_estimate) {
  FidelityResult r;
  r.fidelity = fidelity;
  r.method = method;
  r.quadrature_error_estimate = error_estimate;
  r.beats_classical = fidelity > 0.5;
  r.boundary = std::abs(fidelity - 0.5) <= kFidelityBoundaryBand;
  return r;
}

BkIntegral bk_integral(const CharFn& char_fn, const QuadratureRule& rule,
                       cplx input_amplitude) {
  const cplx gamma = char_fn.epr_offset;
  const cplx beta = input_amplitude;
  const bool explicit_input = beta != cplx(0.0, 0.0);
  cplx sum = 0.0;
  double skipped = 0.0;
  const int n = rule.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double w = rule.weights[i] * rule.weights[j];
      const cplx lambda(rule.nodes[i], rule.nodes[j]);
      if (w < kNegligibleWeight || std::norm(lambda) > char_fn.domain_abs_sq) {
        skipped += w;
        continue;
      }
      cplx term = char_fn(std::conj(lambda), lambda) *
                  std::exp(-(std::conj(lambda) * std::conj(gamma) - lambda * gamma));
      if (explicit_input) {
        // Phase parts of C_in(λ) and C_in(−λ); their Gaussians are the weight.
        const cplx phase = lambda * std::conj(beta) - std::conj(lambda) * beta;
        term *= std::exp(phase) * std::exp(-phase);
      }
      sum += w * term;
    }
  }
  return {sum.real() / std::numbers::pi, skipped / std::numbers::pi};
}

FidelityResult fidelity_bk(const CharFn& char_fn, const QuadratureRule& rule, double tolerance) {
  const BkIntegral coarse = bk_integral(char_fn, rule);
  const BkIntegral fine = bk_integral(char_fn, rule.doubled());
  const double error =
      std::abs(fine.fidelity - coarse.fidelity) + std::max(coarse.skipped_weight, fine.skipped_weight);
  if (error > tolerance) {
    throw QuadratureNotConverged("fidelity moved by " + std::to_string(error) +
                                 " when the quadrature nodes were doubled");
  }
  return make_fidelity_result(coarse.fidelity, FidelityMethod::Quadrature, error);
}

FidelityResult fidelity_epr_form(const SingleModeState& subtracted_signal, double tolerance) {
  const double signal_factor =
      hermitian_function_expectation(subtracted_signal, Quadrature::X, tolerance);
  return make_fidelity_result(signal_factor / std::sqrt(2.0), FidelityMethod::EprForm);
}

FidelityResult fidelity_psi1_closed(double alpha_mod, int n_plus_m) {
  const auto k = NormalizationConstants::of(alpha_mod, n_plus_m);
  if (k.n1 == 0.0) return make_fidelity_result(0.25, FidelityMethod::ClosedForm);
  const double a = alpha_mod;
  const double a2 = a * a;
  const double m = n_plus_m;
  const double beta = 2.0 * a * (1.0 + (m + a2) / k.n1);
  const double num = m * (m + a * beta) + 0.5 * a2 * (1.0 + 0.5 * beta * beta);
  const double gap = a - 0.5 * beta;
  return make_fidelity_result(num / (2.0 * k.n1) * std::exp(-gap * gap),
                              FidelityMethod::ClosedForm);
}

}  // namespace cvent
