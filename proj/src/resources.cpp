#include "cvent/resources.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <sstream>

#include "cvent/errors.hpp"

namespace cvent {

namespace {

struct FamilyName {
  Family family;
  std::string_view name;
};

constexpr std::array<FamilyName, 6> kFamilyNames{{
    {Family::PacsSplit, "PACS_SPLIT"},
    {Family::OddCatSplit, "ODD_CAT_SPLIT"},
    {Family::Tmss, "TMSS"},
    {Family::TmssSubA, "TMSS_SUB_A"},
    {Family::TmssAddAB, "TMSS_ADD_AB"},
    {Family::TmssAddSubAB, "TMSS_ADDSUB_AB"},
}};

// −expm1 keeps 1 − e^{−x} accurate for the small |α| limits.
double one_minus_exp_neg(double x) { return -std::expm1(-x); }

TwoModeState apply_subtractions(TwoModeState state, int n_a, int n_b) {
  for (int i = 0; i < n_a; ++i) state = annihilate(state, Mode::A);
  for (int i = 0; i < n_b; ++i) state = annihilate(state, Mode::B);
  return state;
}

TwoModeState normalize_or_degenerate(const TwoModeState& state, const ResourceSpec& spec) {
  if (state.norm_squared() < kZeroNormSquared) {
    throw DegenerateState("resource " + describe(spec) + " has zero norm");
  }
  return state.normalized();
}

void require_split_family(const ResourceSpec& spec) {
  if (spec.family != Family::PacsSplit && spec.family != Family::OddCatSplit) {
    throw InvalidSpec("closed forms exist only for PACS_SPLIT and ODD_CAT_SPLIT, got " +
                      std::string(family_name(spec.family)));
  }
}

SingleModeState single_mode_input(const ResourceSpec& spec) {
  if (spec.family == Family::PacsSplit) return photon_added_coherent(spec.alpha(), spec.cutoff);
  return odd_cat(spec.alpha(), spec.cutoff);
}

}  // namespace

std::string_view family_name(Family family) {
  for (const auto& entry : kFamilyNames) {
    if (entry.family == family) return entry.name;
  }
  return "UNKNOWN";
}

Family parse_family(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
  for (const auto& entry : kFamilyNames) {
    if (entry.name == upper) return entry.family;
  }
  throw InvalidSpec("unknown resource family '" + std::string(name) + "'");
}

bool is_tmss_family(Family family) {
  return family != Family::PacsSplit && family != Family::OddCatSplit;
}

cplx ResourceSpec::alpha() const { return std::polar(alpha_mod, alpha_phase); }

void ResourceSpec::validate() const {
  if (cutoff < 1) throw InvalidSpec("cutoff must be >= 1");
  if (n_sub_a < 0 || n_sub_b < 0) throw InvalidSpec("subtraction counts must be >= 0");
  if (!std::isfinite(alpha_mod) || !std::isfinite(alpha_phase) || !std::isfinite(lambda)) {
    throw InvalidSpec("non-finite resource parameter");
  }
  if (is_tmss_family(family)) {
    if (alpha_mod != 0.0) throw InvalidSpec("alpha is not a parameter of TMSS families");
    if (lambda < 0.0 || lambda >= 1.0) throw InvalidSpec("lambda must lie in [0, 1)");
    if (family == Family::TmssSubA && n_sub_a < 1) {
      throw InvalidSpec("TMSS_SUB_A needs at least one subtraction on mode A");
    }
    if (family != Family::TmssSubA && n_plus_m() != 0) {
      throw InvalidSpec(std::string(family_name(family)) + " takes no subtraction counts");
    }
  } else {
    if (lambda != 0.0) throw InvalidSpec("lambda is only a parameter of TMSS families");
    if (alpha_mod < 0.0) throw InvalidSpec("alpha modulus must be >= 0");
  }
}

ResourceSpec ResourceSpec::pacs(double alpha_mod, double phase, int n_sub_a, int n_sub_b,
                                int cutoff) {
  return ResourceSpec{Family::PacsSplit, alpha_mod, phase, n_sub_a, n_sub_b, 0.0, cutoff};
}

ResourceSpec ResourceSpec::odd_cat(double alpha_mod, double phase, int n_sub_a, int n_sub_b,
                                   int cutoff) {
  return ResourceSpec{Family::OddCatSplit, alpha_mod, phase, n_sub_a, n_sub_b, 0.0, cutoff};
}

ResourceSpec ResourceSpec::tmss(Family family, double lambda, int n_sub_a, int n_sub_b,
                                int cutoff) {
  return ResourceSpec{family, 0.0, 0.0, n_sub_a, n_sub_b, lambda, cutoff};
}

std::string describe(const ResourceSpec& spec) {
  std::ostringstream os;
  os << family_name(spec.family);
  if (is_tmss_family(spec.family)) {
    os << "(lambda=" << spec.lambda;
  } else {
    os << "(|alpha|=" << spec.alpha_mod << ", phase=" << spec.alpha_phase;
  }
  os << ", n=" << spec.n_sub_a << ", m=" << spec.n_sub_b << ", cutoff=" << spec.cutoff << ")";
  return os.str();
}

NormalizationConstants NormalizationConstants::of(double alpha_mod, int n_plus_m) {
  const double a2 = alpha_mod * alpha_mod;
  const double m1 = n_plus_m + a2;
  const double n1 = m1 * m1 + a2;
  const double n2 = n_plus_m % 2 == 0 ? 2.0 * one_minus_exp_neg(2.0 * a2)
                                      : 2.0 * (1.0 + std::exp(-2.0 * a2));
  return {n1, n2, m1};
}

SingleModeState coherent(cplx alpha, int cutoff) {
  const double x = std::norm(alpha);
  if (x > cutoff / 4.0) {
    throw CutoffTooSmall("coherent amplitude |alpha|^2 = " + std::to_string(x) +
                         " needs cutoff >= " + std::to_string(static_cast<int>(std::ceil(4 * x))));
  }
  Eigen::VectorXcd amps(cutoff + 1);
  amps[0] = std::exp(-0.5 * x);
  for (int n = 1; n <= cutoff; ++n) {
    amps[n] = amps[n - 1] * alpha / std::sqrt(static_cast<double>(n));
  }
  // Poisson tail beyond the cutoff, summed term by term.
  double tail = 0.0;
  if (x > 0.0) {
    double log_term = -x + (cutoff + 1) * std::log(x) - std::lgamma(cutoff + 2.0);
    for (int n = cutoff + 1; n < cutoff + 2000; ++n) {
      const double term = std::exp(log_term);
      tail += term;
      if (term < 1e-300 || term < 1e-18 * tail) break;
      log_term += std::log(x) - std::log(n + 1.0);
    }
  }
  return SingleModeState(amps / amps.norm(), tail);
}

SingleModeState photon_added_coherent(cplx alpha, int cutoff) {
  try {
    return create(coherent(alpha, cutoff)).normalized();
  } catch (const TruncationOverflow& e) {
    throw CutoffTooSmall(std::string("photon-added coherent state: ") + e.what());
  }
}

SingleModeState odd_cat(cplx alpha, int cutoff) {
  if (alpha == cplx(0.0, 0.0)) {
    throw DegenerateState("odd cat state vanishes at alpha = 0");
  }
  const SingleModeState plus = coherent(alpha, cutoff);
  const SingleModeState minus = coherent(-alpha, cutoff);
  return SingleModeState(plus.amplitudes() - minus.amplitudes(), plus.truncation_loss())
      .normalized();
}

SingleModeState even_cat(cplx alpha, int cutoff) {
  const SingleModeState plus = coherent(alpha, cutoff);
  const SingleModeState minus = coherent(-alpha, cutoff);
  return SingleModeState(plus.amplitudes() + minus.amplitudes(), plus.truncation_loss())
      .normalized();
}

TwoModeState tmss(double lambda, int cutoff) {
  if (lambda < 0.0 || lambda >= 1.0) throw InvalidSpec("TMSS lambda must lie in [0, 1)");
  Eigen::MatrixXcd amps = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
  double coeff = std::sqrt(1.0 - lambda * lambda);
  for (int n = 0; n <= cutoff; ++n) {
    amps(n, n) = coeff;
    coeff *= lambda;
  }
  const double loss = std::pow(lambda, 2.0 * (cutoff + 1));
  return TwoModeState(amps / amps.norm(), loss);
}

SingleModeState subtracted_signal(const ResourceSpec& spec) {
  spec.validate();
  require_split_family(spec);
  SingleModeState signal = single_mode_input(spec);
  for (int i = 0; i < spec.n_plus_m(); ++i) signal = annihilate(signal);
  if (signal.norm_squared() < kZeroNormSquared) {
    throw DegenerateState("subtracted signal of " + describe(spec) + " has zero norm");
  }
  return signal.normalized();
}

TwoModeState build_resource_circuit(const ResourceSpec& spec) {
  spec.validate();
  const int c = spec.cutoff;
  switch (spec.family) {
    case Family::PacsSplit:
    case Family::OddCatSplit: {
      const TwoModeState input =
          TwoModeState::product(single_mode_input(spec), SingleModeState::fock(0, c));
      const TwoModeState split = [&] {
        try {
          return beam_splitter_50_50(input);
        } catch (const TruncationOverflow& e) {
          throw CutoffTooSmall(describe(spec) + ": " + e.what());
        }
      }();
      return normalize_or_degenerate(apply_subtractions(split, spec.n_sub_a, spec.n_sub_b),
                                     spec);
    }
    case Family::Tmss:
      return tmss(spec.lambda, c);
    case Family::TmssSubA:
      return normalize_or_degenerate(
          apply_subtractions(tmss(spec.lambda, c), spec.n_sub_a, spec.n_sub_b), spec);
    case Family::TmssAddAB: {
      const TwoModeState added = create(create(tmss(spec.lambda, c), Mode::B), Mode::A);
      return normalize_or_degenerate(added, spec);
    }
    case Family::TmssAddSubAB: {
      const TwoModeState sub = apply_subtractions(tmss(spec.lambda, c), 1, 1);
      return normalize_or_degenerate(create(create(sub, Mode::B), Mode::A), spec);
    }
  }
  throw InvalidSpec("unhandled resource family");
}

TwoModeState closed_form_unnormalized(const ResourceSpec& spec) {
  spec.validate();
  require_split_family(spec);
  const int c = spec.cutoff;
  const cplx alpha = spec.alpha();
  const cplx beta = alpha / std::sqrt(2.0);
  const double a2 = std::norm(alpha);

  if (spec.family == Family::PacsSplit) {
    if (std::norm(beta) > c / 4.0) {
      throw CutoffTooSmall("closed-form PACS resource needs a larger cutoff");
    }
    // M₁|β,0⟩|−β,0⟩ + (α/√2)(|β,1⟩|−β,0⟩ − |β,0⟩|−β,1⟩) with |β,k⟩ = D(β)|k⟩.
    const Eigen::MatrixXcd d_plus = displacement_matrix(beta, c);
    const Eigen::MatrixXcd d_minus = displacement_matrix(-beta, c);
    const Eigen::VectorXcd a0 = d_plus.col(0);
    const Eigen::VectorXcd a1 = d_plus.col(1);
    const Eigen::VectorXcd b0 = d_minus.col(0);
    const Eigen::VectorXcd b1 = d_minus.col(1);
    const double m1 = NormalizationConstants::of(spec.alpha_mod, spec.n_plus_m()).m1;
    Eigen::MatrixXcd amps = m1 * (a0 * b0.transpose()) +
                            beta * (a1 * b0.transpose() - a0 * b1.transpose());
    return TwoModeState(std::move(amps));
  }

  // Odd-cat resource in the product basis of even/odd cats at amplitude β:
  // ½[(1+E)(1−s)|e,e⟩ − (1−E)(1−s)|o,o⟩ + √(1−E²)(1+s)(|o,e⟩ − |e,o⟩)]
  // with E = e^{−|α|²} and s = (−1)^{n+m}.
  if (alpha == cplx(0.0, 0.0)) {
    throw DegenerateState("odd cat resource vanishes at alpha = 0");
  }
  const SingleModeState plus = coherent(beta, c);
  const SingleModeState minus = coherent(-beta, c);
  const double e = std::exp(-a2);
  const Eigen::VectorXcd even =
      (plus.amplitudes() + minus.amplitudes()) / std::sqrt(2.0 * (1.0 + e));
  const Eigen::VectorXcd odd =
      (plus.amplitudes() - minus.amplitudes()) / std::sqrt(2.0 * one_minus_exp_neg(a2));
  const double s = spec.n_plus_m() % 2 == 0 ? 1.0 : -1.0;
  const double cross = std::sqrt(one_minus_exp_neg(2.0 * a2));
  Eigen::MatrixXcd amps =
      0.5 * ((1.0 + e) * (1.0 - s) * (even * even.transpose()) -
             one_minus_exp_neg(a2) * (1.0 - s) * (odd * odd.transpose()) +
             cross * (1.0 + s) * (odd * even.transpose() - even * odd.transpose()));
  return TwoModeState(std::move(amps), plus.truncation_loss() + minus.truncation_loss());
}

TwoModeState build_resource_closed_form(const ResourceSpec& spec) {
  const TwoModeState raw = closed_form_unnormalized(spec);
  const auto k = NormalizationConstants::of(spec.alpha_mod, spec.n_plus_m());
  const double norm2 = spec.family == Family::PacsSplit ? k.n1 : k.n2;
  if (norm2 <= kZeroNormSquared) {
    throw DegenerateState("closed form of " + describe(spec) + " is degenerate");
  }
  return raw.scaled(1.0 / std::sqrt(norm2));
}

TwoModeState small_alpha_state(SmallAlphaKind kind, cplx alpha, int cutoff) {
  if (cutoff < 3) throw CutoffTooSmall("small-alpha expansions need cutoff >= 3");
  TwoModeState out(cutoff);
  Eigen::MatrixXcd amps = out.amplitudes();
  const double r2 = std::sqrt(2.0);
  const double r3 = std::sqrt(3.0);
  switch (kind) {
    case SmallAlphaKind::Psi1:
      amps(1, 0) = 1.0;
      amps(0, 1) = -1.0;
      amps(2, 0) = alpha;
      amps(0, 2) = alpha;
      amps(1, 1) = -r2 * alpha;
      break;
    case SmallAlphaKind::Psi1Sub:
      amps(0, 0) = 1.0;
      amps(1, 0) = r2 * alpha;
      amps(0, 1) = -r2 * alpha;
      break;
    case SmallAlphaKind::Psi2: {
      const cplx k = alpha * alpha / (2.0 * std::sqrt(6.0));
      amps(1, 0) = 1.0;
      amps(0, 1) = -1.0;
      amps(3, 0) = k;
      amps(0, 3) = -k;
      amps(2, 1) = -r3 * k;
      amps(1, 2) = r3 * k;
      break;
    }
    case SmallAlphaKind::Psi2Sub: {
      const cplx k = alpha * alpha / (2.0 * r2);
      amps(0, 0) = 1.0;
      amps(2, 0) = k;
      amps(0, 2) = k;
      amps(1, 1) = -r2 * k;
      break;
    }
  }
  return TwoModeState(std::move(amps));
}

}  // namespace cvent
