#include "cvent/epr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cvent/errors.hpp"

namespace cvent {

namespace {

constexpr double kImagResidue = 1e-8;
constexpr int kScanPoints = 360;
constexpr double kPhaseTolerance = 1e-8;
constexpr double kFlatBand = 1e-12;

double wrap_phase(double phase) {
  constexpr double pi = std::numbers::pi;
  double w = std::fmod(phase, pi);
  if (w < 0.0) w += pi;
  // fmod can land exactly on π after rounding.
  if (w >= pi) w -= pi;
  return w;
}

}  // namespace

EprResult make_epr_result(double total_variance, double phase, EprMethod method) {
  EprResult r;
  r.total_variance = total_variance;
  r.phase_used = phase;
  r.correlated = total_variance < 1.0;
  r.boundary = std::abs(total_variance - 1.0) <= kEprBoundaryBand;
  r.method = method;
  return r;
}

EprResult epr_numeric(const TwoModeState& state, double phase_used) {
  const MomentSet m = moments(state);
  const cplx shift = m.mean_a - std::conj(m.mean_b);
  const cplx value =
      1.0 + (m.n_a + m.n_b - m.ab - m.a_dag_b_dag) - shift * std::conj(shift);
  if (std::abs(value.imag()) > kImagResidue) {
    throw NumericalInstability("EPR variance has imaginary residue " +
                               std::to_string(value.imag()));
  }
  return make_epr_result(value.real(), phase_used, EprMethod::Numeric);
}

EprResult epr_psi1_closed(double alpha_mod, double phase, int n_plus_m) {
  const auto k = NormalizationConstants::of(alpha_mod, n_plus_m);
  if (k.n1 == 0.0) return make_epr_result(2.0, phase, EprMethod::ClosedForm);
  const double a2 = alpha_mod * alpha_mod;
  const double c2 = std::cos(2.0 * phase);
  const double c1 = std::cos(phase);
  const double value = 1.0 + a2 * ((k.m1 + 1.0) * (k.m1 + 1.0) + a2) * (1.0 + c2) / k.n1 -
                       a2 * c2 / k.n1 -
                       2.0 * a2 * (k.n1 + k.m1) * (k.n1 + k.m1) * c1 * c1 / (k.n1 * k.n1);
  return make_epr_result(value, phase, EprMethod::ClosedForm);
}

EprResult epr_psi2_closed(double alpha_mod, double phase, Parity parity) {
  if (alpha_mod == 0.0) {
    throw DegenerateState("odd cat resource vanishes at alpha = 0");
  }
  const double a2 = alpha_mod * alpha_mod;
  const double e2 = std::exp(-2.0 * a2);
  const double ratio = parity == Parity::Even ? (1.0 + e2) / -std::expm1(-2.0 * a2)
                                              : (1.0 - e2) / (1.0 + e2);
  const double value = 1.0 + a2 * (ratio + std::cos(2.0 * phase));
  return make_epr_result(value, phase, EprMethod::ClosedForm);
}

PhaseOptimum optimize_phase(const std::function<double(double)>& metric, Goal goal) {
  constexpr double pi = std::numbers::pi;
  const double step = pi / kScanPoints;
  // Work on a minimization problem throughout.
  const double sign = goal == Goal::Minimize ? 1.0 : -1.0;
  auto f = [&](double phi) { return sign * metric(phi); };

  int best = 0;
  double best_val = f(0.0);
  double worst_val = best_val;
  for (int i = 1; i < kScanPoints; ++i) {
    const double v = f(i * step);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
    worst_val = std::max(worst_val, v);
  }
  if (worst_val - best_val <= kFlatBand) {
    return {0.0, sign * best_val, true};
  }

  // Golden-section search on [φ_best − step, φ_best + step].
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best * step - step;
  double hi = best * step + step;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > kPhaseTolerance) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  double phase = 0.5 * (lo + hi);
  double value = f(phase);
  // Keep the grid point unless refinement gains more than rounding noise.
  if (best_val <= value + 1e-14 * std::max(1.0, std::abs(value))) {
    phase = best * step;
    value = best_val;
  }
  return {wrap_phase(phase), sign * value, false};
}

}  // namespace cvent
