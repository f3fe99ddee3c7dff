#include "cvent/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cvent/errors.hpp"

namespace cvent {

namespace {

constexpr double kEigenvalueFloor = -1e-10;

EntropyResult closed_result(double lo, double hi) {
  const std::vector<double> eig{lo, hi};
  return {entropy_bits_from_eigenvalues(eig), eig, EntropyMethod::ClosedForm};
}

}  // namespace

double entropy_bits_from_eigenvalues(std::span<const double> eigenvalues) {
  double sum = 0.0;
  for (double lam : eigenvalues) {
    if (lam < kEigenvalueFloor) {
      throw NumericalInstability("reduced state has eigenvalue " + std::to_string(lam));
    }
    if (lam <= 0.0) continue;
    sum -= lam * std::log2(lam);
  }
  // Rounding on an eigenvalue near one can leave a tiny negative sum.
  return std::max(sum, 0.0);
}

EntropyResult entropy_numeric(const TwoModeState& state) {
  const Eigen::VectorXd eig = partial_trace(state, Mode::A).eigenvalues();
  EntropyResult out;
  out.method = EntropyMethod::Numeric;
  out.eigenvalues.assign(eig.data(), eig.data() + eig.size());
  out.entropy_bits = entropy_bits_from_eigenvalues(out.eigenvalues);
  return out;
}

EntropyResult entropy_psi1_closed(double alpha_mod, int n_plus_m) {
  const auto k = NormalizationConstants::of(alpha_mod, n_plus_m);
  if (k.n1 == 0.0) return closed_result(0.5, 0.5);
  const double a2 = alpha_mod * alpha_mod;
  // Matrix entries without the 1/(2N₁) prefactor; the phase of α drops out
  // of the eigenvalues.
  const double p = a2 + 2.0 * k.m1 * k.m1;
  const double q = a2;
  const double off2 = 2.0 * a2 * k.m1 * k.m1;
  const double scale = 1.0 / (2.0 * k.n1);
  const double tr = p + q;
  const double hi = 0.5 * (tr + std::sqrt((p - q) * (p - q) + 4.0 * off2));
  // det/hi avoids cancellation in the small eigenvalue.
  const double det = p * q - off2;
  const double lo = hi > 0.0 ? det / hi : 0.0;
  return closed_result(lo * scale, hi * scale);
}

EntropyResult entropy_psi2_closed(double alpha_mod, Parity parity) {
  if (alpha_mod == 0.0) {
    throw DegenerateState("odd cat resource vanishes at alpha = 0");
  }
  const double a2 = alpha_mod * alpha_mod;
  const double e = std::exp(-a2);
  const double one_minus_e = -std::expm1(-a2);
  const double s = parity == Parity::Even ? 1.0 : -1.0;
  const double n2 = NormalizationConstants::of(alpha_mod, parity == Parity::Even ? 0 : 1).n2;
  const double plus = (1.0 + e) * (s > 0 ? one_minus_e : 1.0 + e);
  const double minus = one_minus_e * (s > 0 ? 1.0 + e : one_minus_e);
  return closed_result(std::min(plus, minus) / n2, std::max(plus, minus) / n2);
}

}  // namespace cvent
