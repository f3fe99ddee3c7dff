#pragma once

#include <random>

#include "cvent/fock.hpp"

namespace cvent::testing {

inline constexpr int kCutoffs[] = {40, 50};

// Random normalized state supported on photon numbers ≤ support.
inline SingleModeState random_single(std::mt19937_64& rng, int cutoff, int support) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(cutoff + 1);
  for (int n = 0; n <= support; ++n) v[n] = cplx(g(rng), g(rng));
  return SingleModeState(v / v.norm());
}

// Random normalized two-mode state with n_A + n_B ≤ total.
inline TwoModeState random_two_mode(std::mt19937_64& rng, int cutoff, int total) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
  for (int a = 0; a <= total; ++a) {
    for (int b = 0; a + b <= total; ++b) m(a, b) = cplx(g(rng), g(rng));
  }
  return TwoModeState(m / m.norm());
}

inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace cvent::testing
