#pragma once

#include <vector>

namespace cvent {

// Gauss–Hermite rule for ∫ e^{−x²} f(x) dx on the real line. Two-dimensional
// integrals over the complex plane use its tensor product, which carries the
// weight e^{−|λ|²}.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int size() const { return static_cast<int>(nodes.size()); }
  QuadratureRule doubled() const { return gauss_hermite(2 * size()); }

  static QuadratureRule gauss_hermite(int n);
};

inline constexpr int kDefaultQuadratureNodes = 80;

}  // namespace cvent
