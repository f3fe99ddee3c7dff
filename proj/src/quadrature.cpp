#include "cvent/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include <gsl/gsl_integration.h>

#include "cvent/errors.hpp"

namespace cvent {

namespace {

QuadratureRule compute_gauss_hermite(int n) {
  // Weight |x − a|^α e^{−b(x − a)²} with a = 0, b = 1, α = 0.
  std::unique_ptr<gsl_integration_fixed_workspace, decltype(&gsl_integration_fixed_free)> ws(
      gsl_integration_fixed_alloc(gsl_integration_fixed_hermite, static_cast<size_t>(n), 0.0,
                                  1.0, 0.0, 0.0),
      &gsl_integration_fixed_free);
  if (!ws) throw InvalidSpec("GSL could not build a " + std::to_string(n) + "-node rule");
  const double* x = gsl_integration_fixed_nodes(ws.get());
  const double* w = gsl_integration_fixed_weights(ws.get());
  QuadratureRule rule;
  rule.nodes.assign(x, x + n);
  rule.weights.assign(w, w + n);
  return rule;
}

}  // namespace

QuadratureRule QuadratureRule::gauss_hermite(int n) {
  if (n < 1) throw InvalidSpec("quadrature needs at least one node");
  static std::mutex mutex;
  static std::map<int, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_hermite(n)).first;
  return it->second;
}

}  // namespace cvent
