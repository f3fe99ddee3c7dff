#include "cvent/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "cvent/entanglement.hpp"
#include "cvent/epr.hpp"
#include "cvent/errors.hpp"
#include "cvent/resources.hpp"
#include "cvent/teleportation.hpp"

namespace cvent {

namespace {

const double kAlphaGrid[] = {0.05, 0.3, 0.7, 1.2, 2.0};

ValidationCheck finish(std::string name, double deviation, double tolerance,
                       std::string detail = {}) {
  ValidationCheck c;
  c.name = std::move(name);
  c.max_deviation = deviation;
  c.tolerance = tolerance;
  c.passed = std::isfinite(deviation) && deviation <= tolerance;
  c.detail = std::move(detail);
  return c;
}

template <typename Fn>
ValidationCheck guarded(const std::string& name, double tolerance, Fn&& body) {
  try {
    return body();
  } catch (const Error& e) {
    return finish(name, std::numeric_limits<double>::infinity(), tolerance, e.what());
  }
}

ResourceSpec split(bool pacs, double alpha, double phase, int k, int cutoff) {
  return pacs ? ResourceSpec::pacs(alpha, phase, k, 0, cutoff)
              : ResourceSpec::odd_cat(alpha, phase, k, 0, cutoff);
}

std::string where(bool pacs, double alpha, int k) {
  std::ostringstream os;
  os << (pacs ? "PACS_SPLIT" : "ODD_CAT_SPLIT") << " |alpha|=" << alpha << " n+m=" << k;
  return os.str();
}

}  // namespace

double phase_aligned_distance(const TwoModeState& a, const TwoModeState& b) {
  const cplx overlap = (b.amplitudes().conjugate().cwiseProduct(a.amplitudes())).sum();
  const cplx phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx(1.0, 0.0);
  return (a.amplitudes() - phase * b.amplitudes()).cwiseAbs().maxCoeff();
}

std::vector<ValidationCheck> run_validation(const ValidationOptions& options) {
  const int c = options.cutoff;
  std::vector<ValidationCheck> checks;

  checks.push_back(guarded("closed-form states vs circuit", 1e-10, [&] {
    double worst = 0.0;
    std::string at;
    for (bool pacs : {true, false}) {
      for (int k = 0; k <= 2; ++k) {
        const auto spec = split(pacs, 0.7, 0.3, k, c);
        const double d = phase_aligned_distance(build_resource_circuit(spec),
                                                build_resource_closed_form(spec));
        if (d >= worst) worst = d, at = where(pacs, 0.7, k);
      }
    }
    return finish("closed-form states vs circuit", worst, 1e-10, "worst at " + at);
  }));

  checks.push_back(guarded("entropy closed form vs partial trace", 1e-8, [&] {
    double worst = 0.0;
    std::string at;
    for (bool pacs : {true, false}) {
      for (double alpha : kAlphaGrid) {
        for (int k = 0; k <= 2; ++k) {
          const double numeric =
              entropy_numeric(build_resource_circuit(split(pacs, alpha, 0.0, k, c))).entropy_bits;
          const double closed = pacs ? entropy_psi1_closed(alpha, k).entropy_bits
                                     : entropy_psi2_closed(alpha, parity_of(k)).entropy_bits;
          const double d = std::abs(numeric - closed);
          if (d >= worst) worst = d, at = where(pacs, alpha, k);
        }
      }
    }
    return finish("entropy closed form vs partial trace", worst, 1e-8, "worst at " + at);
  }));

  checks.push_back(guarded("EPR closed form vs moments", 1e-8, [&] {
    double worst = 0.0;
    std::string at;
    for (bool pacs : {true, false}) {
      for (double alpha : kAlphaGrid) {
        for (double phase : {0.0, 0.6, 1.5707963267948966}) {
          for (int k = 0; k <= 2; ++k) {
            const double numeric =
                epr_numeric(build_resource_circuit(split(pacs, alpha, phase, k, c)))
                    .total_variance;
            const double closed =
                pacs ? epr_psi1_closed(alpha, phase, k).total_variance
                     : epr_psi2_closed(alpha, phase, parity_of(k)).total_variance;
            const double d = std::abs(numeric - closed);
            if (d >= worst) worst = d, at = where(pacs, alpha, k);
          }
        }
      }
    }
    return finish("EPR closed form vs moments", worst, 1e-8, "worst at " + at);
  }));

  checks.push_back(guarded("characteristic function closed form vs Fock space", 1e-8, [&] {
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> radius(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    auto draw = [&] { return std::polar(2.0 * std::sqrt(radius(rng)), angle(rng)); };
    double worst = 0.0;
    std::string at;
    for (bool pacs : {true, false}) {
      for (int k = 0; k <= 2; ++k) {
        const auto spec = split(pacs, 0.7, 0.4, k, c);
        const CharFn numeric = char_fn_numeric(build_resource_circuit(spec));
        const CharFn closed = pacs ? char_fn_psi1_closed(spec) : char_fn_psi2_closed(spec);
        for (int i = 0; i < options.random_arguments; ++i) {
          const cplx l2 = draw();
          const cplx l3 = draw();
          const double d = std::abs(numeric(l2, l3) - closed(l2, l3));
          if (d >= worst) worst = d, at = where(pacs, 0.7, k);
        }
      }
    }
    return finish("characteristic function closed form vs Fock space", worst, 1e-8,
                  "worst at " + at);
  }));

  checks.push_back(guarded("fidelity: quadrature vs factorized vs closed form", 1e-6, [&] {
    const auto rule = QuadratureRule::gauss_hermite(kDefaultQuadratureNodes);
    double worst = 0.0;
    std::string at;
    for (int i = 0; i < 20; ++i) {
      const double alpha = 0.05 + (2.0 - 0.05) * i / 19.0;
      for (int k = 0; k <= 2; ++k) {
        const auto spec = ResourceSpec::pacs(alpha, 0.0, k, 0, c);
        const double q = fidelity_bk(char_fn_psi1_closed(spec), rule).fidelity;
        const double e = fidelity_epr_form(subtracted_signal(spec)).fidelity;
        const double f = fidelity_psi1_closed(alpha, k).fidelity;
        const double d = std::max({std::abs(q - e), std::abs(q - f), std::abs(e - f)});
        if (d >= worst) worst = d, at = where(true, alpha, k);
      }
    }
    return finish("fidelity: quadrature vs factorized vs closed form", worst, 1e-6,
                  "worst at " + at);
  }));

  checks.push_back(guarded("vacuum calibration", 1e-8, [&] {
    const TwoModeState vacuum = TwoModeState::vacuum(c);
    const double epr = epr_numeric(vacuum).total_variance;
    const double f = fidelity_bk(char_fn_numeric(vacuum)).fidelity;
    std::ostringstream os;
    os.precision(12);
    os << "EPR=" << epr << " F=" << f;
    return finish("vacuum calibration", std::max(std::abs(epr - 1.0), std::abs(f - 0.5)), 1e-8,
                  os.str());
  }));

  checks.push_back(guarded("TMSS EPR variance vs e^{-2s}", 1e-8, [&] {
    double worst = 0.0;
    for (double lambda : {0.2, 0.462, 0.7}) {
      const double s = std::atanh(lambda);
      const double epr = epr_numeric(tmss(lambda, c)).total_variance;
      worst = std::max(worst, std::abs(epr - std::exp(-2.0 * s)));
    }
    return finish("TMSS EPR variance vs e^{-2s}", worst, 1e-8, "lambda in {0.2, 0.462, 0.7}");
  }));

  return checks;
}

}  // namespace cvent
