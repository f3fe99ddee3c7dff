// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cvent/entanglement.hpp"
#include "cvent/epr.hpp"
#include "cvent/errors.hpp"
#include "cvent/sweep.hpp"
#include "cvent/table_one.hpp"
#include "cvent/teleportation.hpp"
#include "cvent/thresholds.hpp"
#include "cvent/validation.hpp"

using namespace cvent;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int run(int id, const char* title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  o.detail.precision(10);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s %d %s (%.1f s)%s\n", o.pass ? "PASS" : "FAIL", id, title, secs,
              o.detail.str().c_str());
  std::fflush(stdout);
  return o.pass ? 0 : 1;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

const QuadratureRule& rule() {
  static const QuadratureRule r = QuadratureRule::gauss_hermite(kDefaultQuadratureNodes);
  return r;
}

void check_thresholds(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const struct {
    ThresholdKind kind;
    double target;
  } cases[] = {{ThresholdKind::FidelityClassical, 0.686},
               {ThresholdKind::FidelityCrossover, 0.963},
               {ThresholdKind::EprCrossover, 1.454}};
  for (const auto& c : cases) {
    const auto r = threshold_scan(c.kind);
    o.detail << ' ' << threshold_name(c.kind) << '=' << r.alpha;
    o.require(std::abs(r.alpha - c.target) <= 0.005, std::string(threshold_name(c.kind)));
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(secs < 60.0, "runtime under 60 s");
}

void check_limits(Outcome& o) {
  const double tiny = 1e-6;
  const double s0_closed = entropy_psi1_closed(tiny, 0).entropy_bits;
  const double s0 = entropy_numeric(build_resource_circuit(ResourceSpec::pacs(tiny, 0.0, 0)))
                        .entropy_bits;
  const double s1 = entropy_numeric(build_resource_circuit(ResourceSpec::pacs(tiny, 0.0, 1)))
                        .entropy_bits;
  const double s1_closed = entropy_psi1_closed(tiny, 1).entropy_bits;
  o.detail << " S0=" << s0 << " S1=" << s1;
  o.require(std::abs(s0 - 1.0) <= 1e-4 && std::abs(s0_closed - 1.0) <= 1e-4, "entropy(n+m=0)");
  o.require(s1 <= 1e-3 && s1_closed <= 1e-3, "entropy(n+m=1)");

  const auto spec0 = ResourceSpec::pacs(tiny, 0.0, 0);
  const double f0 = fidelity_bk(char_fn_psi1_closed(spec0), rule()).fidelity;
  const double f0_epr = fidelity_epr_form(subtracted_signal(spec0)).fidelity;
  o.detail << " F0=" << f0;
  o.require(std::abs(f0 - 0.25) <= 1e-4 && std::abs(f0_epr - 0.25) <= 1e-4, "F(n+m=0)");

  const auto spec1 = ResourceSpec::pacs(1e-3, 0.0, 1);
  const double f1 = fidelity_bk(char_fn_psi1_closed(spec1), rule()).fidelity;
  const double f1_closed = fidelity_psi1_closed(1e-3, 1).fidelity;
  o.detail << " F1(1e-3)-0.5=" << f1 - 0.5;
  o.require(f1 > 0.5 && f1 <= 0.501 && f1_closed > 0.5 && f1_closed <= 0.501, "F(n+m=1)");
}

void check_even_cat(Outcome& o) {
  double worst = 0.0;
  for (int i = 1; i <= 300; ++i) {
    const double alpha = 0.01 * i;
    worst = std::max(worst, std::abs(entropy_psi2_closed(alpha, Parity::Even).entropy_bits - 1.0));
    if (i % 10 == 0) {
      for (int k : {0, 2}) {
        const auto r = build_resource_circuit(ResourceSpec::odd_cat(alpha, 0.0, k));
        worst = std::max(worst, std::abs(entropy_numeric(r).entropy_bits - 1.0));
      }
    }
  }
  o.detail << " max |S-1|=" << worst;
  o.require(worst <= 1e-10, "entropy exactly one bit");
}

void check_triple_route(Outcome& o) {
  double worst = 0.0;
  int points = 0;
  for (int i = 0; i < 20; ++i) {
    const double alpha = 0.05 + (2.0 - 0.05) * i / 19.0;
    for (int k = 0; k <= 2; ++k) {
      const auto spec = ResourceSpec::pacs(alpha, 0.0, k);
      const double q = fidelity_bk(char_fn_psi1_closed(spec), rule()).fidelity;
      const double e = fidelity_epr_form(subtracted_signal(spec)).fidelity;
      const double f = fidelity_psi1_closed(alpha, k).fidelity;
      worst = std::max({worst, std::abs(q - e), std::abs(q - f), std::abs(e - f)});
      ++points;
    }
  }
  o.detail << ' ' << points << " points, max spread=" << worst;
  o.require(points == 60 && worst <= 1e-6, "routes agree");
}

void check_closed_vs_numeric(Outcome& o) {
  double entropy_dev = 0.0, epr_dev = 0.0;
  for (bool pacs : {true, false}) {
    for (int i = 1; i <= 12; ++i) {
      const double alpha = 0.25 * i;
      for (double phase : {0.0, 0.7, std::numbers::pi / 2}) {
        for (int k = 0; k <= 3; ++k) {
          const auto spec = pacs ? ResourceSpec::pacs(alpha, phase, k)
                                 : ResourceSpec::odd_cat(alpha, phase, k);
          const auto state = build_resource_circuit(spec);
          const double s = pacs ? entropy_psi1_closed(alpha, k).entropy_bits
                                : entropy_psi2_closed(alpha, parity_of(k)).entropy_bits;
          const double v = pacs ? epr_psi1_closed(alpha, phase, k).total_variance
                                : epr_psi2_closed(alpha, phase, parity_of(k)).total_variance;
          entropy_dev = std::max(entropy_dev, std::abs(entropy_numeric(state).entropy_bits - s));
          epr_dev = std::max(epr_dev, std::abs(epr_numeric(state).total_variance - v));
        }
      }
    }
  }
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto point = [&] { return std::polar(2.0 * std::sqrt(u(rng)), 2 * std::numbers::pi * u(rng)); };
  double char_dev = 0.0;
  for (bool pacs : {true, false}) {
    for (int k = 0; k <= 2; ++k) {
      const auto spec = pacs ? ResourceSpec::pacs(0.7, 0.5, k) : ResourceSpec::odd_cat(0.7, 0.5, k);
      const auto numeric = char_fn_numeric(build_resource_circuit(spec));
      const auto closed = pacs ? char_fn_psi1_closed(spec) : char_fn_psi2_closed(spec);
      for (int i = 0; i < 50; ++i) {
        const cplx l2 = point(), l3 = point();
        char_dev = std::max(char_dev, std::abs(numeric(l2, l3) - closed(l2, l3)));
      }
    }
  }
  o.detail << " entropy=" << entropy_dev << " epr=" << epr_dev << " charfn=" << char_dev;
  o.require(entropy_dev <= 1e-8, "entropy");
  o.require(epr_dev <= 1e-8, "EPR");
  o.require(char_dev <= 1e-8, "characteristic function");
}

void check_calibration(Outcome& o) {
  const auto vac = TwoModeState::vacuum(kDefaultCutoff);
  const double v = epr_numeric(vac).total_variance;
  const double f = fidelity_bk(char_fn_numeric(vac)).fidelity;
  o.detail << " vacuum EPR=" << v << " F=" << f;
  o.require(std::abs(v - 1.0) <= 1e-8 && std::abs(f - 0.5) <= 1e-8, "vacuum");
  for (double lambda : {0.2, 0.462, 0.7}) {
    const double expected = std::exp(-2.0 * std::atanh(lambda));
    const double got = epr_numeric(tmss(lambda, kDefaultCutoff)).total_variance;
    o.require(std::abs(got - expected) <= 1e-8, "TMSS lambda=" + std::to_string(lambda));
  }
}

void check_table_one(Outcome& o) {
  const auto rows = classify_table_one();
  struct Expect {
    FidelityClass cls;
    bool entangled, epr;
  };
  const Expect expected[] = {{FidelityClass::AboveHalf, true, false},
                             {FidelityClass::AboveHalf, true, false},
                             {FidelityClass::BelowHalf, true, true},
                             {FidelityClass::BelowHalf, true, false},
                             {FidelityClass::BelowHalf, false, false},
                             {FidelityClass::AboveHalf, true, true},
                             {FidelityClass::AboveHalf, true, false}};
  o.require(rows.size() == std::size(expected), "row count");
  for (std::size_t i = 0; i < rows.size() && i < std::size(expected); ++i) {
    const auto& r = rows[i];
    const bool ok = r.fidelity_class == expected[i].cls && r.entangled == expected[i].entangled &&
                    r.epr_second_order == expected[i].epr;
    o.require(ok, r.state_label);
  }
  if (rows.size() > 2) {
    o.detail << " a^dag b^dag|TMSS>: F=" << rows[0].fidelity << " V=" << rows[0].epr_variance
             << "; a|TMSS>: F=" << rows[2].fidelity << " V=" << rows[2].epr_variance;
  }
}

void check_conjunction(Outcome& o) {
  const double alpha = 0.05;
  const auto s0 = build_resource_circuit(ResourceSpec::pacs(alpha, 0.0, 0));
  const auto s1 = build_resource_circuit(ResourceSpec::pacs(alpha, 0.0, 1));
  const double e0 = entropy_numeric(s0).entropy_bits, e1 = entropy_numeric(s1).entropy_bits;
  const double v0 = epr_numeric(s0).total_variance, v1 = epr_numeric(s1).total_variance;
  const double f0 = fidelity_bk(char_fn_numeric(s0)).fidelity;
  const double f1 = fidelity_bk(char_fn_numeric(s1)).fidelity;
  o.detail << " S: " << e0 << "->" << e1 << " V: " << v0 << "->" << v1 << " F: " << f0 << "->"
           << f1;
  o.require(e1 < e0 && v1 < v0 && v1 < 1.0 && f1 > f0 && f1 > 0.5, "conjunction");
}

void check_properties_at(int c, Outcome& o) {
  const std::string at = " cutoff " + std::to_string(c);
  std::mt19937_64 rng(1000 + c);
  std::normal_distribution<double> g;
  auto random_two_mode = [&](int total) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(c + 1, c + 1);
    for (int a = 0; a <= total; ++a)
      for (int b = 0; a + b <= total; ++b) m(a, b) = cplx(g(rng), g(rng));
    return TwoModeState(m / m.norm());
  };

  // Unitarity of the beam splitter and the displacement matrix.
  const auto x = random_two_mode(c), y = random_two_mode(c);
  const cplx before = (x.amplitudes().conjugate().cwiseProduct(y.amplitudes())).sum();
  const auto bx = beam_splitter_50_50(x), by = beam_splitter_50_50(y);
  const cplx after = (bx.amplitudes().conjugate().cwiseProduct(by.amplitudes())).sum();
  o.require(std::abs(before - after) < 1e-11 && std::abs(bx.norm_squared() - 1.0) < 1e-11,
            "beam splitter unitarity" + at);
  const cplx d_amp(0.9, -0.4);
  const auto d = displacement_matrix(d_amp, c);
  o.require(max_abs(d.adjoint() - displacement_matrix(-d_amp, c)) < 1e-13,
            "displacement adjoint" + at);
  const Eigen::MatrixXcd dd = d * displacement_matrix(-d_amp, c);
  o.require(max_abs(dd.topLeftCorner(8, 8) - Eigen::MatrixXcd::Identity(8, 8)) < 1e-12,
            "displacement inverse" + at);

  // [a, a†] = 1 below the cutoff.
  const auto phi = random_two_mode(c - 2);
  for (Mode m : {Mode::A, Mode::B}) {
    const Eigen::MatrixXcd comm = annihilate(create(phi, m), m).amplitudes() -
                                  create(annihilate(phi, m), m).amplitudes();
    o.require(max_abs(comm - phi.amplitudes()) < 1e-12, "ladder commutator" + at);
  }

  // a^n b^m B|ψ,0⟩ = (−1)^m 2^{−(n+m)/2} B a^{n+m}|ψ,0⟩ for n+m ≤ 4.
  const auto input =
      TwoModeState::product(photon_added_coherent(cplx(0.6, 0.3), c), SingleModeState::fock(0, c));
  const auto split = beam_splitter_50_50(input);
  double commuting = 0.0;
  for (int n = 0; n <= 4; ++n) {
    for (int m = 0; n + m <= 4; ++m) {
      TwoModeState lhs = split;
      for (int i = 0; i < n; ++i) lhs = annihilate(lhs, Mode::A);
      for (int i = 0; i < m; ++i) lhs = annihilate(lhs, Mode::B);
      TwoModeState rhs = input;
      for (int i = 0; i < n + m; ++i) rhs = annihilate(rhs, Mode::A);
      const double factor = (m % 2 ? -1.0 : 1.0) * std::pow(std::sqrt(0.5), n + m);
      commuting = std::max(
          commuting, max_abs(lhs.amplitudes() - beam_splitter_50_50(rhs).scaled(factor).amplitudes()));
    }
  }
  o.require(commuting < 1e-12, "commuting identity" + at);

  // Cat resources keep photon-number parity.
  for (int k = 0; k <= 3; ++k) {
    const auto r = build_resource_circuit(ResourceSpec::odd_cat(1.3, 0.2, k, 0, c));
    double wrong = 0.0;
    for (int a = 0; a <= c; ++a)
      for (int b = 0; b <= c; ++b)
        if ((a + b) % 2 != (1 + k) % 2) wrong = std::max(wrong, std::abs(r(a, b)));
    o.require(wrong == 0.0, "cat parity" + at);
  }

  // Both partial traces share one spectrum.
  for (const auto& spec : {ResourceSpec::pacs(1.4, 0.3, 2, 0, c),
                           ResourceSpec::odd_cat(1.4, 0.3, 1, 0, c)}) {
    const auto r = build_resource_circuit(spec);
    const Eigen::VectorXd ea = partial_trace(r, Mode::A).eigenvalues();
    const Eigen::VectorXd eb = partial_trace(r, Mode::B).eigenvalues();
    o.require((ea - eb).cwiseAbs().maxCoeff() < 1e-12, "Schmidt symmetry" + at);
  }

  // CSV determinism, serial and threaded.
  SweepSpec s;
  s.alpha_min = 0.2;
  s.alpha_max = 1.0;
  s.alpha_step = 0.4;
  s.subtraction_totals = {0, 1};
  s.cutoff = c;
  const std::string first = to_csv(run_sweep(s, 1));
  o.require(first == to_csv(run_sweep(s, 1)) && first == to_csv(run_sweep(s, 2)),
            "CSV determinism" + at);
}

void check_properties(Outcome& o) {
  check_properties_at(40, o);
  check_properties_at(50, o);
  // Stability between the two cutoffs.
  double shift = 0.0;
  for (bool pacs : {true, false}) {
    for (int k = 0; k <= 2; ++k) {
      auto metrics = [&](int c) {
        const auto spec = pacs ? ResourceSpec::pacs(1.5, 0.4, k, 0, c)
                               : ResourceSpec::odd_cat(1.5, 0.4, k, 0, c);
        const auto st = build_resource_circuit(spec);
        return std::pair{entropy_numeric(st).entropy_bits, epr_numeric(st).total_variance};
      };
      const auto [s40, v40] = metrics(40);
      const auto [s50, v50] = metrics(50);
      shift = std::max({shift, std::abs(s40 - s50), std::abs(v40 - v50)});
    }
  }
  o.detail << " 40->50 metric shift=" << shift;
  o.require(shift < kConvergenceTolerance, "stable at cutoff 50");
}

}  // namespace

int main() {
  int failures = 0;
  failures += run(1, "threshold reproduction", check_thresholds);
  failures += run(2, "limit behavior at vanishing amplitude", check_limits);
  failures += run(3, "even-parity cat entropy is one bit", check_even_cat);
  failures += run(4, "three fidelity routes agree", check_triple_route);
  failures += run(5, "closed forms agree with Fock-space numerics", check_closed_vs_numeric);
  failures += run(6, "calibration anchors", check_calibration);
  failures += run(7, "reference classification", check_table_one);
  failures += run(8, "subtraction lowers entropy yet improves EPR and fidelity", check_conjunction);
  failures += run(9, "property suites at cutoffs 40 and 50", check_properties);
  std::printf("%d of 9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
