#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cvent/entanglement.hpp"
#include "cvent/epr.hpp"
#include "cvent/errors.hpp"
#include "cvent/sweep.hpp"
#include "cvent/table_one.hpp"
#include "cvent/teleportation.hpp"
#include "cvent/validation.hpp"

using namespace cvent;

namespace {

SweepSpec small_spec() {
  SweepSpec s;
  s.family = Family::PacsSplit;
  s.alpha_min = 0.1;
  s.alpha_max = 0.5;
  s.alpha_step = 0.2;
  s.subtraction_totals = {0, 1};
  return s;
}

}  // namespace

TEST_CASE("config files") {
  std::istringstream in(
      "# comment line\n"
      "family = odd_cat_split\n"
      "alpha-min=0.5   # trailing comment\n"
      "Alpha-Max = 1.5\n"
      "\n"
      "alpha-step=0.25\n"
      "nm=0, 1,2\n"
      "phase=auto\n"
      "metrics=entropy,epr\n");
  const auto cfg = parse_config(in);
  SweepSpec s;
  apply_config(s, cfg);
  CHECK(s.family == Family::OddCatSplit);
  CHECK(s.alpha_min == 0.5);
  CHECK(s.alpha_max == 1.5);
  CHECK(s.subtraction_totals == std::vector<int>{0, 1, 2});
  CHECK(s.auto_phase());
  CHECK(s.wants(Metric::Epr));
  CHECK_FALSE(s.wants(Metric::Fidelity));
  CHECK(s.alpha_grid().size() == 5);

  std::istringstream bad("alpha-min 0.5\n");
  CHECK_THROWS_AS(parse_config(bad), InvalidSpec);
  SweepSpec t;
  CHECK_THROWS_AS(apply_config(t, {{"colour", "blue"}}), InvalidSpec);
  CHECK_THROWS_AS(apply_config(t, {{"cutoff", "forty"}}), InvalidSpec);
  CHECK_THROWS_AS(apply_config(t, {{"metrics", "entropy,purity"}}), InvalidSpec);
  CHECK_THROWS_AS(parse_fidelity_route("exact"), InvalidSpec);
}

TEST_CASE("sweep spec validation") {
  SweepSpec s = small_spec();
  CHECK_NOTHROW(s.validate());
  s.alpha_step = 0.0;
  CHECK_THROWS_AS(s.validate(), InvalidSpec);
  s = small_spec();
  s.alpha_max = 0.05;
  CHECK_THROWS_AS(s.validate(), InvalidSpec);
  s = small_spec();
  s.alpha_min = -0.1;
  CHECK_THROWS_AS(s.validate(), InvalidSpec);
  s = small_spec();
  s.family = Family::TmssSubA;
  s.alpha_min = 0.1;
  s.alpha_max = 0.3;
  CHECK_THROWS_AS(s.validate(), InvalidSpec);  // n+m = 0 is not a subtraction
  s.subtraction_totals = {1};
  CHECK_NOTHROW(s.validate());
  s.alpha_max = 1.0;
  CHECK_THROWS_AS(s.validate(), InvalidSpec);
}

TEST_CASE("alpha grid endpoints") {
  SweepSpec s;
  s.alpha_min = 0.0;
  s.alpha_max = 3.0;
  s.alpha_step = 0.1;
  const auto g = s.alpha_grid();
  CHECK(g.size() == 31);
  CHECK(g.back() == doctest::Approx(3.0));
  s.alpha_min = s.alpha_max = 0.7;
  CHECK(s.alpha_grid() == std::vector<double>{0.7});
}

TEST_CASE("number formatting") {
  CHECK(format_real(0.5) == "0.5");
  CHECK(format_real(1.0 / 3.0) == "0.333333333333");
  CHECK(format_real(2.0 / 3.0 * 1e-20) == "6.66666666667e-21");
  CHECK(format_real(-0.0) == "0");
  CHECK(format_real(std::nan("")) == "nan");
  CHECK(format_real(40.0) == "40");
}

TEST_CASE("single-point sweep") {
  SweepSpec s = small_spec();
  s.alpha_min = s.alpha_max = 0.3;
  s.subtraction_totals = {1};
  s.phases = {0.0};
  const auto rows = run_sweep(s, 1);
  REQUIRE(rows.size() == 1);
  const auto& r = rows[0];
  CHECK(r.converged);
  CHECK(*r.entropy_bits == doctest::Approx(entropy_psi1_closed(0.3, 1).entropy_bits));
  CHECK(*r.epr_variance == doctest::Approx(epr_psi1_closed(0.3, 0.0, 1).total_variance));
  CHECK(*r.fidelity == doctest::Approx(fidelity_psi1_closed(0.3, 1).fidelity));
  const std::string csv = to_csv(rows);
  CHECK(csv.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(csv.find("PACS_SPLIT,0.3,0,1,") != std::string::npos);
}

TEST_CASE("rows are ordered by alpha, then n+m, then phase") {
  SweepSpec s = small_spec();
  s.phases = {0.0, 1.0};
  s.metrics = {Metric::Epr};
  const auto rows = run_sweep(s, 2);
  REQUIRE(rows.size() == 3 * 2 * 2);
  CHECK(rows[0].alpha_mod == doctest::Approx(0.1));
  CHECK(rows[1].phase == 1.0);
  CHECK(rows[2].n_plus_m == 1);
  CHECK(rows[4].alpha_mod == doctest::Approx(0.3));
  CHECK_FALSE(rows[0].entropy_bits.has_value());
  CHECK(to_csv(rows).find(",,") != std::string::npos);
}

TEST_CASE("sweeps are deterministic and independent of the thread count") {
  SweepSpec s = small_spec();
  const std::string serial = to_csv(run_sweep(s, 1));
  CHECK(to_csv(run_sweep(s, 1)) == serial);
  CHECK(to_csv(run_sweep(s, 3)) == serial);
  s.cutoff = 50;
  const std::string larger = to_csv(run_sweep(s, 2));
  CHECK(larger != serial);  // the cutoff column differs
  CHECK(larger == to_csv(run_sweep(s, 1)));
}

TEST_CASE("row failures stay in band") {
  // a²a†|0⟩ = 0: the photon-added resource vanishes at α = 0 after two subtractions.
  SweepSpec p;
  p.alpha_min = p.alpha_max = 0.0;
  p.subtraction_totals = {0, 2};
  const auto pacs_rows = run_sweep(p, 1);
  CHECK(pacs_rows[0].converged);
  CHECK_FALSE(pacs_rows[1].converged);

  SweepSpec s;
  s.family = Family::OddCatSplit;
  s.alpha_min = 0.0;
  s.alpha_max = 0.5;
  s.alpha_step = 0.5;
  s.subtraction_totals = {0};
  const auto rows = run_sweep(s, 1);
  REQUIRE(rows.size() == 2);
  CHECK_FALSE(rows[0].converged);
  CHECK_FALSE(rows[0].failure.empty());
  CHECK(std::isnan(*rows[0].entropy_bits));
  CHECK(rows[1].converged);
  CHECK(to_csv(rows).find("ODD_CAT_SPLIT,0,0,0,nan,nan,nan,40,0,false") != std::string::npos);
}

TEST_CASE("automatic phase follows the requested metric") {
  SweepSpec s;
  s.family = Family::OddCatSplit;
  s.alpha_min = s.alpha_max = 0.8;
  s.subtraction_totals = {1};
  s.metrics = {Metric::Epr};
  const auto rows = run_sweep(s, 1);
  CHECK(rows[0].phase == doctest::Approx(std::numbers::pi / 2).epsilon(1e-8));
  s.family = Family::PacsSplit;
  s.metrics = {Metric::Fidelity};
  CHECK(run_sweep(s, 1)[0].phase == 0.0);
}

TEST_CASE("entropy sweep of the photon-added resource matches the closed form") {
  SweepSpec s;
  s.alpha_min = 0.25;
  s.alpha_max = 3.0;
  s.alpha_step = 0.25;
  s.subtraction_totals = {0, 1, 2};
  s.metrics = {Metric::Entropy};
  for (const auto& r : run_sweep(s)) {
    CAPTURE(r.alpha_mod);
    CHECK(r.converged);
    CHECK(std::abs(*r.entropy_bits - entropy_psi1_closed(r.alpha_mod, r.n_plus_m).entropy_bits) <
          1e-8);
  }
}

TEST_CASE("even-parity cat rows never fall below the vacuum variance") {
  SweepSpec s;
  s.family = Family::OddCatSplit;
  s.alpha_min = 0.1;
  s.alpha_max = 2.5;
  s.alpha_step = 0.3;
  s.subtraction_totals = {0, 2};
  s.metrics = {Metric::Epr};
  for (const auto& r : run_sweep(s)) CHECK(*r.epr_variance >= 1.0);
}

TEST_CASE("TMSS sweeps use lambda in the alpha column") {
  SweepSpec s;
  s.family = Family::Tmss;
  s.alpha_min = 0.3;
  s.alpha_max = 0.3;
  s.metrics = {Metric::Epr, Metric::Fidelity};
  const auto r = run_sweep(s, 1).at(0);
  CHECK(*r.epr_variance == doctest::Approx(0.7 / 1.3));
  CHECK(*r.fidelity == doctest::Approx(0.65));
}

TEST_CASE("gnuplot script") {
  SweepSpec s = small_spec();
  s.metrics = {Metric::Entropy, Metric::Fidelity};
  const auto g = gnuplot_script(s, "out.csv");
  CHECK(g.find("set multiplot layout 2,1") != std::string::npos);
  CHECK(g.find("'out.csv' using 2:(strcol(4) eq k ? $5") != std::string::npos);
  CHECK(g.find("$7") != std::string::npos);
  CHECK(g.find("$6") == std::string::npos);
}

TEST_CASE("reference classification") {
  const auto rows = classify_table_one();
  REQUIRE(rows.size() == 7);
  struct Expect {
    FidelityClass cls;
    bool entangled;
    bool epr;
  };
  const Expect expected[] = {
      {FidelityClass::AboveHalf, true, false},  // a†b†|TMSS⟩, λ = 0.3
      {FidelityClass::AboveHalf, true, false},  // a†b†ab|TMSS⟩, λ = 0.2
      {FidelityClass::BelowHalf, true, true},   // a|TMSS⟩, λ = 0.38
      {FidelityClass::BelowHalf, true, false},  // odd cat split, n+m = 0
      {FidelityClass::BelowHalf, false, false}, // |0,0⟩
      {FidelityClass::AboveHalf, true, true},   // |TMSS⟩
      {FidelityClass::AboveHalf, true, false},  // photon-added split, n+m = 0
  };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CAPTURE(rows[i].state_label);
    CHECK(rows[i].fidelity_class == expected[i].cls);
    CHECK(rows[i].entangled == expected[i].entangled);
    CHECK(rows[i].epr_second_order == expected[i].epr);
    // Separable pure states carry no EPR correlation.
    if (!rows[i].entangled) CHECK_FALSE(rows[i].epr_second_order);
  }
  CHECK(rows[4].boundary);
  CHECK(rows[4].fidelity == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("a†b†ab|TMSS⟩ shows EPR correlation at lambda = 0.3") {
  // Documented deviation: the no-EPR window of this state ends below 0.3.
  const auto r = classify("a^dag b^dag a b |TMSS>, lambda=0.3",
                          ResourceSpec::tmss(Family::TmssAddSubAB, 0.3));
  CHECK(r.epr_variance == doctest::Approx(0.742).epsilon(1e-3));
  CHECK(r.epr_second_order);
  CHECK(r.fidelity_class == FidelityClass::AboveHalf);
}

TEST_CASE("single subtraction from TMSS at weak squeezing") {
  for (double lambda : {0.1, 0.2}) {
    const auto sub = classify("a|TMSS>", ResourceSpec::tmss(Family::TmssSubA, lambda, 1));
    const auto base = classify("|TMSS>", ResourceSpec::tmss(Family::Tmss, lambda));
    CHECK(sub.entropy_bits > base.entropy_bits);
    CHECK(sub.fidelity < base.fidelity);
    CHECK(sub.epr_variance > base.epr_variance);
  }
}

TEST_CASE("cross-validation suite") {
  for (int cutoff : {40, 50}) {
    ValidationOptions o;
    o.cutoff = cutoff;
    for (const auto& c : run_validation(o)) {
      CAPTURE(c.name);
      CAPTURE(c.detail);
      CHECK(c.passed);
    }
  }
}
