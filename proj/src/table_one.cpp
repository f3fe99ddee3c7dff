#include "cvent/table_one.hpp"

#include <cmath>

#include "cvent/entanglement.hpp"
#include "cvent/epr.hpp"
#include "cvent/teleportation.hpp"
#include "cvent/thresholds.hpp"

namespace cvent {

namespace {
constexpr double kEntangledEntropy = 1e-10;
}

std::string_view fidelity_class_name(FidelityClass c) {
  return c == FidelityClass::AboveHalf ? "ABOVE_HALF" : "BELOW_HALF";
}

TableOneRow classify(const std::string& label, const ResourceSpec& resource) {
  const TwoModeState state = build_resource_circuit(resource);
  const FidelityResult f = fidelity_bk(char_fn_numeric(state));
  const EprResult epr = epr_numeric(state, resource.alpha_phase);

  TableOneRow row;
  row.state_label = label;
  row.resource = resource;
  row.entropy_bits = entropy_numeric(state).entropy_bits;
  row.epr_variance = epr.total_variance;
  row.fidelity = f.fidelity;
  row.boundary = f.boundary;
  row.fidelity_class =
      f.beats_classical && !f.boundary ? FidelityClass::AboveHalf : FidelityClass::BelowHalf;
  row.entangled = row.entropy_bits > kEntangledEntropy;
  row.epr_second_order = epr.correlated;
  return row;
}

std::vector<TableOneRow> classify_table_one() {
  const double cat_phase =
      optimal_fidelity_closed(Family::OddCatSplit, 1.0, 0,
                              QuadratureRule::gauss_hermite(kDefaultQuadratureNodes))
          .phase;
  std::vector<TableOneRow> rows;
  rows.push_back(classify("a^dag b^dag |TMSS>, lambda=0.3",
                          ResourceSpec::tmss(Family::TmssAddAB, 0.3)));
  rows.push_back(classify("a^dag b^dag a b |TMSS>, lambda=0.2",
                          ResourceSpec::tmss(Family::TmssAddSubAB, 0.2)));
  rows.push_back(classify("a |TMSS>, lambda=0.38",
                          ResourceSpec::tmss(Family::TmssSubA, 0.38, 1)));
  rows.push_back(classify("odd cat split, |alpha|=1, n+m=0",
                          ResourceSpec::odd_cat(1.0, cat_phase, 0)));
  rows.push_back(classify("|0,0>", ResourceSpec::tmss(Family::Tmss, 0.0)));
  rows.push_back(classify("|TMSS>, lambda=0.3", ResourceSpec::tmss(Family::Tmss, 0.3)));
  rows.push_back(classify("PACS split, |alpha|=0.8, n+m=0", ResourceSpec::pacs(0.8, 0.0, 0)));
  return rows;
}

}  // namespace cvent
