#pragma once

#include "netcode/net_model.hpp"

namespace netcode {

// Demand types whose capacity region equals the cut-set bounds. Detected
// structurally; anything else is rejected so a tight-bound claim is never
// applied where it does not hold.
enum class DemandType {
  Multicast,
  MultiSourceMulticast,
  SingleSourceNonOverlapping,
  SingleSourceNonOverlappingPlusMulticast,
};

std::string demand_type_name(DemandType t);

struct CutsetConstraint {
  std::vector<std::string> sources;    // subset A whose rates are summed
  std::vector<std::string> sinkNodes;  // sink group the flow must reach
  Rational bound;                      // max_flow(alpha(A) -> sinks)
  std::string label;
};

struct CutsetRegion {
  DemandType type;
  std::vector<std::string> sourceOrder;  // ascending source ids
  std::vector<CutsetConstraint> constraints;
};

DemandType classify_demand(const Network& net, const DemandSpec& demand);

// Constraint families per type:
//   multicast:                 per demanding sink v, R_1 <= maxflow(alpha(1), v)
//   multi-source multicast:    per sink v and nonempty A not available at v,
//                              sum_A R_s <= maxflow(alpha(A), v)
//   single-source disjoint:    per nonempty sink group T,
//                              sum of T's demanded rates <= maxflow(v0, T)
//   disjoint + multicast part: as above plus the shared rates on every group
CutsetRegion cutset_region(const Network& net, const DemandSpec& demand);

bool region_membership(const CutsetRegion& region, const std::map<std::string, Rational>& rates);

struct RobustnessReport {
  struct ConstraintDrop {
    std::string label;
    Rational before;
    Rational after;
    bool pass;  // after >= before - delta
  };
  std::string edge;
  Rational delta;
  std::vector<ConstraintDrop> constraintChecks;
  int pointsChecked = 0;
  int pointFailures = 0;
  bool pass = false;
};

// For matching constraints of the regions on N and N', checks the bound
// drops by at most delta; then samples points of the N region and checks
// (r - delta*1)^+ stays inside the N' region. Exact rationals throughout.
RobustnessReport check_delta_robustness(const Network& net, const DemandSpec& demand,
                                        const std::string& edge, const Rational& delta,
                                        int samplePoints = 100, uint64_t seed = 1);

}  // namespace netcode
