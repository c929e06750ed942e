#pragma once

#include "netcode/cut_bounds.hpp"
#include "netcode/info_tools.hpp"

namespace netcode {

struct RegionInequality {
  std::vector<size_t> subset;  // indices into the region's dimensions
  double bound;
  std::string label;
};

// Polymatroid-style region: sum_{s in A} (r_s - offset_s) <= bound_A for
// every inequality. Membership is purely linear; any (.)^+ clamping happens
// in the caller when it forms the probe vector.
struct RateRegion {
  size_t dimension = 0;
  std::vector<std::string> labels;  // per dimension, e.g. source ids
  std::vector<double> offset;
  std::vector<RegionInequality> inequalities;

  bool contains(const std::vector<double>& r, double tol = 1e-9) const;
};

// MAC region at the distribution the code induces: for every nonempty
// sender subset A, sum_A r_s <= I(M_A; W | M_{A^c}). Message variables are
// all "M:*" columns; everything else is the channel output. Requires the
// messages to be independent under d.
RateRegion mac_region_from_code(const DistributionTable& d);

// (I(M_1; W), ..., I(M_k; W)) under d; always a member of the MAC region.
std::vector<double> r_mac_vector(const DistributionTable& d);

// One sender, k deterministic receivers Y_s = f_s(X).
struct DeterministicBC {
  uint64_t inputAlphabet = 0;
  std::vector<std::vector<uint64_t>> functions;  // per user, size inputAlphabet
  std::vector<Rational> inputDist;               // P(X), sums to 1

  size_t users() const { return functions.size(); }
};

// Achievable region of the DBC at its stored input law: sum_A R_s <= H(Y_A)
// for every nonempty A. The union over input laws is not enumerated here.
RateRegion dbc_region(const DeterministicBC& bc);
RateRegion dbc_region_at(const DeterministicBC& bc, const std::vector<Rational>& inputDist);

RateRegion shift_region(const RateRegion& region, double delta);
RateRegion intersect(const RateRegion& a, const RateRegion& b);

// All distributions on `alphabet` symbols whose probabilities are multiples
// of 1/gridDenom. Deterministic order.
std::vector<std::vector<Rational>> grid_distributions(size_t alphabet, long gridDenom);

// Membership in the union of dbc regions over candidate input laws.
bool dbc_member_any(const DeterministicBC& bc,
                    const std::vector<std::vector<Rational>>& candidates,
                    const std::vector<double>& r, double tol = 1e-9);

// The outer bound R_o = (R_1 cap R_2) + delta*1 built from the two cut-set
// regions of the decomposition around node a with bypass edge e removed:
// R_1 multicasts all sources to a, R_2 redistributes them from a to the
// sinks. Bounds stay rational so membership is exact.
struct CorollaryOuterBound {
  CutsetRegion intoA;
  CutsetRegion fromA;
  Rational delta;
  std::vector<std::string> sourceOrder;

  bool contains(const std::map<std::string, Rational>& rates) const;
  RateRegion as_rate_region() const;
};

CorollaryOuterBound corollary_outer_bound(const Network& net, const DemandSpec& demand,
                                          const std::string& nodeA, const std::string& edgeE);

}  // namespace netcode
