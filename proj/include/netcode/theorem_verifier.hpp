#pragma once

#include "netcode/regions.hpp"

namespace netcode {

// A network instance where node a together with the designated edge e
// separates every source from every sink that demands it, demands are
// k-unicast, and delta = C_e. The pipeline replays the proof's chain of
// inequalities at the given blocklength on the code's exact induced
// distribution.
struct TheoremInstance {
  LinearNetworkCode code;
  std::string nodeA;
  std::string edgeE;
};

// True iff deleting node a and edge e disconnects sources from their sinks.
bool check_structure(const Network& net, const DemandSpec& demand, const std::string& nodeA,
                     const std::string& edgeE);

struct SubsetMargin {
  std::string label;
  double lhs;
  double bound;
  double margin;  // lhs - bound
  bool pass;
};

struct MacStepReport {
  std::vector<std::string> sources;
  std::vector<double> rMac;            // I(M_s; W_i)
  std::vector<double> errorProb;       // P(M_s != Mhat_s), exact value as double
  double epsilon = 0.0;                // max_s max(P_es, h(P_es))
  std::vector<SubsetMargin> regionChecks;  // r_mac against the MAC region
  std::vector<SubsetMargin> rateChecks;    // I(M_s;W_i) >= n(R_s-delta) - nR_s*eps - eps
  bool pass = false;
};

struct BcStepReport {
  uint64_t chosenWe = 0;
  double chosenEntropy = 0.0;   // H(Mhat | W_e = w_e)
  double averageEntropy = 0.0;  // H(Mhat | W_e)
  bool deterministic = false;   // Mhat a function of W_o given W_e = w_e
  std::vector<SubsetMargin> chainChecks;   // H(Mhat_A|w_e) vs the proof bound
  std::vector<SubsetMargin> targetChecks;  // n(R-delta*1)^+ against the DBC region
  bool pass = false;
};

struct TheoremReport {
  bool structureOk = false;
  Rational delta;                       // C_e
  std::vector<std::string> degenerate;  // sources with R_s <= delta, sent as constants
  MacStepReport mac;
  uint64_t chosenWe = 0;
  BcStepReport bc;
  bool pass = false;
};

// The three proof stages, exposed individually. All take an evaluator so
// oracle-found nonlinear codes verify through the same path.
MacStepReport verify_mac_step(const CodeEvaluator& ev, const Network& net,
                              const DemandSpec& demand, const std::string& nodeA,
                              const Rational& delta);

// Value of W_e maximizing H(Mhat | W_e = w_e); ties break to the smallest
// index, zero-probability values are skipped. The table's first variable
// must be W_e.
std::pair<uint64_t, double> choose_w_e(const DistributionTable& d);

BcStepReport verify_bc_step(const CodeEvaluator& ev, const Network& net, const DemandSpec& demand,
                            const std::string& nodeA, const std::string& edgeE,
                            const Rational& delta, double epsilon, uint64_t wE);

TheoremReport verify_theorem(const TheoremInstance& inst);
TheoremReport verify_theorem(const CodeEvaluator& ev, const Network& net, const DemandSpec& demand,
                             const std::string& nodeA, const std::string& edgeE);

}  // namespace netcode
