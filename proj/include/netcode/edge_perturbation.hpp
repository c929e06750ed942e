#pragma once

#include "netcode/linear_code.hpp"

namespace netcode {

// Per-source restriction of the message space to the kernel of A_{s,e}:
// every restricted tuple puts the all-zero word on edge e, so the code can
// run with the edge absent. The product structure keeps the sources
// coordination-free.
struct KernelRestriction {
  std::string edge;
  // source id -> basis of {m : A_{s,e} m = 0}, each vector n*R_s bits.
  std::map<std::string, std::vector<BitVec>> kernels;
  // source id -> injection from restricted message bits to original bits
  // (basis vectors as columns).
  std::map<std::string, Gf2Matrix> injections;
  // |kernel| expressed as bits per network use: dim / n.
  std::map<std::string, Rational> restrictedRate;
};

KernelRestriction kernel_restrict(const LinearNetworkCode& code, const std::string& edge);
KernelRestriction kernel_restrict(const LinearNetworkCode& code, const TransferMatrixSet& transfers,
                                  const std::string& edge);

// Rebuild a code over a smaller per-source message space. Encoders are
// precomposed with the injections; decoders emit restricted bits through a
// left inverse. When removedEdge is set, its consumers read a constant zero
// in that segment (the columns drop out).
LinearNetworkCode restrict_messages(const LinearNetworkCode& code, const Network& newNet,
                                    const std::map<std::string, Gf2Matrix>& injections,
                                    const std::string& removedEdge = "");

// The restriction applied: a code on the network with edge e removed,
// decoding every restricted tuple exactly as the original code did.
LinearNetworkCode build_restricted_code(const LinearNetworkCode& code,
                                        const KernelRestriction& kr);

// Replace edge e (capacity C) by parallel edges "<e>:a" (C - delta) and
// "<e>:b" (delta). Requires 0 < delta < C.
Network split_parallel(const Network& net, const std::string& edge, const Rational& delta);

// Lift a code across split_parallel: the first n*(C-delta) bits of e ride
// the ":a" link, the rest the ":b" link. Simulates identically.
LinearNetworkCode lift_code_to_split(const LinearNetworkCode& code, const std::string& edge,
                                     const Rational& delta);

struct RateLossReport {
  struct PerSource {
    std::string source;
    Rational originalRate;
    Rational restrictedRate;
    Rational bound;  // (R_s - delta)^+
  };
  std::string edge;
  Rational delta;
  std::vector<PerSource> perSource;
  bool pass = false;
};

// Runs the full pipeline for a delta-reduction of edge e: split when
// delta < C_e, kernel-restrict the delta link, and check the restricted
// rate against (R_s - delta)^+ with exact arithmetic. A failed bound is
// mathematically impossible and raises std::logic_error.
RateLossReport verify_rate_loss(const LinearNetworkCode& code, const std::string& edge,
                                const Rational& delta);

}  // namespace netcode
