#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "netcode/gf2.hpp"
#include "netcode/net_model.hpp"

namespace netcode {

// Input bit layout at a node: message bits for the sources available there
// (ascending by source id), then the bits of each incoming edge (ascending
// by edge id).
struct InputSegment {
  enum Kind { Source, InEdge } kind;
  std::string id;
  size_t offset;
  size_t width;
};

// Blocklength-n GF(2) code: one local encoder per edge, one linear decoder
// per (sink, demanded source). Immutable; simulation is pure.
struct LinearNetworkCode {
  Network net;
  DemandSpec demand;
  int blocklength = 1;
  std::map<std::string, Gf2Matrix> encoders;  // edge id -> n*C_e x input bits of tail
  std::map<std::pair<std::string, std::string>, Gf2Matrix> decoders;  // (node, source)
};

// n*C_e and n*R_s as bit counts; throw when not integral (inadmissible
// blocklength).
size_t edge_bits(const LinearNetworkCode& code, const Edge& e);
size_t message_bits(const LinearNetworkCode& code, const std::string& sourceId);

std::vector<InputSegment> input_layout(const LinearNetworkCode& code, const std::string& node);
size_t input_bits(const LinearNetworkCode& code, const std::string& node);

ValidationReport validate_code(const LinearNetworkCode& code);

// A_{s,e} for every (source, edge): the end-to-end map from source message
// bits to edge bits, obtained by composing local encoders in topological
// order.
using TransferMatrixSet = std::map<std::pair<std::string, std::string>, Gf2Matrix>;
TransferMatrixSet compute_transfer_matrices(const LinearNetworkCode& code);

struct SimulationResult {
  std::map<std::string, BitVec> edgeWords;
  std::map<std::pair<std::string, std::string>, BitVec> reconstructions;
};

SimulationResult simulate_code(const LinearNetworkCode& code,
                               const std::map<std::string, BitVec>& messages);

struct DecodabilityReport {
  std::map<std::pair<std::string, std::string>, bool> perSink;
  bool all() const {
    for (const auto& [k, v] : perSink)
      if (!v) return false;
    return true;
  }
};

// Exact zero-error verdict: (v,s) succeeds iff the decoder reproduces M_s
// for every message tuple. Decided algebraically (decoder composed with the
// transfer maps is identity on the s block and zero elsewhere).
DecodabilityReport check_decodable(const LinearNetworkCode& code);

}  // namespace netcode
