#include "netcode/linear_code.hpp"

#include <stdexcept>

namespace netcode {

namespace {

size_t scaled_bits(int n, const Rational& rate, const std::string& what) {
  Rational scaled = rate * n;
  if (scaled.denominator() != 1)
    throw std::invalid_argument("blocklength " + std::to_string(n) + " makes " + what + " = " +
                                format_rational(rate) + " non-integral in bits");
  if (scaled.numerator() < 0) throw std::invalid_argument(what + " negative");
  return size_t(scaled.numerator());
}

}  // namespace

size_t edge_bits(const LinearNetworkCode& code, const Edge& e) {
  return scaled_bits(code.blocklength, e.capacity, "capacity of edge \"" + e.id + "\"");
}

size_t message_bits(const LinearNetworkCode& code, const std::string& sourceId) {
  return scaled_bits(code.blocklength, code.demand.source(sourceId).rate,
                     "rate of source \"" + sourceId + "\"");
}

std::vector<InputSegment> input_layout(const LinearNetworkCode& code, const std::string& node) {
  std::vector<InputSegment> segs;
  size_t off = 0;
  for (const auto& s : code.demand.sources_at(node)) {
    size_t w = message_bits(code, s);
    segs.push_back({InputSegment::Source, s, off, w});
    off += w;
  }
  for (const Edge* e : code.net.in_edges(node)) {
    size_t w = edge_bits(code, *e);
    segs.push_back({InputSegment::InEdge, e->id, off, w});
    off += w;
  }
  return segs;
}

size_t input_bits(const LinearNetworkCode& code, const std::string& node) {
  size_t total = 0;
  for (const auto& seg : input_layout(code, node)) total += seg.width;
  return total;
}

ValidationReport validate_code(const LinearNetworkCode& code) {
  ValidationReport rep = validate_network(code.net);
  auto dem = validate_demand(code.net, code.demand);
  rep.violations.insert(rep.violations.end(), dem.violations.begin(), dem.violations.end());
  if (!rep.ok()) return rep;
  if (code.blocklength < 1) {
    rep.violations.push_back("blocklength must be positive");
    return rep;
  }
  try {
    for (const auto& e : code.net.edges()) {
      auto it = code.encoders.find(e.id);
      if (it == code.encoders.end()) {
        rep.violations.push_back("missing encoder for edge \"" + e.id + "\"");
        continue;
      }
      size_t wantRows = edge_bits(code, e);
      size_t wantCols = input_bits(code, e.from);
      if (it->second.rows() != wantRows || it->second.cols() != wantCols)
        rep.violations.push_back("encoder for edge \"" + e.id + "\" is " +
                                 std::to_string(it->second.rows()) + "x" +
                                 std::to_string(it->second.cols()) + ", expected " +
                                 std::to_string(wantRows) + "x" + std::to_string(wantCols));
    }
    for (const auto& [node, wanted] : code.demand.demands()) {
      for (const auto& s : wanted) {
        auto it = code.decoders.find({node, s});
        if (it == code.decoders.end()) {
          rep.violations.push_back("missing decoder for source \"" + s + "\" at node \"" + node +
                                   "\"");
          continue;
        }
        size_t wantRows = message_bits(code, s);
        size_t wantCols = input_bits(code, node);
        if (it->second.rows() != wantRows || it->second.cols() != wantCols)
          rep.violations.push_back("decoder (" + node + "," + s + ") is " +
                                   std::to_string(it->second.rows()) + "x" +
                                   std::to_string(it->second.cols()) + ", expected " +
                                   std::to_string(wantRows) + "x" + std::to_string(wantCols));
      }
    }
  } catch (const std::invalid_argument& ex) {
    rep.violations.push_back(ex.what());
  }
  return rep;
}

namespace {

// Stack of per-segment blocks mapping source s's message bits into the
// input vector of a node: identity on s's own segment, the already-known
// transfer matrix on each incoming edge segment, zero elsewhere.
Gf2Matrix input_map_for_source(const LinearNetworkCode& code, const std::string& node,
                               const std::string& s, const TransferMatrixSet& transfers) {
  size_t srcBits = message_bits(code, s);
  std::vector<Gf2Matrix> blocks;
  for (const auto& seg : input_layout(code, node)) {
    if (seg.kind == InputSegment::Source) {
      blocks.push_back(seg.id == s ? Gf2Matrix::identity(seg.width)
                                   : Gf2Matrix::zero(seg.width, srcBits));
    } else {
      blocks.push_back(transfers.at({s, seg.id}));
    }
  }
  if (blocks.empty()) return Gf2Matrix::zero(0, srcBits);
  return Gf2Matrix::vstack(blocks);
}

}  // namespace

TransferMatrixSet compute_transfer_matrices(const LinearNetworkCode& code) {
  TransferMatrixSet transfers;
  for (const auto& node : topological_order(code.net)) {
    for (const Edge* e : code.net.out_edges(node)) {
      const Gf2Matrix& enc = code.encoders.at(e->id);
      if (enc.rows() != edge_bits(code, *e) || enc.cols() != input_bits(code, node))
        throw std::invalid_argument("encoder dimension mismatch on edge \"" + e->id + "\"");
      for (const auto& s : code.demand.sources()) {
        transfers[{s.id, e->id}] = enc * input_map_for_source(code, node, s.id, transfers);
      }
    }
  }
  return transfers;
}

namespace {

BitVec node_input_vector(const LinearNetworkCode& code, const std::string& node,
                         const std::map<std::string, BitVec>& messages,
                         const std::map<std::string, BitVec>& edgeWords) {
  BitVec in;
  for (const auto& seg : input_layout(code, node)) {
    const BitVec& part =
        seg.kind == InputSegment::Source ? messages.at(seg.id) : edgeWords.at(seg.id);
    if (part.size() != seg.width)
      throw std::invalid_argument("input segment \"" + seg.id + "\" has wrong width");
    in.insert(in.end(), part.begin(), part.end());
  }
  return in;
}

}  // namespace

SimulationResult simulate_code(const LinearNetworkCode& code,
                               const std::map<std::string, BitVec>& messages) {
  for (const auto& s : code.demand.sources()) {
    auto it = messages.find(s.id);
    if (it == messages.end() || it->second.size() != message_bits(code, s.id))
      throw std::invalid_argument("message for source \"" + s.id + "\" missing or wrong length");
  }
  SimulationResult result;
  for (const auto& node : topological_order(code.net)) {
    for (const Edge* e : code.net.out_edges(node)) {
      BitVec in = node_input_vector(code, node, messages, result.edgeWords);
      result.edgeWords[e->id] = code.encoders.at(e->id).apply(in);
    }
  }
  for (const auto& [node, wanted] : code.demand.demands()) {
    for (const auto& s : wanted) {
      BitVec in = node_input_vector(code, node, messages, result.edgeWords);
      result.reconstructions[{node, s}] = code.decoders.at({node, s}).apply(in);
    }
  }
  return result;
}

DecodabilityReport check_decodable(const LinearNetworkCode& code) {
  TransferMatrixSet transfers = compute_transfer_matrices(code);
  DecodabilityReport rep;
  for (const auto& [node, wanted] : code.demand.demands()) {
    for (const auto& s : wanted) {
      const Gf2Matrix& dec = code.decoders.at({node, s});
      bool ok = true;
      for (const auto& other : code.demand.sources()) {
        Gf2Matrix endToEnd = dec * input_map_for_source(code, node, other.id, transfers);
        const Gf2Matrix want = other.id == s
                                   ? Gf2Matrix::identity(message_bits(code, s))
                                   : Gf2Matrix::zero(message_bits(code, s),
                                                     message_bits(code, other.id));
        if (endToEnd != want) {
          ok = false;
          break;
        }
      }
      rep.perSink[{node, s}] = ok;
    }
  }
  return rep;
}

}  // namespace netcode
