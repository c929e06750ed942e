#include "netcode/edge_perturbation.hpp"

#include <stdexcept>

namespace netcode {

KernelRestriction kernel_restrict(const LinearNetworkCode& code, const std::string& edge) {
  return kernel_restrict(code, compute_transfer_matrices(code), edge);
}

KernelRestriction kernel_restrict(const LinearNetworkCode& code, const TransferMatrixSet& transfers,
                                  const std::string& edge) {
  code.net.edge(edge);  // throws on unknown edge
  KernelRestriction kr;
  kr.edge = edge;
  for (const auto& s : code.demand.sources()) {
    const Gf2Matrix& a = transfers.at({s.id, edge});
    std::vector<BitVec> basis = a.kernel_basis();
    kr.injections[s.id] = Gf2Matrix::from_columns(basis, message_bits(code, s.id));
    kr.restrictedRate[s.id] = Rational(long(basis.size()), code.blocklength);
    kr.kernels[s.id] = std::move(basis);
  }
  return kr;
}

namespace {

// Maps a node's input vector in the new code to the input vector the old
// encoder expects: injections on source segments, identity on surviving
// edge segments, all-zero rows where the removed edge used to sit.
Gf2Matrix old_input_from_new(const LinearNetworkCode& oldCode, const LinearNetworkCode& newCode,
                             const std::string& node,
                             const std::map<std::string, Gf2Matrix>& injections,
                             const std::string& removedEdge) {
  size_t newBits = input_bits(newCode, node);
  auto newLayout = input_layout(newCode, node);
  std::vector<Gf2Matrix> rows;
  for (const auto& oldSeg : input_layout(oldCode, node)) {
    if (oldSeg.kind == InputSegment::InEdge && oldSeg.id == removedEdge) {
      rows.push_back(Gf2Matrix::zero(oldSeg.width, newBits));
      continue;
    }
    // Place the segment's block at its offset in the new layout.
    Gf2Matrix block(oldSeg.width, newBits);
    for (const auto& newSeg : newLayout) {
      if (newSeg.kind != oldSeg.kind || newSeg.id != oldSeg.id) continue;
      const Gf2Matrix* map = nullptr;
      Gf2Matrix ident;
      if (oldSeg.kind == InputSegment::Source) {
        map = &injections.at(oldSeg.id);
      } else {
        ident = Gf2Matrix::identity(oldSeg.width);
        map = &ident;
      }
      if (map->rows() != oldSeg.width || map->cols() != newSeg.width)
        throw std::invalid_argument("restriction map for segment \"" + oldSeg.id +
                                    "\" has wrong shape");
      for (size_t r = 0; r < map->rows(); ++r)
        for (size_t c = 0; c < map->cols(); ++c)
          block.set(r, newSeg.offset + c, map->get(r, c));
    }
    rows.push_back(std::move(block));
  }
  if (rows.empty()) return Gf2Matrix::zero(0, newBits);
  return Gf2Matrix::vstack(rows);
}

}  // namespace

LinearNetworkCode restrict_messages(const LinearNetworkCode& code, const Network& newNet,
                                    const std::map<std::string, Gf2Matrix>& injections,
                                    const std::string& removedEdge) {
  LinearNetworkCode out;
  out.net = newNet;
  out.blocklength = code.blocklength;
  std::map<std::string, Rational> newRates;
  for (const auto& s : code.demand.sources()) {
    const Gf2Matrix& inj = injections.at(s.id);
    if (inj.rows() != message_bits(code, s.id))
      throw std::invalid_argument("injection for source \"" + s.id + "\" has wrong height");
    newRates[s.id] = Rational(long(inj.cols()), code.blocklength);
  }
  out.demand = code.demand.with_rates(newRates);

  for (const auto& e : newNet.edges()) {
    Gf2Matrix remap = old_input_from_new(code, out, e.from, injections, removedEdge);
    out.encoders[e.id] = code.encoders.at(e.id) * remap;
  }
  for (const auto& [key, dec] : code.decoders) {
    const auto& [node, s] = key;
    Gf2Matrix remap = old_input_from_new(code, out, node, injections, removedEdge);
    out.decoders[key] = injections.at(s).left_inverse() * (dec * remap);
  }
  return out;
}

LinearNetworkCode build_restricted_code(const LinearNetworkCode& code,
                                        const KernelRestriction& kr) {
  const Edge& e = code.net.edge(kr.edge);
  Network reduced = reduce_edge(code.net, kr.edge, e.capacity);
  return restrict_messages(code, reduced, kr.injections, kr.edge);
}

Network split_parallel(const Network& net, const std::string& edge, const Rational& delta) {
  const Edge& e = net.edge(edge);
  if (delta <= 0 || delta >= e.capacity)
    throw std::invalid_argument("split_parallel: delta must lie strictly inside (0, C_e)");
  std::string idA = edge + ":a", idB = edge + ":b";
  if (net.has_edge(idA) || net.has_edge(idB))
    throw std::invalid_argument("split_parallel: id collision on \"" + idA + "\"");
  std::vector<Edge> edges;
  for (const auto& cur : net.edges()) {
    if (cur.id != edge) {
      edges.push_back(cur);
      continue;
    }
    edges.push_back({idA, cur.from, cur.to, cur.capacity - delta});
    edges.push_back({idB, cur.from, cur.to, delta});
  }
  return Network(net.name(), net.nodes(), std::move(edges));
}

namespace {

// Column remap: the new layout of a split consumer reads (e:a bits, e:b
// bits) where the old layout read e's bits, possibly at a different
// position among the other in-edges.
Gf2Matrix split_consumer_remap(const LinearNetworkCode& oldCode, const LinearNetworkCode& newCode,
                               const std::string& node, const std::string& edge, size_t bitsA) {
  auto newLayout = input_layout(newCode, node);
  size_t newBits = input_bits(newCode, node);
  std::vector<Gf2Matrix> rows;
  for (const auto& oldSeg : input_layout(oldCode, node)) {
    Gf2Matrix block(oldSeg.width, newBits);
    auto place = [&](const std::string& newId, InputSegment::Kind kind, size_t rowOffset,
                     size_t count) {
      for (const auto& newSeg : newLayout) {
        if (newSeg.kind != kind || newSeg.id != newId) continue;
        for (size_t i = 0; i < count; ++i) block.set(rowOffset + i, newSeg.offset + i, true);
      }
    };
    if (oldSeg.kind == InputSegment::InEdge && oldSeg.id == edge) {
      place(edge + ":a", InputSegment::InEdge, 0, bitsA);
      place(edge + ":b", InputSegment::InEdge, bitsA, oldSeg.width - bitsA);
    } else {
      place(oldSeg.id, oldSeg.kind, 0, oldSeg.width);
    }
    rows.push_back(std::move(block));
  }
  if (rows.empty()) return Gf2Matrix::zero(0, newBits);
  return Gf2Matrix::vstack(rows);
}

}  // namespace

LinearNetworkCode lift_code_to_split(const LinearNetworkCode& code, const std::string& edge,
                                     const Rational& delta) {
  const Edge& e = code.net.edge(edge);
  size_t bitsAll = edge_bits(code, e);
  Rational keep = e.capacity - delta;
  Rational scaledKeep = keep * code.blocklength;
  if (scaledKeep.denominator() != 1 || (delta * code.blocklength).denominator() != 1)
    throw std::invalid_argument("lift_code_to_split: split sizes not integral at this blocklength");
  size_t bitsA = size_t(scaledKeep.numerator());

  LinearNetworkCode out;
  out.net = split_parallel(code.net, edge, delta);
  out.demand = code.demand;
  out.blocklength = code.blocklength;

  const std::string head = e.to;
  for (const auto& cur : out.net.edges()) {
    if (cur.id == edge + ":a") {
      out.encoders[cur.id] = code.encoders.at(edge).row_slice(0, bitsA);
    } else if (cur.id == edge + ":b") {
      out.encoders[cur.id] = code.encoders.at(edge).row_slice(bitsA, bitsAll);
    } else if (cur.from == head) {
      out.encoders[cur.id] =
          code.encoders.at(cur.id) * split_consumer_remap(code, out, head, edge, bitsA);
    } else {
      out.encoders[cur.id] = code.encoders.at(cur.id);
    }
  }
  for (const auto& [key, dec] : code.decoders) {
    if (key.first == head) {
      out.decoders[key] = dec * split_consumer_remap(code, out, head, edge, bitsA);
    } else {
      out.decoders[key] = dec;
    }
  }
  return out;
}

RateLossReport verify_rate_loss(const LinearNetworkCode& code, const std::string& edge,
                                const Rational& delta) {
  const Edge& e = code.net.edge(edge);
  if (delta < 0 || delta > e.capacity)
    throw std::invalid_argument("verify_rate_loss: delta outside [0, C_e]");

  RateLossReport rep;
  rep.edge = edge;
  rep.delta = delta;

  std::map<std::string, Rational> restricted;
  if (delta == 0) {
    for (const auto& s : code.demand.sources()) restricted[s.id] = s.rate;
  } else {
    const LinearNetworkCode* target = &code;
    LinearNetworkCode lifted;
    std::string targetEdge = edge;
    if (delta < e.capacity) {
      lifted = lift_code_to_split(code, edge, delta);
      target = &lifted;
      targetEdge = edge + ":b";
    }
    KernelRestriction kr = kernel_restrict(*target, targetEdge);
    restricted = kr.restrictedRate;
  }

  rep.pass = true;
  for (const auto& s : code.demand.sources()) {
    Rational bound = std::max(s.rate - delta, Rational(0));
    rep.perSource.push_back({s.id, s.rate, restricted.at(s.id), bound});
    if (restricted.at(s.id) < bound) rep.pass = false;
  }
  if (!rep.pass)
    throw std::logic_error("verify_rate_loss: restricted rate fell below (R - delta)^+; "
                           "this contradicts rank-nullity and indicates a defect");
  return rep;
}

}  // namespace netcode
