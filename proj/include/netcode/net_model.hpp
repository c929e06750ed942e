#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "netcode/rational.hpp"

namespace netcode {

struct Edge {
  std::string id;
  std::string from;
  std::string to;
  Rational capacity;  // bits per network use, >= 0
};

// Directed acyclic graph of error-free bit pipes. Immutable after
// construction; transformations return new networks. Parallel edges between
// the same node pair are allowed.
class Network {
 public:
  Network() = default;
  Network(std::string name, std::vector<std::string> nodes, std::vector<Edge> edges);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_node(const std::string& id) const;
  bool has_edge(const std::string& id) const;
  const Edge& edge(const std::string& id) const;  // throws on unknown id

  // Incident edges sorted ascending by edge id.
  std::vector<const Edge*> in_edges(const std::string& node) const;
  std::vector<const Edge*> out_edges(const std::string& node) const;

 private:
  std::string name_;
  std::vector<std::string> nodes_;
  std::vector<Edge> edges_;
};

struct SourceSpec {
  std::string id;
  std::string node;  // alpha(s)
  Rational rate;
};

// Sources, their availability map, and per-node demands.
class DemandSpec {
 public:
  DemandSpec() = default;
  DemandSpec(std::vector<SourceSpec> sources, std::map<std::string, std::set<std::string>> demands);

  // Ascending by source id.
  const std::vector<SourceSpec>& sources() const { return sources_; }
  const std::map<std::string, std::set<std::string>>& demands() const { return demands_; }

  bool has_source(const std::string& id) const;
  const SourceSpec& source(const std::string& id) const;
  // sigma(v): sources available at the node, ascending by id.
  std::vector<std::string> sources_at(const std::string& node) const;
  // beta(v); empty set when the node demands nothing.
  std::set<std::string> demanded_at(const std::string& node) const;
  // Nodes with a nonempty demand, ascending.
  std::vector<std::string> sink_nodes() const;
  // Sinks demanding a given source, ascending.
  std::vector<std::string> sinks_for(const std::string& source) const;

  DemandSpec with_rates(const std::map<std::string, Rational>& rates) const;

 private:
  std::vector<SourceSpec> sources_;
  std::map<std::string, std::set<std::string>> demands_;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_network(const Network& net);
ValidationReport validate_demand(const Network& net, const DemandSpec& demand);

// Node ids in an order respecting every edge; ties broken ascending by id.
// Throws std::invalid_argument when the graph has a cycle.
std::vector<std::string> topological_order(const Network& net);

// N -> N' with C'_e = C_e - delta; the edge disappears entirely when the
// capacity hits zero. Throws when delta < 0 or delta > C_e.
Network reduce_edge(const Network& net, const std::string& edgeId, const Rational& delta);

struct Cut {
  std::set<std::string> sourceSide;
  std::vector<std::string> crossingEdges;  // ascending by id
  Rational capacity;
};

// Every cut separating src from dst, by exhaustive 2^|V| sweep. Limited to
// 20 nodes. src and dst must be disjoint.
std::vector<Cut> enumerate_cuts(const Network& net, const std::set<std::string>& src,
                                const std::set<std::string>& dst);

// Exact max-flow between node sets (augmenting paths on rational residuals).
Rational max_flow(const Network& net, const std::set<std::string>& src,
                  const std::set<std::string>& dst);

// True when deleting node `cutNode` (with its incident edges) and edge
// `cutEdge` leaves no path from any source's node to any sink demanding it.
bool separates_sources_from_sinks(const Network& net, const DemandSpec& demand,
                                  const std::string& cutNode, const std::string& cutEdge);

}  // namespace netcode
