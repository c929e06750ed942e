#include "netcode/net_model.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace netcode {

Network::Network(std::string name, std::vector<std::string> nodes, std::vector<Edge> edges)
    : name_(std::move(name)), nodes_(std::move(nodes)), edges_(std::move(edges)) {}

bool Network::has_node(const std::string& id) const {
  return std::find(nodes_.begin(), nodes_.end(), id) != nodes_.end();
}

bool Network::has_edge(const std::string& id) const {
  for (const auto& e : edges_)
    if (e.id == id) return true;
  return false;
}

const Edge& Network::edge(const std::string& id) const {
  for (const auto& e : edges_)
    if (e.id == id) return e;
  throw std::invalid_argument("unknown edge \"" + id + "\"");
}

std::vector<const Edge*> Network::in_edges(const std::string& node) const {
  std::vector<const Edge*> out;
  for (const auto& e : edges_)
    if (e.to == node) out.push_back(&e);
  std::sort(out.begin(), out.end(), [](const Edge* a, const Edge* b) { return a->id < b->id; });
  return out;
}

std::vector<const Edge*> Network::out_edges(const std::string& node) const {
  std::vector<const Edge*> out;
  for (const auto& e : edges_)
    if (e.from == node) out.push_back(&e);
  std::sort(out.begin(), out.end(), [](const Edge* a, const Edge* b) { return a->id < b->id; });
  return out;
}

DemandSpec::DemandSpec(std::vector<SourceSpec> sources,
                       std::map<std::string, std::set<std::string>> demands)
    : sources_(std::move(sources)), demands_(std::move(demands)) {
  std::sort(sources_.begin(), sources_.end(),
            [](const SourceSpec& a, const SourceSpec& b) { return a.id < b.id; });
}

bool DemandSpec::has_source(const std::string& id) const {
  for (const auto& s : sources_)
    if (s.id == id) return true;
  return false;
}

const SourceSpec& DemandSpec::source(const std::string& id) const {
  for (const auto& s : sources_)
    if (s.id == id) return s;
  throw std::invalid_argument("unknown source \"" + id + "\"");
}

std::vector<std::string> DemandSpec::sources_at(const std::string& node) const {
  std::vector<std::string> out;
  for (const auto& s : sources_)
    if (s.node == node) out.push_back(s.id);
  return out;
}

std::set<std::string> DemandSpec::demanded_at(const std::string& node) const {
  auto it = demands_.find(node);
  return it == demands_.end() ? std::set<std::string>{} : it->second;
}

std::vector<std::string> DemandSpec::sink_nodes() const {
  std::vector<std::string> out;
  for (const auto& [node, wanted] : demands_)
    if (!wanted.empty()) out.push_back(node);
  return out;
}

std::vector<std::string> DemandSpec::sinks_for(const std::string& source) const {
  std::vector<std::string> out;
  for (const auto& [node, wanted] : demands_)
    if (wanted.count(source)) out.push_back(node);
  return out;
}

DemandSpec DemandSpec::with_rates(const std::map<std::string, Rational>& rates) const {
  DemandSpec d = *this;
  for (auto& s : d.sources_) {
    auto it = rates.find(s.id);
    if (it != rates.end()) s.rate = it->second;
  }
  return d;
}

namespace {

// Kahn's algorithm with an id-ordered frontier; nullptr report collects
// violations instead of throwing.
std::vector<std::string> topo_sort(const Network& net, bool* hasCycle) {
  std::map<std::string, size_t> indeg;
  for (const auto& n : net.nodes()) indeg[n] = 0;
  for (const auto& e : net.edges())
    if (indeg.count(e.to) && indeg.count(e.from)) ++indeg[e.to];
  std::set<std::string> frontier;
  for (const auto& [n, d] : indeg)
    if (d == 0) frontier.insert(n);
  std::vector<std::string> order;
  while (!frontier.empty()) {
    std::string v = *frontier.begin();
    frontier.erase(frontier.begin());
    order.push_back(v);
    for (const auto& e : net.edges()) {
      if (e.from != v || !indeg.count(e.to)) continue;
      if (--indeg[e.to] == 0) frontier.insert(e.to);
    }
  }
  *hasCycle = order.size() != net.nodes().size();
  return order;
}

}  // namespace

ValidationReport validate_network(const Network& net) {
  ValidationReport rep;
  std::set<std::string> seenNodes;
  for (const auto& n : net.nodes())
    if (!seenNodes.insert(n).second) rep.violations.push_back("duplicate node id \"" + n + "\"");
  std::set<std::string> seenEdges;
  for (const auto& e : net.edges()) {
    if (!seenEdges.insert(e.id).second)
      rep.violations.push_back("duplicate edge id \"" + e.id + "\"");
    if (!net.has_node(e.from))
      rep.violations.push_back("edge \"" + e.id + "\": dangling endpoint \"" + e.from + "\"");
    if (!net.has_node(e.to))
      rep.violations.push_back("edge \"" + e.id + "\": dangling endpoint \"" + e.to + "\"");
    if (e.capacity < 0)
      rep.violations.push_back("edge \"" + e.id + "\": negative capacity " +
                               format_rational(e.capacity));
  }
  bool hasCycle = false;
  topo_sort(net, &hasCycle);
  if (hasCycle) rep.violations.push_back("cycle: no topological order exists");
  return rep;
}

ValidationReport validate_demand(const Network& net, const DemandSpec& demand) {
  ValidationReport rep;
  std::set<std::string> ids;
  for (const auto& s : demand.sources()) {
    if (!ids.insert(s.id).second)
      rep.violations.push_back("source \"" + s.id + "\" declared more than once");
    if (!net.has_node(s.node))
      rep.violations.push_back("source \"" + s.id + "\" at unknown node \"" + s.node + "\"");
    if (s.rate < 0)
      rep.violations.push_back("source \"" + s.id + "\": negative rate");
  }
  for (const auto& [node, wanted] : demand.demands()) {
    if (!net.has_node(node))
      rep.violations.push_back("demand at unknown node \"" + node + "\"");
    for (const auto& s : wanted)
      if (!ids.count(s))
        rep.violations.push_back("node \"" + node + "\" demands unknown source \"" + s + "\"");
  }
  return rep;
}

std::vector<std::string> topological_order(const Network& net) {
  bool hasCycle = false;
  auto order = topo_sort(net, &hasCycle);
  if (hasCycle) throw std::invalid_argument("topological_order: graph has a cycle");
  return order;
}

Network reduce_edge(const Network& net, const std::string& edgeId, const Rational& delta) {
  const Edge& e = net.edge(edgeId);
  if (delta < 0) throw std::invalid_argument("reduce_edge: negative delta");
  if (delta > e.capacity)
    throw std::invalid_argument("reduce_edge: delta " + format_rational(delta) +
                                " exceeds capacity " + format_rational(e.capacity));
  std::vector<Edge> edges;
  for (const auto& cur : net.edges()) {
    if (cur.id != edgeId) {
      edges.push_back(cur);
      continue;
    }
    if (cur.capacity == delta) continue;  // capacity hits zero: edge removed
    Edge reduced = cur;
    reduced.capacity = cur.capacity - delta;
    edges.push_back(reduced);
  }
  return Network(net.name(), net.nodes(), std::move(edges));
}

std::vector<Cut> enumerate_cuts(const Network& net, const std::set<std::string>& src,
                                const std::set<std::string>& dst) {
  if (net.nodes().size() > 20)
    throw std::invalid_argument("enumerate_cuts: more than 20 nodes");
  for (const auto& s : src)
    if (dst.count(s)) throw std::invalid_argument("enumerate_cuts: src and dst overlap");
  std::vector<std::string> free;
  for (const auto& n : net.nodes())
    if (!src.count(n) && !dst.count(n)) free.push_back(n);
  std::sort(free.begin(), free.end());

  std::vector<Cut> cuts;
  for (uint64_t mask = 0; mask < (uint64_t(1) << free.size()); ++mask) {
    Cut cut;
    cut.sourceSide = src;
    for (size_t i = 0; i < free.size(); ++i)
      if ((mask >> i) & 1) cut.sourceSide.insert(free[i]);
    cut.capacity = Rational(0);
    for (const auto& e : net.edges()) {
      if (cut.sourceSide.count(e.from) && !cut.sourceSide.count(e.to)) {
        cut.crossingEdges.push_back(e.id);
        cut.capacity += e.capacity;
      }
    }
    std::sort(cut.crossingEdges.begin(), cut.crossingEdges.end());
    cuts.push_back(std::move(cut));
  }
  return cuts;
}

Rational max_flow(const Network& net, const std::set<std::string>& src,
                  const std::set<std::string>& dst) {
  for (const auto& s : src)
    if (dst.count(s)) throw std::invalid_argument("max_flow: src and dst overlap");
  if (src.empty() || dst.empty()) return Rational(0);

  // Index nodes plus a super source/sink; residual adjacency matrix.
  std::vector<std::string> nodes = net.nodes();
  std::map<std::string, size_t> idx;
  for (size_t i = 0; i < nodes.size(); ++i) idx[nodes[i]] = i;
  size_t S = nodes.size(), T = nodes.size() + 1, N = nodes.size() + 2;
  std::vector<std::vector<Rational>> res(N, std::vector<Rational>(N, Rational(0)));
  Rational total(0);
  for (const auto& e : net.edges()) {
    res[idx.at(e.from)][idx.at(e.to)] += e.capacity;
    total += e.capacity;
  }
  Rational inf = total + 1;
  for (const auto& s : src) res[S][idx.at(s)] = inf;
  for (const auto& t : dst) res[idx.at(t)][T] = inf;

  Rational flow(0);
  while (true) {
    // BFS for an augmenting path.
    std::vector<int> parent(N, -1);
    parent[S] = int(S);
    std::deque<size_t> queue{S};
    while (!queue.empty() && parent[T] == -1) {
      size_t u = queue.front();
      queue.pop_front();
      for (size_t v = 0; v < N; ++v) {
        if (parent[v] == -1 && res[u][v] > 0) {
          parent[v] = int(u);
          queue.push_back(v);
        }
      }
    }
    if (parent[T] == -1) break;
    Rational aug = inf;
    for (size_t v = T; v != S; v = size_t(parent[v])) aug = std::min(aug, res[parent[v]][v]);
    for (size_t v = T; v != S; v = size_t(parent[v])) {
      res[parent[v]][v] -= aug;
      res[v][parent[v]] += aug;
    }
    flow += aug;
  }
  return flow;
}

bool separates_sources_from_sinks(const Network& net, const DemandSpec& demand,
                                  const std::string& cutNode, const std::string& cutEdge) {
  if (!net.has_node(cutNode)) throw std::invalid_argument("unknown node \"" + cutNode + "\"");
  net.edge(cutEdge);
  // Reachability over the remaining edges.
  std::map<std::string, std::set<std::string>> adj;
  for (const auto& e : net.edges()) {
    if (e.id == cutEdge || e.from == cutNode || e.to == cutNode) continue;
    adj[e.from].insert(e.to);
  }
  for (const auto& s : demand.sources()) {
    const auto sinks = demand.sinks_for(s.id);
    if (sinks.empty()) continue;
    std::set<std::string> seen{s.node};
    std::deque<std::string> queue{s.node};
    while (!queue.empty()) {
      std::string v = queue.front();
      queue.pop_front();
      for (const auto& w : adj[v])
        if (seen.insert(w).second) queue.push_back(w);
    }
    if (s.node == cutNode) continue;  // the deleted node emits nothing
    for (const auto& v : sinks)
      if (v != cutNode && seen.count(v)) return false;
  }
  return true;
}

}  // namespace netcode
