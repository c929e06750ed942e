#include "netcode/cut_bounds.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace netcode {

std::string demand_type_name(DemandType t) {
  switch (t) {
    case DemandType::Multicast: return "multicast";
    case DemandType::MultiSourceMulticast: return "multiSourceMulticast";
    case DemandType::SingleSourceNonOverlapping: return "singleSourceNonOverlapping";
    case DemandType::SingleSourceNonOverlappingPlusMulticast:
      return "singleSourceNonOverlappingPlusMulticast";
  }
  return "?";
}

DemandType classify_demand(const Network& net, const DemandSpec& demand) {
  auto rep = validate_demand(net, demand);
  if (!rep.ok()) throw std::invalid_argument("invalid demand: " + rep.violations.front());
  const auto sinks = demand.sink_nodes();
  if (demand.sources().empty() || sinks.empty())
    throw std::invalid_argument("unsupported demand type: no sources or no sinks");

  std::set<std::string> all;
  for (const auto& s : demand.sources()) all.insert(s.id);

  bool everySinkWantsAll = true;
  for (const auto& v : sinks)
    if (demand.demanded_at(v) != all) everySinkWantsAll = false;
  if (everySinkWantsAll)
    return all.size() == 1 ? DemandType::Multicast : DemandType::MultiSourceMulticast;

  bool singleNode = true;
  for (const auto& s : demand.sources())
    if (s.node != demand.sources().front().node) singleNode = false;
  if (!singleNode)
    throw std::invalid_argument(
        "unsupported demand type: overlapping demands with distributed sources");

  // Shared part: sources every sink wants. Private part: sources wanted by
  // exactly one sink. Anything else is unsupported.
  std::set<std::string> shared = all;
  std::map<std::string, int> wantCount;
  for (const auto& v : sinks) {
    auto wanted = demand.demanded_at(v);
    for (auto it = shared.begin(); it != shared.end();)
      it = wanted.count(*it) ? std::next(it) : shared.erase(it);
    for (const auto& s : wanted) ++wantCount[s];
  }
  for (const auto& s : all) {
    bool isShared = shared.count(s) > 0;
    int count = wantCount.count(s) ? wantCount.at(s) : 0;
    if (!isShared && count > 1)
      throw std::invalid_argument("unsupported demand type: source \"" + s +
                                  "\" demanded by several sinks but not by all");
    if (count == 0)
      throw std::invalid_argument("unsupported demand type: source \"" + s + "\" never demanded");
  }
  if (shared.empty() || sinks.size() == 1) return DemandType::SingleSourceNonOverlapping;
  return DemandType::SingleSourceNonOverlappingPlusMulticast;
}

namespace {

Rational flow_bound(const Network& net, const std::set<std::string>& srcNodes,
                    const std::set<std::string>& sinkNodes) {
  return max_flow(net, srcNodes, sinkNodes);
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ",";
    out += parts[i];
  }
  return out;
}

void add_constraint(CutsetRegion& region, const Network& net, const DemandSpec& demand,
                    std::vector<std::string> sources, std::vector<std::string> sinkNodes) {
  std::sort(sources.begin(), sources.end());
  std::sort(sinkNodes.begin(), sinkNodes.end());
  std::set<std::string> srcNodes, dstNodes(sinkNodes.begin(), sinkNodes.end());
  for (const auto& s : sources) srcNodes.insert(demand.source(s).node);
  for (const auto& n : srcNodes)
    if (dstNodes.count(n)) return;  // source available at the sink: no constraint
  CutsetConstraint c;
  c.sources = std::move(sources);
  c.sinkNodes = std::move(sinkNodes);
  c.bound = flow_bound(net, srcNodes, dstNodes);
  c.label = "R[" + join(c.sources) + "] <= flow(" + join(c.sinkNodes) + ")";
  region.constraints.push_back(std::move(c));
}

}  // namespace

CutsetRegion cutset_region(const Network& net, const DemandSpec& demand) {
  CutsetRegion region;
  region.type = classify_demand(net, demand);
  for (const auto& s : demand.sources()) region.sourceOrder.push_back(s.id);
  const auto sinks = demand.sink_nodes();

  switch (region.type) {
    case DemandType::Multicast: {
      const std::string& s = demand.sources().front().id;
      for (const auto& v : sinks) add_constraint(region, net, demand, {s}, {v});
      break;
    }
    case DemandType::MultiSourceMulticast: {
      size_t k = demand.sources().size();
      if (k > 16) throw std::invalid_argument("cutset_region: too many sources");
      for (const auto& v : sinks) {
        std::vector<std::string> eligible;
        for (const auto& s : demand.sources())
          if (s.node != v) eligible.push_back(s.id);
        for (uint64_t mask = 1; mask < (uint64_t(1) << eligible.size()); ++mask) {
          std::vector<std::string> subset;
          for (size_t i = 0; i < eligible.size(); ++i)
            if ((mask >> i) & 1) subset.push_back(eligible[i]);
          add_constraint(region, net, demand, subset, {v});
        }
      }
      break;
    }
    case DemandType::SingleSourceNonOverlapping:
    case DemandType::SingleSourceNonOverlappingPlusMulticast: {
      const std::string v0 = demand.sources().front().node;
      std::vector<std::string> eligibleSinks;
      for (const auto& v : sinks)
        if (v != v0) eligibleSinks.push_back(v);
      if (eligibleSinks.size() > 16) throw std::invalid_argument("cutset_region: too many sinks");
      std::set<std::string> shared;
      if (region.type == DemandType::SingleSourceNonOverlappingPlusMulticast) {
        shared.insert(region.sourceOrder.begin(), region.sourceOrder.end());
        for (const auto& v : sinks) {
          auto wanted = demand.demanded_at(v);
          for (auto it = shared.begin(); it != shared.end();)
            it = wanted.count(*it) ? std::next(it) : shared.erase(it);
        }
      }
      for (uint64_t mask = 1; mask < (uint64_t(1) << eligibleSinks.size()); ++mask) {
        std::vector<std::string> group;
        std::set<std::string> sourcesWanted(shared.begin(), shared.end());
        for (size_t i = 0; i < eligibleSinks.size(); ++i) {
          if (!((mask >> i) & 1)) continue;
          group.push_back(eligibleSinks[i]);
          for (const auto& s : demand.demanded_at(eligibleSinks[i])) sourcesWanted.insert(s);
        }
        add_constraint(region, net, demand,
                       {sourcesWanted.begin(), sourcesWanted.end()}, group);
      }
      break;
    }
  }
  return region;
}

bool region_membership(const CutsetRegion& region, const std::map<std::string, Rational>& rates) {
  for (const auto& s : region.sourceOrder)
    if (!rates.count(s)) throw std::invalid_argument("rate vector missing source \"" + s + "\"");
  for (const auto& c : region.constraints) {
    Rational total(0);
    for (const auto& s : c.sources) total += rates.at(s);
    if (total > c.bound) return false;
  }
  return true;
}

namespace {

// Deterministic points inside the region: a random nonnegative direction is
// scaled onto the boundary, then shrunk by j/8. Exact rationals.
std::vector<std::map<std::string, Rational>> sample_region_points(const CutsetRegion& region,
                                                                  int count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(0, 64);
  std::vector<std::map<std::string, Rational>> points;
  while (int(points.size()) < count) {
    std::map<std::string, Rational> dir;
    bool allZero = true;
    for (const auto& s : region.sourceOrder) {
      int c = coord(rng);
      dir[s] = Rational(c, 64);
      if (c) allZero = false;
    }
    if (allZero) dir[region.sourceOrder.front()] = Rational(1);
    // Largest t with t*dir inside the region.
    bool unbounded = true;
    Rational t(0);
    for (const auto& c : region.constraints) {
      Rational along(0);
      for (const auto& s : c.sources) along += dir.at(s);
      if (along == 0) continue;
      Rational limit = c.bound / along;
      if (unbounded || limit < t) t = limit;
      unbounded = false;
    }
    if (unbounded) t = Rational(1);
    int shrink = int(points.size()) % 9;  // 0/8 .. 8/8, includes the boundary
    for (auto& [s, v] : dir) v = v * t * Rational(shrink, 8);
    points.push_back(dir);
  }
  return points;
}

}  // namespace

RobustnessReport check_delta_robustness(const Network& net, const DemandSpec& demand,
                                        const std::string& edge, const Rational& delta,
                                        int samplePoints, uint64_t seed) {
  RobustnessReport rep;
  rep.edge = edge;
  rep.delta = delta;

  CutsetRegion before = cutset_region(net, demand);
  Network reduced = reduce_edge(net, edge, delta);
  CutsetRegion after = cutset_region(reduced, demand);
  if (before.constraints.size() != after.constraints.size())
    throw std::logic_error("check_delta_robustness: constraint families diverged");

  rep.pass = true;
  for (size_t i = 0; i < before.constraints.size(); ++i) {
    const auto& a = before.constraints[i];
    const auto& b = after.constraints[i];
    if (a.label != b.label)
      throw std::logic_error("check_delta_robustness: constraint order diverged");
    bool ok = b.bound >= a.bound - delta;
    rep.constraintChecks.push_back({a.label, a.bound, b.bound, ok});
    if (!ok) rep.pass = false;
  }

  for (const auto& point : sample_region_points(before, samplePoints, seed)) {
    ++rep.pointsChecked;
    std::map<std::string, Rational> shifted;
    for (const auto& [s, v] : point) shifted[s] = std::max(v - delta, Rational(0));
    if (!region_membership(after, shifted)) {
      ++rep.pointFailures;
      rep.pass = false;
    }
  }
  return rep;
}

}  // namespace netcode
