#include "netcode/regions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace netcode {

bool RateRegion::contains(const std::vector<double>& r, double tol) const {
  if (r.size() != dimension) throw std::invalid_argument("rate vector has wrong dimension");
  for (const auto& ineq : inequalities) {
    double sum = 0.0;
    for (size_t i : ineq.subset) sum += r[i] - offset[i];
    if (sum > ineq.bound + tol) return false;
  }
  return true;
}

namespace {

std::string subset_label(const std::vector<std::string>& names, const std::vector<size_t>& subset) {
  std::string out = "{";
  for (size_t i = 0; i < subset.size(); ++i) {
    if (i) out += ",";
    out += names[subset[i]];
  }
  return out + "}";
}

}  // namespace

RateRegion mac_region_from_code(const DistributionTable& d) {
  std::vector<std::string> senders, output;
  for (const auto& v : d.variables()) {
    if (v.name.rfind("M:", 0) == 0)
      senders.push_back(v.name);
    else
      output.push_back(v.name);
  }
  if (senders.empty()) throw std::invalid_argument("mac_region_from_code: no message variables");
  if (senders.size() > 16) throw std::invalid_argument("mac_region_from_code: more than 16 senders");

  double sumH = 0.0;
  for (const auto& m : senders) sumH += entropy(d, {m});
  if (std::abs(entropy(d, senders) - sumH) > 1e-9)
    throw std::invalid_argument("mac_region_from_code: messages are not independent");

  RateRegion region;
  region.dimension = senders.size();
  for (const auto& m : senders) region.labels.push_back(m.substr(2));
  region.offset.assign(region.dimension, 0.0);
  for (uint64_t mask = 1; mask < (uint64_t(1) << senders.size()); ++mask) {
    RegionInequality ineq;
    std::vector<std::string> inSet, outSet;
    for (size_t i = 0; i < senders.size(); ++i) {
      if ((mask >> i) & 1) {
        ineq.subset.push_back(i);
        inSet.push_back(senders[i]);
      } else {
        outSet.push_back(senders[i]);
      }
    }
    ineq.bound = conditional_mutual_information(d, inSet, output, outSet);
    ineq.label = "sum r" + subset_label(region.labels, ineq.subset) + " <= I(M_A;W|M_Ac)";
    region.inequalities.push_back(std::move(ineq));
  }
  return region;
}

std::vector<double> r_mac_vector(const DistributionTable& d) {
  std::vector<std::string> senders, output;
  for (const auto& v : d.variables()) {
    if (v.name.rfind("M:", 0) == 0)
      senders.push_back(v.name);
    else
      output.push_back(v.name);
  }
  std::vector<double> r;
  for (const auto& m : senders) r.push_back(mutual_information(d, {m}, output));
  return r;
}

namespace {

DistributionTable bc_output_table(const DeterministicBC& bc, const std::vector<Rational>& px) {
  if (px.size() != bc.inputAlphabet)
    throw std::invalid_argument("dbc: input distribution arity mismatch");
  std::vector<Variable> vars;
  std::vector<uint64_t> alphabets;
  for (size_t s = 0; s < bc.users(); ++s) {
    if (bc.functions[s].size() != bc.inputAlphabet)
      throw std::invalid_argument("dbc: function table arity mismatch");
    uint64_t top = 0;
    for (uint64_t y : bc.functions[s]) top = std::max(top, y);
    vars.push_back({"Y:" + std::to_string(s), top + 1});
  }
  std::map<std::vector<uint64_t>, Rational> probs;
  for (uint64_t x = 0; x < bc.inputAlphabet; ++x) {
    if (px[x] == 0) continue;
    std::vector<uint64_t> outcome;
    for (size_t s = 0; s < bc.users(); ++s) outcome.push_back(bc.functions[s][x]);
    probs[outcome] += px[x];
  }
  return DistributionTable(std::move(vars), std::move(probs));
}

}  // namespace

RateRegion dbc_region(const DeterministicBC& bc) { return dbc_region_at(bc, bc.inputDist); }

RateRegion dbc_region_at(const DeterministicBC& bc, const std::vector<Rational>& inputDist) {
  DistributionTable outputs = bc_output_table(bc, inputDist);
  size_t k = bc.users();
  if (k > 16) throw std::invalid_argument("dbc_region: more than 16 users");
  RateRegion region;
  region.dimension = k;
  for (size_t s = 0; s < k; ++s) region.labels.push_back(std::to_string(s));
  region.offset.assign(k, 0.0);
  for (uint64_t mask = 1; mask < (uint64_t(1) << k); ++mask) {
    RegionInequality ineq;
    std::vector<std::string> names;
    for (size_t s = 0; s < k; ++s)
      if ((mask >> s) & 1) {
        ineq.subset.push_back(s);
        names.push_back("Y:" + std::to_string(s));
      }
    ineq.bound = entropy(outputs, names);
    ineq.label = "sum R" + subset_label(region.labels, ineq.subset) + " <= H(Y_A)";
    region.inequalities.push_back(std::move(ineq));
  }
  return region;
}

RateRegion shift_region(const RateRegion& region, double delta) {
  RateRegion out = region;
  for (auto& o : out.offset) o += delta;
  return out;
}

RateRegion intersect(const RateRegion& a, const RateRegion& b) {
  if (a.dimension != b.dimension) throw std::invalid_argument("intersect: dimension mismatch");
  if (a.offset != b.offset)
    throw std::invalid_argument("intersect: regions carry different offsets; shift afterwards");
  RateRegion out = a;
  out.inequalities.insert(out.inequalities.end(), b.inequalities.begin(), b.inequalities.end());
  return out;
}

std::vector<std::vector<Rational>> grid_distributions(size_t alphabet, long gridDenom) {
  std::vector<std::vector<Rational>> out;
  std::vector<long> current(alphabet, 0);
  // Compositions of gridDenom into `alphabet` nonnegative parts.
  std::function<void(size_t, long)> recurse = [&](size_t at, long remaining) {
    if (at + 1 == alphabet) {
      current[at] = remaining;
      std::vector<Rational> dist;
      for (long c : current) dist.emplace_back(c, gridDenom);
      out.push_back(std::move(dist));
      return;
    }
    for (long c = 0; c <= remaining; ++c) {
      current[at] = c;
      recurse(at + 1, remaining - c);
    }
  };
  if (alphabet > 0) recurse(0, gridDenom);
  return out;
}

bool dbc_member_any(const DeterministicBC& bc,
                    const std::vector<std::vector<Rational>>& candidates,
                    const std::vector<double>& r, double tol) {
  for (const auto& px : candidates)
    if (dbc_region_at(bc, px).contains(r, tol)) return true;
  return false;
}

bool CorollaryOuterBound::contains(const std::map<std::string, Rational>& rates) const {
  std::map<std::string, Rational> shifted;
  for (const auto& s : sourceOrder) {
    auto it = rates.find(s);
    if (it == rates.end()) throw std::invalid_argument("rate vector missing source \"" + s + "\"");
    shifted[s] = it->second - delta;
  }
  return region_membership(intoA, shifted) && region_membership(fromA, shifted);
}

RateRegion CorollaryOuterBound::as_rate_region() const {
  RateRegion region;
  region.dimension = sourceOrder.size();
  region.labels = sourceOrder;
  region.offset.assign(region.dimension, to_double(delta));
  std::map<std::string, size_t> at;
  for (size_t i = 0; i < sourceOrder.size(); ++i) at[sourceOrder[i]] = i;
  for (const CutsetRegion* part : {&intoA, &fromA}) {
    for (const auto& c : part->constraints) {
      RegionInequality ineq;
      for (const auto& s : c.sources) ineq.subset.push_back(at.at(s));
      ineq.bound = to_double(c.bound);
      ineq.label = c.label;
      region.inequalities.push_back(std::move(ineq));
    }
  }
  return region;
}

CorollaryOuterBound corollary_outer_bound(const Network& net, const DemandSpec& demand,
                                          const std::string& nodeA, const std::string& edgeE) {
  if (!separates_sources_from_sinks(net, demand, nodeA, edgeE))
    throw std::invalid_argument("corollary_outer_bound: node \"" + nodeA + "\" and edge \"" +
                                edgeE + "\" do not separate sources from sinks");
  const Edge& e = net.edge(edgeE);
  Network stripped = reduce_edge(net, edgeE, e.capacity);

  CorollaryOuterBound out;
  out.delta = e.capacity;
  for (const auto& s : demand.sources()) out.sourceOrder.push_back(s.id);

  // R_1: every source multicast to node a over the stripped network.
  std::map<std::string, std::set<std::string>> demandAtA;
  std::set<std::string> all(out.sourceOrder.begin(), out.sourceOrder.end());
  demandAtA[nodeA] = all;
  DemandSpec toA(demand.sources(), demandAtA);
  out.intoA = cutset_region(stripped, toA);

  // R_2: sources relocated to node a, original (non-overlapping) demands.
  std::vector<SourceSpec> atA;
  for (const auto& s : demand.sources()) atA.push_back({s.id, nodeA, s.rate});
  DemandSpec fromA(atA, demand.demands());
  out.fromA = cutset_region(stripped, fromA);
  return out;
}

}  // namespace netcode
