#include "netcode/theorem_verifier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace netcode {

namespace {

constexpr double kTol = 1e-9;

void require_k_unicast(const DemandSpec& demand) {
  std::map<std::string, int> demandedBy;
  for (const auto& [node, wanted] : demand.demands()) {
    if (wanted.empty()) continue;
    if (wanted.size() != 1)
      throw std::invalid_argument("instance is not k-unicast: node \"" + node +
                                  "\" demands several sources");
    ++demandedBy[*wanted.begin()];
  }
  for (const auto& s : demand.sources())
    if (demandedBy[s.id] != 1)
      throw std::invalid_argument("instance is not k-unicast: source \"" + s.id +
                                  "\" demanded by " + std::to_string(demandedBy[s.id]) +
                                  " sinks");
}

std::vector<std::string> message_vars(const CodeEvaluator& ev) {
  std::vector<std::string> names;
  for (const auto& s : ev.sources) names.push_back(msg_var(s));
  return names;
}

std::vector<std::string> recon_vars(const CodeEvaluator& ev) {
  std::vector<std::string> names;
  for (const auto& [node, s] : ev.reconKeys) names.push_back(recon_var(node, s));
  return names;
}

std::vector<std::string> incident_edge_vars(const Network& net, const std::string& node,
                                            bool incoming) {
  std::vector<std::string> names;
  for (const Edge* e : incoming ? net.in_edges(node) : net.out_edges(node))
    names.push_back(edge_var(e->id));
  return names;
}

// n * delta in bits.
double scaled_delta(const CodeEvaluator& ev, const Rational& delta) {
  return to_double(delta) * double(ev.blocklength);
}

}  // namespace

bool check_structure(const Network& net, const DemandSpec& demand, const std::string& nodeA,
                     const std::string& edgeE) {
  return separates_sources_from_sinks(net, demand, nodeA, edgeE);
}

MacStepReport verify_mac_step(const CodeEvaluator& ev, const Network& net,
                              const DemandSpec& demand, const std::string& nodeA,
                              const Rational& delta) {
  MacStepReport rep;
  rep.sources = ev.sources;

  auto selection = message_vars(ev);
  auto wIn = incident_edge_vars(net, nodeA, /*incoming=*/true);
  selection.insert(selection.end(), wIn.begin(), wIn.end());
  DistributionTable joint = induced_distribution(ev, selection);

  RateRegion region = mac_region_from_code(joint);
  rep.rMac = r_mac_vector(joint);

  rep.pass = true;
  for (const auto& ineq : region.inequalities) {
    double sum = 0.0;
    for (size_t i : ineq.subset) sum += rep.rMac[i];
    bool ok = sum <= ineq.bound + kTol;
    rep.regionChecks.push_back({ineq.label, sum, ineq.bound, ineq.bound - sum, ok});
    if (!ok) rep.pass = false;
  }

  // Per-source error probabilities, exact, then epsilon.
  for (size_t i = 0; i < ev.sources.size(); ++i) {
    const auto& s = ev.sources[i];
    auto sinks = demand.sinks_for(s);
    if (sinks.size() != 1)
      throw std::invalid_argument("verify_mac_step: source \"" + s + "\" is not a unicast");
    DistributionTable pair = induced_distribution(ev, {msg_var(s), recon_var(sinks.front(), s)});
    Rational perr(0);
    for (const auto& [outcome, p] : pair.probabilities())
      if (outcome[0] != outcome[1]) perr += p;
    double pe = to_double(perr);
    rep.errorProb.push_back(pe);
    rep.epsilon = std::max(rep.epsilon, std::max(pe, binary_entropy(pe)));
  }

  for (size_t i = 0; i < ev.sources.size(); ++i) {
    double nRs = double(ev.messageBits[i]);
    double bound = (nRs - scaled_delta(ev, delta)) - nRs * rep.epsilon - rep.epsilon;
    bool ok = rep.rMac[i] >= bound - kTol;
    rep.rateChecks.push_back(
        {"I(M:" + ev.sources[i] + ";W_i) >= n(R-d) - nR*eps - eps", rep.rMac[i], bound,
         rep.rMac[i] - bound, ok});
    if (!ok) rep.pass = false;
  }
  return rep;
}

std::pair<uint64_t, double> choose_w_e(const DistributionTable& d) {
  const std::string weVar = d.variables().front().name;
  std::vector<std::string> rest;
  for (size_t i = 1; i < d.variables().size(); ++i) rest.push_back(d.variables()[i].name);
  bool first = true;
  uint64_t best = 0;
  double bestH = 0.0;
  for (uint64_t w : d.support(weVar)) {
    double h = entropy(d.conditioned(weVar, w), rest);
    if (first || h > bestH + kTol) {
      best = w;
      bestH = h;
      first = false;
    }
  }
  if (first) throw std::invalid_argument("choose_w_e: empty support");
  return {best, bestH};
}

BcStepReport verify_bc_step(const CodeEvaluator& ev, const Network& net, const DemandSpec& demand,
                            const std::string& nodeA, const std::string& edgeE,
                            const Rational& delta, double epsilon, uint64_t wE) {
  (void)demand;
  BcStepReport rep;
  rep.chosenWe = wE;

  std::vector<std::string> selection{edge_var(edgeE)};
  auto wOut = incident_edge_vars(net, nodeA, /*incoming=*/false);
  auto mhat = recon_vars(ev);
  selection.insert(selection.end(), wOut.begin(), wOut.end());
  selection.insert(selection.end(), mhat.begin(), mhat.end());
  DistributionTable joint = induced_distribution(ev, selection);

  rep.averageEntropy = conditional_entropy(joint, mhat, {edge_var(edgeE)});
  DistributionTable given = joint.conditioned(edge_var(edgeE), wE);
  rep.chosenEntropy = entropy(given, mhat);

  // Group by the W_o tuple: a deterministic broadcast channel needs a
  // single Mhat tuple per input.
  std::map<std::vector<uint64_t>, std::pair<std::vector<uint64_t>, Rational>> byInput;
  rep.deterministic = true;
  for (const auto& [outcome, p] : given.probabilities()) {
    if (p == 0) continue;
    std::vector<uint64_t> x(outcome.begin(), outcome.begin() + wOut.size());
    std::vector<uint64_t> y(outcome.begin() + wOut.size(), outcome.end());
    auto it = byInput.find(x);
    if (it == byInput.end())
      byInput.emplace(x, std::make_pair(y, p));
    else if (it->second.first != y)
      rep.deterministic = false;
    else
      it->second.second += p;
  }
  if (!rep.deterministic) {
    rep.pass = false;
    return rep;
  }

  // Inputs of the broadcast channel are the observed W_o tuples, re-indexed
  // in ascending tuple order.
  DeterministicBC bc;
  bc.inputAlphabet = byInput.size();
  bc.functions.assign(ev.reconKeys.size(), {});
  for (const auto& [input, val] : byInput) {
    for (size_t s = 0; s < ev.reconKeys.size(); ++s) bc.functions[s].push_back(val.first[s]);
    bc.inputDist.push_back(val.second);
  }
  RateRegion region = dbc_region(bc);

  double sumBits = 0.0;
  for (size_t b : ev.messageBits) sumBits += double(b);
  double k = double(ev.sources.size());
  double nDelta = scaled_delta(ev, delta);
  double slack = sumBits * epsilon + k * epsilon;

  // DBC user i is reconKeys[i]; map it back to its source's message size.
  std::vector<double> userBits;
  for (const auto& [node, s] : ev.reconKeys) {
    auto at = std::find(ev.sources.begin(), ev.sources.end(), s);
    userBits.push_back(double(ev.messageBits[size_t(at - ev.sources.begin())]));
  }

  rep.pass = true;
  for (const auto& ineq : region.inequalities) {
    double subsetBits = 0.0, target = 0.0;
    for (size_t i : ineq.subset) {
      subsetBits += userBits[i];
      target += std::max(userBits[i] - nDelta, 0.0);
    }
    double chainBound = subsetBits - slack - nDelta;
    bool chainOk = ineq.bound >= chainBound - kTol;
    rep.chainChecks.push_back(
        {"H(Mhat_A|w_e) >= nR_A - slack - nd " + ineq.label, ineq.bound, chainBound,
         ineq.bound - chainBound, chainOk});
    bool targetOk = target <= ineq.bound + slack + kTol;
    rep.targetChecks.push_back({"n(R-d)^+ in dbc " + ineq.label, target, ineq.bound,
                                ineq.bound - target, targetOk});
    if (!chainOk || !targetOk) rep.pass = false;
  }
  return rep;
}

TheoremReport verify_theorem(const CodeEvaluator& ev, const Network& net,
                             const DemandSpec& demand, const std::string& nodeA,
                             const std::string& edgeE) {
  require_k_unicast(demand);
  TheoremReport rep;
  rep.structureOk = check_structure(net, demand, nodeA, edgeE);
  if (!rep.structureOk)
    throw std::invalid_argument("verify_theorem: node \"" + nodeA + "\" plus edge \"" + edgeE +
                                "\" do not separate sources from sinks");
  rep.delta = net.edge(edgeE).capacity;

  // Sources at or below delta transmit constants through the whole pipeline.
  std::set<std::string> degenerate;
  double nDelta = scaled_delta(ev, rep.delta);
  for (size_t i = 0; i < ev.sources.size(); ++i)
    if (double(ev.messageBits[i]) <= nDelta + kTol) degenerate.insert(ev.sources[i]);
  rep.degenerate.assign(degenerate.begin(), degenerate.end());
  CodeEvaluator fixed = fix_sources_to_zero(ev, degenerate);

  rep.mac = verify_mac_step(fixed, net, demand, nodeA, rep.delta);

  std::vector<std::string> selection{edge_var(edgeE)};
  auto mhat = recon_vars(fixed);
  selection.insert(selection.end(), mhat.begin(), mhat.end());
  auto [wE, hGiven] = choose_w_e(induced_distribution(fixed, selection));
  rep.chosenWe = wE;
  (void)hGiven;

  rep.bc = verify_bc_step(fixed, net, demand, nodeA, edgeE, rep.delta, rep.mac.epsilon, wE);
  rep.pass = rep.mac.pass && rep.bc.pass &&
             rep.bc.chosenEntropy >= rep.bc.averageEntropy - kTol;
  return rep;
}

TheoremReport verify_theorem(const TheoremInstance& inst) {
  return verify_theorem(make_evaluator(inst.code), inst.code.net, inst.code.demand, inst.nodeA,
                        inst.edgeE);
}

}  // namespace netcode
