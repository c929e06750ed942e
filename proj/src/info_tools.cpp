#include "netcode/info_tools.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace netcode {

DistributionTable::DistributionTable(std::vector<Variable> vars,
                                     std::map<std::vector<uint64_t>, Rational> probs)
    : vars_(std::move(vars)), probs_(std::move(probs)) {
  Rational total(0);
  for (const auto& [outcome, p] : probs_) {
    if (outcome.size() != vars_.size())
      throw std::invalid_argument("outcome arity does not match variable count");
    for (size_t i = 0; i < outcome.size(); ++i)
      if (outcome[i] >= vars_[i].alphabetSize)
        throw std::invalid_argument("outcome exceeds alphabet of \"" + vars_[i].name + "\"");
    if (p < 0) throw std::invalid_argument("negative probability");
    total += p;
  }
  if (total != 1) throw std::invalid_argument("probabilities sum to " + format_rational(total));
}

std::vector<size_t> DistributionTable::indices_of(const std::vector<std::string>& names) const {
  std::vector<size_t> idx;
  for (const auto& name : names) {
    bool found = false;
    for (size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i].name == name) {
        idx.push_back(i);
        found = true;
        break;
      }
    }
    if (!found) throw std::invalid_argument("unknown variable \"" + name + "\"");
  }
  return idx;
}

DistributionTable DistributionTable::marginal(const std::vector<std::string>& names) const {
  auto idx = indices_of(names);
  std::vector<Variable> vars;
  for (size_t i : idx) vars.push_back(vars_[i]);
  std::map<std::vector<uint64_t>, Rational> probs;
  for (const auto& [outcome, p] : probs_) {
    std::vector<uint64_t> projected;
    projected.reserve(idx.size());
    for (size_t i : idx) projected.push_back(outcome[i]);
    probs[projected] += p;
  }
  return DistributionTable(std::move(vars), std::move(probs));
}

DistributionTable DistributionTable::conditioned(const std::string& var, uint64_t value) const {
  size_t at = indices_of({var}).front();
  Rational mass(0);
  for (const auto& [outcome, p] : probs_)
    if (outcome[at] == value) mass += p;
  if (mass == 0) throw std::invalid_argument("conditioning on a zero-probability value");
  std::vector<Variable> vars;
  for (size_t i = 0; i < vars_.size(); ++i)
    if (i != at) vars.push_back(vars_[i]);
  std::map<std::vector<uint64_t>, Rational> probs;
  for (const auto& [outcome, p] : probs_) {
    if (outcome[at] != value || p == 0) continue;
    std::vector<uint64_t> rest;
    for (size_t i = 0; i < outcome.size(); ++i)
      if (i != at) rest.push_back(outcome[i]);
    probs[rest] += p / mass;
  }
  return DistributionTable(std::move(vars), std::move(probs));
}

std::vector<uint64_t> DistributionTable::support(const std::string& var) const {
  size_t at = indices_of({var}).front();
  std::set<uint64_t> values;
  for (const auto& [outcome, p] : probs_)
    if (p > 0) values.insert(outcome[at]);
  return {values.begin(), values.end()};
}

std::string DistributionTable::to_csv() const {
  std::ostringstream out;
  for (size_t i = 0; i < vars_.size(); ++i) out << vars_[i].name << ",";
  out << "p\n";
  for (const auto& [outcome, p] : probs_) {
    for (uint64_t v : outcome) out << v << ",";
    out << format_rational(p) << "\n";
  }
  return out.str();
}

DistributionTable DistributionTable::from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty distribution csv");
  std::vector<std::string> names;
  {
    std::istringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) names.push_back(cell);
  }
  if (names.empty() || names.back() != "p")
    throw std::invalid_argument("distribution csv: last column must be \"p\"");
  names.pop_back();
  std::vector<Variable> vars;
  for (const auto& n : names) vars.push_back({n, 0});
  std::map<std::vector<uint64_t>, Rational> probs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<uint64_t> outcome;
    for (size_t i = 0; i < vars.size(); ++i) {
      if (!std::getline(row, cell, ',')) throw std::invalid_argument("distribution csv: short row");
      outcome.push_back(std::stoull(cell));
      vars[i].alphabetSize = std::max(vars[i].alphabetSize, outcome.back() + 1);
    }
    if (!std::getline(row, cell, ',')) throw std::invalid_argument("distribution csv: missing p");
    probs[outcome] += parse_rational(cell);
  }
  return DistributionTable(std::move(vars), std::move(probs));
}

namespace {

double entropy_of_groups(const std::map<std::vector<uint64_t>, Rational>& grouped) {
  double h = 0.0;
  for (const auto& [outcome, p] : grouped) {
    if (p == 0) continue;
    double pd = to_double(p);
    h -= pd * std::log2(pd);
  }
  return h;
}

double joint_entropy(const DistributionTable& d, const std::vector<std::string>& vars) {
  if (vars.empty()) return 0.0;
  auto idx = d.indices_of(vars);
  std::map<std::vector<uint64_t>, Rational> grouped;
  for (const auto& [outcome, p] : d.probabilities()) {
    std::vector<uint64_t> key;
    key.reserve(idx.size());
    for (size_t i : idx) key.push_back(outcome[i]);
    grouped[key] += p;
  }
  return entropy_of_groups(grouped);
}

std::vector<std::string> concat(const std::vector<std::string>& a,
                                const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

void require_disjoint(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  for (const auto& x : a)
    for (const auto& y : b)
      if (x == y) throw std::invalid_argument("variable groups overlap on \"" + x + "\"");
}

double clamp_nonneg(double v) { return v < 0 ? 0.0 : v; }

}  // namespace

double entropy(const DistributionTable& d, const std::vector<std::string>& vars) {
  return joint_entropy(d, vars);
}

double conditional_entropy(const DistributionTable& d, const std::vector<std::string>& a,
                           const std::vector<std::string>& b) {
  require_disjoint(a, b);
  return clamp_nonneg(joint_entropy(d, concat(a, b)) - joint_entropy(d, b));
}

double mutual_information(const DistributionTable& d, const std::vector<std::string>& a,
                          const std::vector<std::string>& b) {
  require_disjoint(a, b);
  return clamp_nonneg(joint_entropy(d, a) + joint_entropy(d, b) - joint_entropy(d, concat(a, b)));
}

double conditional_mutual_information(const DistributionTable& d,
                                      const std::vector<std::string>& a,
                                      const std::vector<std::string>& b,
                                      const std::vector<std::string>& c) {
  require_disjoint(a, b);
  require_disjoint(a, c);
  require_disjoint(b, c);
  return clamp_nonneg(joint_entropy(d, concat(a, c)) + joint_entropy(d, concat(b, c)) -
                      joint_entropy(d, c) - joint_entropy(d, concat(concat(a, b), c)));
}

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("binary_entropy: p outside [0,1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double fano_upper_bound(double pErr, double messageBits) {
  if (messageBits < 0) throw std::invalid_argument("fano_upper_bound: negative message size");
  return binary_entropy(pErr) + pErr * messageBits;
}

TerminalBoundReport terminal_node_bound_check(const DistributionTable& d, double nDelta) {
  if (d.variables().size() < 2)
    throw std::invalid_argument("terminal_node_bound_check: need the message and one link");
  std::vector<std::string> message{d.variables().front().name};
  std::string first = d.variables()[1].name;
  std::vector<std::string> rest;
  for (size_t i = 2; i < d.variables().size(); ++i) rest.push_back(d.variables()[i].name);

  TerminalBoundReport rep;
  rep.hFirst = entropy(d, {first});
  rep.nDelta = nDelta;
  if (rep.hFirst > nDelta + 1e-9)
    throw std::invalid_argument("terminal_node_bound_check: H(W_1) exceeds n*delta");
  std::vector<std::string> all = rest;
  all.insert(all.begin(), first);
  rep.withoutFirst = mutual_information(d, message, rest);
  rep.withAll = mutual_information(d, message, all);
  rep.pass = rep.withoutFirst >= rep.withAll - nDelta - 1e-9;
  return rep;
}

size_t CodeEvaluator::total_message_bits() const {
  size_t total = 0;
  for (size_t b : messageBits) total += b;
  return total;
}

CodeEvaluator make_evaluator(const LinearNetworkCode& code) {
  CodeEvaluator ev;
  ev.blocklength = code.blocklength;
  for (const auto& s : code.demand.sources()) {
    ev.sources.push_back(s.id);
    ev.messageBits.push_back(message_bits(code, s.id));
  }
  std::vector<std::string> edgeIds;
  for (const auto& e : code.net.edges()) edgeIds.push_back(e.id);
  std::sort(edgeIds.begin(), edgeIds.end());
  for (const auto& id : edgeIds) {
    ev.edgeIds.push_back(id);
    ev.edgeBits.push_back(edge_bits(code, code.net.edge(id)));
  }
  for (const auto& [node, wanted] : code.demand.demands())
    for (const auto& s : wanted) {
      ev.reconKeys.push_back({node, s});
      ev.reconBits.push_back(message_bits(code, s));
    }

  // Copy the code once; simulation itself is pure.
  auto shared = std::make_shared<LinearNetworkCode>(code);
  auto sources = ev.sources;
  auto messageBits = ev.messageBits;
  auto evEdgeIds = ev.edgeIds;
  auto reconKeys = ev.reconKeys;
  ev.eval = [shared, sources, messageBits, evEdgeIds, reconKeys](
                const std::vector<uint64_t>& msgs, std::vector<uint64_t>& edgeVals,
                std::vector<uint64_t>& recons) {
    std::map<std::string, BitVec> messages;
    for (size_t i = 0; i < sources.size(); ++i)
      messages[sources[i]] = index_to_bitvec(msgs[i], messageBits[i]);
    SimulationResult sim = simulate_code(*shared, messages);
    edgeVals.clear();
    for (const auto& id : evEdgeIds) edgeVals.push_back(bitvec_to_index(sim.edgeWords.at(id)));
    recons.clear();
    for (const auto& key : reconKeys)
      recons.push_back(bitvec_to_index(sim.reconstructions.at(key)));
  };
  return ev;
}

CodeEvaluator fix_sources_to_zero(const CodeEvaluator& ev, const std::set<std::string>& sources) {
  CodeEvaluator out = ev;
  std::vector<size_t> fixed;
  for (size_t i = 0; i < ev.sources.size(); ++i) {
    if (sources.count(ev.sources[i])) {
      out.messageBits[i] = 0;
      fixed.push_back(i);
    }
  }
  auto inner = ev.eval;
  out.eval = [inner](const std::vector<uint64_t>& msgs, std::vector<uint64_t>& edgeVals,
                     std::vector<uint64_t>& recons) {
    // Zero-width messages are already zero; the original evaluator accepts
    // the same tuple shape.
    inner(msgs, edgeVals, recons);
  };
  return out;
}

std::string msg_var(const std::string& source) { return "M:" + source; }
std::string edge_var(const std::string& edge) { return "W:" + edge; }
std::string recon_var(const std::string& node, const std::string& source) {
  return "Mhat:" + node + ":" + source;
}

DistributionTable induced_distribution(const CodeEvaluator& ev,
                                       const std::vector<std::string>& selection) {
  size_t totalBits = ev.total_message_bits();
  if (totalBits > 24)
    throw std::invalid_argument("induced_distribution: more than 24 message bits");

  // Resolve each selected name to an extractor index.
  enum class Kind { Message, EdgeWord, Recon };
  std::vector<std::pair<Kind, size_t>> extract;
  std::vector<Variable> vars;
  for (const auto& name : selection) {
    bool found = false;
    for (size_t i = 0; i < ev.sources.size() && !found; ++i)
      if (name == msg_var(ev.sources[i])) {
        extract.push_back({Kind::Message, i});
        vars.push_back({name, uint64_t(1) << ev.messageBits[i]});
        found = true;
      }
    for (size_t i = 0; i < ev.edgeIds.size() && !found; ++i)
      if (name == edge_var(ev.edgeIds[i])) {
        extract.push_back({Kind::EdgeWord, i});
        vars.push_back({name, uint64_t(1) << ev.edgeBits[i]});
        found = true;
      }
    for (size_t i = 0; i < ev.reconKeys.size() && !found; ++i)
      if (name == recon_var(ev.reconKeys[i].first, ev.reconKeys[i].second)) {
        extract.push_back({Kind::Recon, i});
        vars.push_back({name, uint64_t(1) << ev.reconBits[i]});
        found = true;
      }
    if (!found) throw std::invalid_argument("unknown code variable \"" + name + "\"");
  }

  std::map<std::vector<uint64_t>, uint64_t> counts;
  std::vector<uint64_t> msgs(ev.sources.size(), 0);
  std::vector<uint64_t> edgeVals, recons;
  uint64_t tuples = uint64_t(1) << totalBits;
  for (uint64_t t = 0; t < tuples; ++t) {
    uint64_t rest = t;
    for (size_t i = 0; i < msgs.size(); ++i) {
      msgs[i] = rest & ((uint64_t(1) << ev.messageBits[i]) - 1);
      rest >>= ev.messageBits[i];
    }
    ev.eval(msgs, edgeVals, recons);
    std::vector<uint64_t> outcome;
    outcome.reserve(extract.size());
    for (const auto& [kind, i] : extract) {
      switch (kind) {
        case Kind::Message: outcome.push_back(msgs[i]); break;
        case Kind::EdgeWord: outcome.push_back(edgeVals[i]); break;
        case Kind::Recon: outcome.push_back(recons[i]); break;
      }
    }
    ++counts[outcome];
  }
  std::map<std::vector<uint64_t>, Rational> probs;
  for (const auto& [outcome, c] : counts)
    probs[outcome] = Rational(static_cast<long long>(c), static_cast<long long>(tuples));
  return DistributionTable(std::move(vars), std::move(probs));
}

DistributionTable induced_distribution(const LinearNetworkCode& code,
                                       const std::vector<std::string>& selection) {
  return induced_distribution(make_evaluator(code), selection);
}

}  // namespace netcode
