#include "netcode/oracle_search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace netcode {

CodeMode parse_code_mode(const std::string& text) {
  if (text == "linear") return CodeMode::Linear;
  if (text == "all") return CodeMode::All;
  throw std::invalid_argument("unknown code mode \"" + text + "\" (expected linear|all)");
}

std::string code_mode_name(CodeMode mode) {
  return mode == CodeMode::Linear ? "linear" : "all";
}

namespace {

size_t scaled_to_bits(int n, const Rational& value, const std::string& what) {
  Rational scaled = value * n;
  if (scaled.denominator() != 1 || scaled.numerator() < 0)
    throw std::invalid_argument(what + " is not a nonnegative whole number of bits at n=" +
                                std::to_string(n));
  return size_t(scaled.numerator());
}

}  // namespace

CodeEnumerator::CodeEnumerator(const Network& net, const DemandSpec& demand, int n, CodeMode mode,
                               uint64_t budget)
    : n_(n), mode_(mode) {
  for (const auto& s : demand.sources()) {
    sources_.push_back(s.id);
    messageBits_.push_back(scaled_to_bits(n, s.rate, "rate of source \"" + s.id + "\""));
    totalMessageBits_ += messageBits_.back();
  }
  if (totalMessageBits_ > 8)
    throw std::invalid_argument("oracle: more than 8 total message bits per use");

  std::map<std::string, size_t> sourceIndex, edgeIndex;
  for (size_t i = 0; i < sources_.size(); ++i) sourceIndex[sources_[i]] = i;

  auto parts_for_node = [&](const std::string& node) {
    std::vector<EdgeSlot::Part> parts;
    for (const auto& s : demand.sources_at(node))
      parts.push_back({true, sourceIndex.at(s), messageBits_.at(sourceIndex.at(s))});
    for (const Edge* in : net.in_edges(node)) {
      size_t idx = edgeIndex.at(in->id);
      parts.push_back({false, idx, slots_[idx].outBits});
    }
    return parts;
  };

  double log2Total = 0.0;
  for (const auto& node : topological_order(net)) {
    for (const Edge* e : net.out_edges(node)) {
      EdgeSlot slot;
      slot.id = e->id;
      slot.outBits = scaled_to_bits(n, e->capacity, "capacity of edge \"" + e->id + "\"");
      slot.parts = parts_for_node(node);
      slot.inBits = 0;
      for (const auto& p : slot.parts) slot.inBits += p.bits;
      double log2Choices = mode_ == CodeMode::Linear
                               ? double(slot.outBits) * double(slot.inBits)
                               : double(slot.outBits) * std::pow(2.0, double(slot.inBits));
      log2Total += log2Choices;
      if (log2Total > std::log2(double(budget)) + 1e-12) throw BudgetExceeded(log2Total);
      slot.choices = uint64_t(1) << uint64_t(log2Choices);
      edgeIndex[e->id] = slots_.size();
      slots_.push_back(std::move(slot));
      edgeOrder_.push_back(e->id);
    }
  }
  total_ = 1;
  for (const auto& slot : slots_) total_ *= slot.choices;

  for (const auto& [node, wanted] : demand.demands()) {
    for (const auto& s : wanted) {
      SinkCheck chk;
      chk.node = node;
      chk.source = s;
      chk.sourceIndex = sourceIndex.at(s);
      chk.parts = parts_for_node(node);
      chk.viewBits = 0;
      for (const auto& p : chk.parts) chk.viewBits += p.bits;
      if (chk.viewBits > 62)
        throw std::invalid_argument("oracle: sink view wider than 62 bits");
      checks_.push_back(std::move(chk));
    }
  }
}

uint64_t CodeEnumerator::edge_value(const EdgeSlot& slot, uint64_t choice,
                                    const std::vector<uint64_t>& msgs,
                                    const std::vector<uint64_t>& edgeVals) const {
  uint64_t input = 0;
  size_t off = 0;
  for (const auto& p : slot.parts) {
    input |= (p.isMessage ? msgs[p.index] : edgeVals[p.index]) << off;
    off += p.bits;
  }
  if (mode_ == CodeMode::All) {
    uint64_t mask = (slot.outBits >= 64) ? ~uint64_t(0) : ((uint64_t(1) << slot.outBits) - 1);
    return (choice >> (input * slot.outBits)) & mask;
  }
  // Linear: choice holds the matrix row-major, row r = output bit r.
  uint64_t out = 0;
  for (size_t r = 0; r < slot.outBits; ++r) {
    uint64_t rowMask = (choice >> (r * slot.inBits)) & ((uint64_t(1) << slot.inBits) - 1);
    out |= uint64_t(__builtin_parityll(rowMask & input)) << r;
  }
  return out;
}

void CodeEnumerator::run(uint64_t idx, const std::vector<uint64_t>& msgs,
                         std::vector<uint64_t>& edgeVals) const {
  edgeVals.resize(slots_.size());
  for (size_t i = 0; i < slots_.size(); ++i) {
    uint64_t choice = idx % slots_[i].choices;
    idx /= slots_[i].choices;
    edgeVals[i] = edge_value(slots_[i], choice, msgs, edgeVals);
  }
}

bool CodeEnumerator::decodes(uint64_t idx) const {
  uint64_t tuples = uint64_t(1) << totalMessageBits_;
  // view -> decoded message, per check; 64 entries cover viewBits <= 6,
  // larger views fall back to a map.
  std::vector<std::map<uint64_t, uint64_t>> seen(checks_.size());
  std::vector<uint64_t> msgs(sources_.size());
  std::vector<uint64_t> edgeVals;
  for (uint64_t t = 0; t < tuples; ++t) {
    uint64_t rest = t;
    for (size_t i = 0; i < sources_.size(); ++i) {
      msgs[i] = rest & ((uint64_t(1) << messageBits_[i]) - 1);
      rest >>= messageBits_[i];
    }
    run(idx, msgs, edgeVals);
    for (size_t c = 0; c < checks_.size(); ++c) {
      const auto& chk = checks_[c];
      uint64_t view = 0;
      size_t off = 0;
      for (const auto& p : chk.parts) {
        view |= (p.isMessage ? msgs[p.index] : edgeVals[p.index]) << off;
        off += p.bits;
      }
      auto [it, inserted] = seen[c].try_emplace(view, msgs[chk.sourceIndex]);
      if (!inserted && it->second != msgs[chk.sourceIndex]) return false;
    }
  }
  return true;
}

GeneralCode CodeEnumerator::code_at(uint64_t idx) const {
  GeneralCode code;
  code.blocklength = n_;
  code.sources = sources_;
  code.messageBits = messageBits_;
  uint64_t rem = idx;
  std::vector<uint64_t> choices;
  for (const auto& slot : slots_) {
    choices.push_back(rem % slot.choices);
    rem /= slot.choices;
  }
  // Materialize encoder tables by evaluating every input. Inputs beyond a
  // slot's reachable set still get well-defined entries.
  std::vector<uint64_t> msgs(sources_.size());
  std::vector<uint64_t> edgeVals(slots_.size());
  for (size_t i = 0; i < slots_.size(); ++i) {
    const auto& slot = slots_[i];
    std::vector<uint64_t> table(uint64_t(1) << slot.inBits);
    for (uint64_t input = 0; input < table.size(); ++input) {
      // Unpack the input into message/edge scratch values.
      uint64_t rest = input;
      std::vector<uint64_t> m(sources_.size(), 0), ev(slots_.size(), 0);
      for (const auto& p : slot.parts) {
        uint64_t v = rest & ((uint64_t(1) << p.bits) - 1);
        rest >>= p.bits;
        (p.isMessage ? m[p.index] : ev[p.index]) = v;
      }
      table[input] = edge_value(slot, choices[i], m, ev);
    }
    code.encoderTables[slot.id] = std::move(table);
  }
  // Canonical decoders: map each reachable view to its message; unseen
  // views decode to 0.
  uint64_t tuples = uint64_t(1) << totalMessageBits_;
  for (const auto& chk : checks_) {
    std::vector<uint64_t> table(uint64_t(1) << chk.viewBits, 0);
    std::vector<uint8_t> known(table.size(), 0);
    for (uint64_t t = 0; t < tuples; ++t) {
      uint64_t rest = t;
      for (size_t i = 0; i < sources_.size(); ++i) {
        msgs[i] = rest & ((uint64_t(1) << messageBits_[i]) - 1);
        rest >>= messageBits_[i];
      }
      run(idx, msgs, edgeVals);
      uint64_t view = 0;
      size_t off = 0;
      for (const auto& p : chk.parts) {
        view |= (p.isMessage ? msgs[p.index] : edgeVals[p.index]) << off;
        off += p.bits;
      }
      if (!known[view]) {
        known[view] = 1;
        table[view] = msgs[chk.sourceIndex];
      }
    }
    code.decoderTables[{chk.node, chk.source}] = std::move(table);
  }
  return code;
}

CodeEvaluator CodeEnumerator::evaluator_at(uint64_t idx) const {
  GeneralCode code = code_at(idx);
  CodeEvaluator ev;
  ev.blocklength = n_;
  ev.sources = sources_;
  ev.messageBits = messageBits_;

  std::vector<size_t> slotOf;  // sorted edge ids -> slot index
  for (const auto& id : edgeOrder_) ev.edgeIds.push_back(id);
  std::sort(ev.edgeIds.begin(), ev.edgeIds.end());
  for (const auto& id : ev.edgeIds) {
    size_t at = size_t(std::find(edgeOrder_.begin(), edgeOrder_.end(), id) - edgeOrder_.begin());
    slotOf.push_back(at);
    ev.edgeBits.push_back(slots_[at].outBits);
  }
  for (const auto& chk : checks_) {
    ev.reconKeys.push_back({chk.node, chk.source});
    ev.reconBits.push_back(messageBits_[chk.sourceIndex]);
  }
  std::sort(ev.reconKeys.begin(), ev.reconKeys.end());

  // Re-resolve checks against the sorted key order.
  std::vector<SinkCheck> orderedChecks;
  for (const auto& key : ev.reconKeys)
    for (const auto& chk : checks_)
      if (chk.node == key.first && chk.source == key.second) orderedChecks.push_back(chk);
  ev.reconBits.clear();
  for (const auto& chk : orderedChecks) ev.reconBits.push_back(messageBits_[chk.sourceIndex]);

  auto decoders = code.decoderTables;
  auto self = *this;  // value copy keeps the evaluator self-contained
  ev.eval = [self, idx, slotOf, orderedChecks, decoders](const std::vector<uint64_t>& msgs,
                                                         std::vector<uint64_t>& edgeVals,
                                                         std::vector<uint64_t>& recons) {
    std::vector<uint64_t> internal;
    self.run(idx, msgs, internal);
    edgeVals.clear();
    for (size_t s : slotOf) edgeVals.push_back(internal[s]);
    recons.clear();
    for (const auto& chk : orderedChecks) {
      uint64_t view = 0;
      size_t off = 0;
      for (const auto& p : chk.parts) {
        view |= (p.isMessage ? msgs[p.index] : internal[p.index]) << off;
        off += p.bits;
      }
      recons.push_back(decoders.at({chk.node, chk.source})[view]);
    }
  };
  return ev;
}

bool zero_error_achievable(const Network& net, const DemandSpec& demand, int n, CodeMode mode,
                           uint64_t budget, int workers) {
  CodeEnumerator en(net, demand, n, mode, budget);
  uint64_t total = en.size();
  if (workers < 1) workers = 1;
  if (uint64_t(workers) > total) workers = int(total);
  std::atomic<bool> found{false};
  auto scan = [&](uint64_t begin, uint64_t end) {
    for (uint64_t i = begin; i < end && !found.load(std::memory_order_relaxed); ++i)
      if (en.decodes(i)) {
        found.store(true, std::memory_order_relaxed);
        return;
      }
  };
  if (workers == 1) {
    scan(0, total);
  } else {
    std::vector<std::thread> threads;
    uint64_t chunk = (total + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      uint64_t begin = uint64_t(w) * chunk;
      threads.emplace_back(scan, begin, std::min(total, begin + chunk));
    }
    for (auto& t : threads) t.join();
  }
  return found.load();
}

void for_each_zero_error(const CodeEnumerator& en, const std::function<void(uint64_t)>& fn) {
  for (uint64_t i = 0; i < en.size(); ++i)
    if (en.decodes(i)) fn(i);
}

namespace {

std::vector<long long> grid_caps(const Network& net, const DemandSpec& demand, int n) {
  std::vector<long long> caps;
  for (const auto& s : demand.sources()) {
    auto sinks = demand.sinks_for(s.id);
    bool bounded = false;
    Rational cap(0);
    for (const auto& v : sinks) {
      if (v == s.node) continue;
      Rational f = max_flow(net, {s.node}, {v});
      if (!bounded || f < cap) cap = f;
      bounded = true;
    }
    if (!bounded)
      throw std::invalid_argument("achievable_set: source \"" + s.id +
                                  "\" has no sink requiring transmission");
    caps.push_back(floor_times(cap, n));
  }
  return caps;
}

bool dominates(const std::vector<long long>& a, const std::vector<long long>& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] < b[i]) return false;
  return true;
}

}  // namespace

std::vector<std::vector<Rational>> achievable_set(const Network& net, const DemandSpec& demand,
                                                  int n, CodeMode mode, uint64_t budget,
                                                  int workers) {
  std::vector<long long> caps = grid_caps(net, demand, n);
  size_t k = caps.size();

  // All grid tuples within the caps and the 8-bit guard.
  std::vector<std::vector<long long>> tuples;
  std::vector<long long> cur(k, 0);
  std::function<void(size_t)> gen = [&](size_t at) {
    if (at == k) {
      long long total = 0;
      for (long long c : cur) total += c;
      if (total <= 8) tuples.push_back(cur);
      return;
    }
    for (long long c = 0; c <= caps[at]; ++c) {
      cur[at] = c;
      gen(at + 1);
    }
  };
  gen(0);
  // Search large tuples first so achievable ones absorb their down-set.
  std::sort(tuples.begin(), tuples.end(), [](const auto& a, const auto& b) {
    long long sa = 0, sb = 0;
    for (long long v : a) sa += v;
    for (long long v : b) sb += v;
    if (sa != sb) return sa > sb;
    return a > b;
  });

  std::vector<std::vector<long long>> good;
  for (const auto& t : tuples) {
    bool covered = false;
    for (const auto& g : good)
      if (dominates(g, t)) {
        covered = true;
        break;
      }
    if (covered) {
      good.push_back(t);
      continue;
    }
    std::map<std::string, Rational> rates;
    for (size_t i = 0; i < k; ++i) rates[demand.sources()[i].id] = Rational(t[i], n);
    if (zero_error_achievable(net, demand.with_rates(rates), n, mode, budget, workers))
      good.push_back(t);
  }
  std::sort(good.begin(), good.end());
  std::vector<std::vector<Rational>> out;
  for (const auto& g : good) {
    std::vector<Rational> r;
    for (long long v : g) r.emplace_back(v, n);
    out.push_back(std::move(r));
  }
  return out;
}

DeltaGapReport delta_gap_report(const Network& net, const DemandSpec& demand,
                                const std::string& edge, const Rational& delta, int n,
                                CodeMode mode, uint64_t budget, int workers) {
  DeltaGapReport rep;
  rep.edge = edge;
  rep.delta = delta;
  rep.achievableBefore = achievable_set(net, demand, n, mode, budget, workers);
  Network reduced = reduce_edge(net, edge, delta);
  rep.achievableAfter = achievable_set(reduced, demand, n, mode, budget, workers);

  rep.worstGap = Rational(0);
  for (const auto& before : rep.achievableBefore) {
    bool first = true;
    Rational best(0);
    for (const auto& after : rep.achievableAfter) {
      Rational worstCoord(0);
      for (size_t i = 0; i < before.size(); ++i)
        worstCoord = std::max(worstCoord, before[i] - after[i]);
      if (first || worstCoord < best) best = worstCoord;
      first = false;
    }
    if (!first) rep.worstGap = std::max(rep.worstGap, best);
  }
  rep.pass = rep.worstGap <= delta;
  return rep;
}

uint64_t default_budget() {
  if (const char* env = std::getenv("NETCODE_BUDGET")) {
    std::string text = env;
    try {
      if (text.rfind("2^", 0) == 0) return uint64_t(1) << std::stoul(text.substr(2));
      return std::stoull(text);
    } catch (const std::exception&) {
      throw std::invalid_argument("NETCODE_BUDGET: cannot parse \"" + text + "\"");
    }
  }
  return uint64_t(1) << 24;
}

}  // namespace netcode
