#pragma once

#include "netcode/info_tools.hpp"
#include "netcode/net_model.hpp"

namespace netcode {

enum class CodeMode { Linear, All };

CodeMode parse_code_mode(const std::string& text);
std::string code_mode_name(CodeMode mode);

// A code as explicit function tables: encoder per edge over the tail's
// packed inputs, canonical decoder per (sink, source) over the sink's
// packed inputs. Unlike the linear module, arbitrary functions are allowed.
struct GeneralCode {
  int blocklength = 1;
  std::vector<std::string> sources;  // ascending
  std::vector<size_t> messageBits;
  std::map<std::string, std::vector<uint64_t>> encoderTables;
  std::map<std::pair<std::string, std::string>, std::vector<uint64_t>> decoderTables;
};

struct BudgetExceeded : std::runtime_error {
  double log2Size;
  explicit BudgetExceeded(double log2Size_)
      : std::runtime_error("search space of about 2^" + std::to_string(log2Size_) +
                           " codes exceeds the enumeration budget"),
        log2Size(log2Size_) {}
};

// Deterministic random-access enumeration of every encoder assignment on a
// network. Index digit order follows edge evaluation order (topological by
// tail, edge id within a node), first edge fastest. Decoders are not
// enumerated: a code is zero-error decodable iff every sink view pins down
// the demanded message, and the canonical decoder reads that value off.
class CodeEnumerator {
 public:
  CodeEnumerator(const Network& net, const DemandSpec& demand, int n, CodeMode mode,
                 uint64_t budget);

  uint64_t size() const { return total_; }
  const std::vector<std::string>& edge_order() const { return edgeOrder_; }

  // Zero-error verdict for the encoder assignment at idx.
  bool decodes(uint64_t idx) const;
  // Full tables, canonical decoders included (unseen views decode to 0).
  GeneralCode code_at(uint64_t idx) const;
  // Evaluator over the assignment at idx, for induced distributions.
  CodeEvaluator evaluator_at(uint64_t idx) const;

 private:
  struct EdgeSlot {
    std::string id;
    size_t outBits;
    size_t inBits;
    // Packed input layout: message index or eval-order edge index.
    struct Part {
      bool isMessage;
      size_t index;
      size_t bits;
    };
    std::vector<Part> parts;
    uint64_t choices;
  };
  struct SinkCheck {
    std::string node;
    std::string source;
    size_t sourceIndex;
    std::vector<EdgeSlot::Part> parts;  // the sink's view
    size_t viewBits;
  };

  uint64_t edge_value(const EdgeSlot& slot, uint64_t choice,
                      const std::vector<uint64_t>& msgs,
                      const std::vector<uint64_t>& edgeVals) const;
  void run(uint64_t idx, const std::vector<uint64_t>& msgs,
           std::vector<uint64_t>& edgeVals) const;

  int n_;
  CodeMode mode_;
  std::vector<std::string> sources_;
  std::vector<size_t> messageBits_;
  size_t totalMessageBits_ = 0;
  std::vector<EdgeSlot> slots_;       // evaluation order
  std::vector<std::string> edgeOrder_;
  std::vector<SinkCheck> checks_;
  uint64_t total_ = 1;
};

// True when some enumerated code decodes every message tuple exactly.
// Parallel scan over index ranges; the verdict is order-independent.
bool zero_error_achievable(const Network& net, const DemandSpec& demand, int n, CodeMode mode,
                           uint64_t budget, int workers);

// Sequential visit of every zero-error encoder assignment.
void for_each_zero_error(const CodeEnumerator& en, const std::function<void(uint64_t)>& fn);

// All rate tuples on the 1/n grid (capped by per-source cut bounds and the
// 8-message-bit exhaustiveness guard) for which a zero-error code exists.
// Sorted ascending; downward closed on the grid by construction of the
// search.
std::vector<std::vector<Rational>> achievable_set(const Network& net, const DemandSpec& demand,
                                                  int n, CodeMode mode, uint64_t budget,
                                                  int workers);

struct DeltaGapReport {
  std::string edge;
  Rational delta;
  std::vector<std::vector<Rational>> achievableBefore;
  std::vector<std::vector<Rational>> achievableAfter;
  // max over r in before of min over r' in after of max_s (r_s - r'_s)
  Rational worstGap;
  bool pass = false;  // worstGap <= delta
};

DeltaGapReport delta_gap_report(const Network& net, const DemandSpec& demand,
                                const std::string& edge, const Rational& delta, int n,
                                CodeMode mode, uint64_t budget, int workers);

uint64_t default_budget();  // 2^24, overridable via NETCODE_BUDGET

}  // namespace netcode
