#pragma once

#include <functional>

#include "netcode/linear_code.hpp"
#include "netcode/rational.hpp"

namespace netcode {

struct Variable {
  std::string name;
  uint64_t alphabetSize;
};

// Exact joint law over named finite variables. Probabilities are rationals
// and must sum to exactly 1; entropies are evaluated in double precision.
class DistributionTable {
 public:
  DistributionTable(std::vector<Variable> vars, std::map<std::vector<uint64_t>, Rational> probs);

  const std::vector<Variable>& variables() const { return vars_; }
  const std::map<std::vector<uint64_t>, Rational>& probabilities() const { return probs_; }

  std::vector<size_t> indices_of(const std::vector<std::string>& names) const;
  DistributionTable marginal(const std::vector<std::string>& names) const;
  // P(rest | var = value); drops the conditioned variable. Throws when the
  // event has probability zero.
  DistributionTable conditioned(const std::string& var, uint64_t value) const;
  // Values of var with positive probability, ascending.
  std::vector<uint64_t> support(const std::string& var) const;

  // One row per outcome: variable values, then "p" as a rational.
  std::string to_csv() const;
  static DistributionTable from_csv(const std::string& text);

 private:
  std::vector<Variable> vars_;
  std::map<std::vector<uint64_t>, Rational> probs_;
};

// Shannon entropy of the marginal on vars, in bits. H(empty set) = 0.
double entropy(const DistributionTable& d, const std::vector<std::string>& vars);
double conditional_entropy(const DistributionTable& d, const std::vector<std::string>& a,
                           const std::vector<std::string>& b);
double mutual_information(const DistributionTable& d, const std::vector<std::string>& a,
                          const std::vector<std::string>& b);
double conditional_mutual_information(const DistributionTable& d,
                                      const std::vector<std::string>& a,
                                      const std::vector<std::string>& b,
                                      const std::vector<std::string>& c);

// h(p) in bits, continuous at the endpoints.
double binary_entropy(double p);

// h(p) + p * messageBits, the Fano bound on H(M | Mhat).
double fano_upper_bound(double pErr, double messageBits);

struct TerminalBoundReport {
  double withoutFirst;  // I(M; W_2..W_p)
  double withAll;       // I(M; W_1..W_p)
  double hFirst;        // H(W_1)
  double nDelta;
  bool pass;  // withoutFirst >= withAll - nDelta
};

// The terminal-node chain: removing an incoming link of capacity delta
// costs the sink at most n*delta bits of information about the source.
// Variable 0 is the message, variable 1 the removed link.
TerminalBoundReport terminal_node_bound_check(const DistributionTable& d, double nDelta);

// Uniform view of a code for distribution building: message sizes plus a
// deterministic evaluation from message tuple to edge words and
// reconstructions (all as symbol indices, bit i of a word weighing 2^i).
struct CodeEvaluator {
  int blocklength = 1;
  std::vector<std::string> sources;  // ascending
  std::vector<size_t> messageBits;   // n * R_s
  std::vector<std::string> edgeIds;  // ascending
  std::vector<size_t> edgeBits;
  std::vector<std::pair<std::string, std::string>> reconKeys;  // ascending
  std::vector<size_t> reconBits;
  std::function<void(const std::vector<uint64_t>&, std::vector<uint64_t>&, std::vector<uint64_t>&)>
      eval;  // messages -> (edge values, reconstructions)

  size_t total_message_bits() const;
};

CodeEvaluator make_evaluator(const LinearNetworkCode& code);

// Same code with the given sources forced to the constant zero message
// (rate 0). Used when R_s <= delta.
CodeEvaluator fix_sources_to_zero(const CodeEvaluator& ev, const std::set<std::string>& sources);

// Variable naming for induced tables.
std::string msg_var(const std::string& source);
std::string edge_var(const std::string& edge);
std::string recon_var(const std::string& node, const std::string& source);

// Exact joint law of the selected variables under independent uniform
// messages, by exhaustive simulation. Total message bits capped at 24.
DistributionTable induced_distribution(const CodeEvaluator& ev,
                                       const std::vector<std::string>& selection);
DistributionTable induced_distribution(const LinearNetworkCode& code,
                                       const std::vector<std::string>& selection);

}  // namespace netcode
