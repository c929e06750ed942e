#pragma once

#include <nlohmann/json.hpp>

#include "netcode/cut_bounds.hpp"
#include "netcode/linear_code.hpp"
#include "netcode/oracle_search.hpp"
#include "netcode/regions.hpp"
#include "netcode/theorem_verifier.hpp"

namespace netcode {

// Insertion-ordered documents keep report bytes stable across runs.
using Json = nlohmann::ordered_json;

// A network file bundles the graph with its demand structure. Unknown
// top-level fields are preserved and reported as warnings.
struct NetworkFile {
  Network net;
  DemandSpec demand;
  Json extras = Json::object();
  std::vector<std::string> warnings;
};

NetworkFile parse_network_file(const Json& doc);
Json serialize_network_file(const NetworkFile& file);

LinearNetworkCode parse_code_file(const Json& doc, const Network& net, const DemandSpec& demand);
Json serialize_code_file(const LinearNetworkCode& code);

Json serialize_region(const RateRegion& region);
Json serialize_cutset_region(const CutsetRegion& region);
Json serialize_rate_loss(const RateLossReport& rep);
Json serialize_robustness(const RobustnessReport& rep);
Json serialize_theorem_report(const TheoremReport& rep);
Json serialize_delta_gap(const DeltaGapReport& rep);
Json serialize_rate_set(const std::vector<std::vector<Rational>>& rates,
                        const std::vector<std::string>& sources);

// Doubles carry 12 significant digits in every report.
double report_real(double v);

Json load_json(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace netcode
