#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace netcode {

// Entry point behind the netcode binary. Pure: no state survives a call,
// identical inputs produce byte-identical reports.
// Exit codes: 0 success / claim verified, 1 invalid input or I/O failure,
// 2 a checked claim failed (report still written).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Parse -> serialize -> parse round trip for a network file; returns true
// when both parses agree structurally. Unknown fields are preserved and
// reported through `warnings`.
bool round_trip_network(const std::string& path, std::vector<std::string>& warnings);

}  // namespace netcode
