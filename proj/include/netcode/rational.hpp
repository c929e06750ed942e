#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace netcode {

// Exact arithmetic for capacities and rates. Entropic quantities use double;
// everything on the network side stays rational so cut/flow identities hold
// exactly.
using Rational = boost::rational<long long>;

// Parses "p/q", "p", or "-p/q". Throws std::invalid_argument on malformed
// input or zero denominator.
Rational parse_rational(const std::string& text);

// "p/q" when q != 1, otherwise just "p".
std::string format_rational(const Rational& r);

double to_double(const Rational& r);

// Largest integer m with m/denom <= r.
long long floor_times(const Rational& r, long long denom);

// True when r == k / denom for some integer k.
bool is_multiple_of(const Rational& r, long long denom);

}  // namespace netcode
