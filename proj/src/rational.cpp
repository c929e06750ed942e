#include "netcode/rational.hpp"

#include <stdexcept>

namespace netcode {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      size_t used = 0;
      long long v = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing characters");
      return Rational(v);
    }
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    if (num.empty() || den.empty()) throw std::invalid_argument("missing numerator or denominator");
    size_t un = 0, ud = 0;
    long long p = std::stoll(num, &un);
    long long q = std::stoll(den, &ud);
    if (un != num.size() || ud != den.size()) throw std::invalid_argument("trailing characters");
    if (q == 0) throw std::invalid_argument("zero denominator");
    return Rational(p, q);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational \"" + text + "\"");
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("rational out of range \"" + text + "\"");
  }
}

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

long long floor_times(const Rational& r, long long denom) {
  Rational scaled = r * denom;
  long long q = scaled.numerator() / scaled.denominator();
  if (scaled.numerator() % scaled.denominator() != 0 && scaled.numerator() < 0) --q;
  return q;
}

bool is_multiple_of(const Rational& r, long long denom) {
  return (r * denom).denominator() == 1;
}

}  // namespace netcode
