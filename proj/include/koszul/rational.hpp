#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace koszul {

/// Exact arbitrary-precision rational scalar. Always kept in canonical
/// reduced form (gcd 1, positive denominator) by the backend.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

/// Parses "p", "-p", or "p/q". Returns nullopt on malformed input or q == 0.
inline std::optional<Rational> parse_rational(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(Integer(s));
    }
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (num.empty() || den.empty()) return std::nullopt;
    Integer q(den);
    if (q == 0) return std::nullopt;
    return Rational(Integer(num), q);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

/// (-1)^n for possibly negative n.
inline int parity_sign(long long n) { return (n % 2 == 0) ? 1 : -1; }

}  // namespace koszul
