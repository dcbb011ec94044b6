#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>
#include <string>

#include "flataff/errors.hpp"

namespace flataff {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

/// Parses "n" or "n/d" with optional leading sign; d must be positive.
inline Rational rational_from_string(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(text));
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (den <= 0) throw ParseError("rational denominator must be positive", slash + 1);
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw ParseError("malformed rational '" + text + "'", 0);
  }
}

} // namespace flataff
