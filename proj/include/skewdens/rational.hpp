#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace skewdens {

using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1) {
    return boost::multiprecision::numerator(q).str();
  }
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Parses "p/q" or an integer.
Rational parse_rational(const std::string& text);

}  // namespace skewdens
