#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "sscover/errors.hpp"

namespace ssc {

// Exact arithmetic used by the oracles, the LP machinery and exact
// expectations. cpp_rational keeps values normalized (lowest terms,
// positive denominator).
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvariantError("rational with zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

// "n" for integers, "n/d" otherwise.
inline std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline std::int64_t to_int64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw CapacityError("value does not fit in 64 bits: " + v.str());
  }
  return v.template convert_to<std::int64_t>();
}

}  // namespace ssc
