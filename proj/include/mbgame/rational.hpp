#pragma once

#include <boost/rational.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

namespace mbgame {

using Rational = boost::rational<std::int64_t>;

// Accepts "p/q", integers and finite decimals ("0.8" -> 4/5).
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

inline Rational ceil_div(const Rational& r) {
  std::int64_t q = r.numerator() / r.denominator();
  if (r.numerator() > 0 && r.numerator() % r.denominator() != 0) ++q;
  return Rational(q);
}

inline std::int64_t ceil_int(const Rational& r) {
  std::int64_t q = r.numerator() / r.denominator();
  if (r.numerator() > 0 && r.numerator() % r.denominator() != 0) ++q;
  return q;
}

inline std::int64_t floor_int(const Rational& r) {
  std::int64_t q = r.numerator() / r.denominator();
  if (r.numerator() < 0 && r.numerator() % r.denominator() != 0) --q;
  return q;
}

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace mbgame
