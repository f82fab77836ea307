#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "errors.hpp"

namespace bingo {

using BigInt = boost::multiprecision::cpp_int;
/// Canonical exact rational (gcd 1, positive denominator).
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigInt& num, const BigInt& den) { return Rational(num, den); }

inline std::string to_fraction_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

namespace detail {

inline BigInt pow10(int exponent) {
  BigInt result = 1;
  for (int i = 0; i < exponent; ++i) result *= 10;
  return result;
}

// |r| * 10^decimals rounded half-to-even.
inline BigInt scaled_round_half_even(const Rational& magnitude, int decimals) {
  const BigInt num = boost::multiprecision::numerator(magnitude) * pow10(decimals);
  const BigInt& den = boost::multiprecision::denominator(magnitude);
  BigInt quotient = num / den;
  const BigInt twice_remainder = 2 * (num % den);
  if (twice_remainder > den || (twice_remainder == den && (quotient & 1) != 0)) ++quotient;
  return quotient;
}

}  // namespace detail

/// Fixed-point rendering with exactly `decimals` fractional digits.
inline std::string to_fixed(const Rational& r, int decimals) {
  if (decimals < 0) throw ValidationError("to_fixed: negative digit count");
  const bool negative = r < 0;
  std::string digits = detail::scaled_round_half_even(negative ? Rational(-r) : r, decimals).str();
  if (digits.size() <= static_cast<std::size_t>(decimals)) {
    digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(), '0');
  }
  std::string out = negative && digits.find_first_not_of('0') != std::string::npos ? "-" : "";
  out += digits.substr(0, digits.size() - static_cast<std::size_t>(decimals));
  if (decimals > 0) out += "." + digits.substr(digits.size() - static_cast<std::size_t>(decimals));
  return out;
}

/// Fixed-point rendering with `significant` significant digits (round half to even).
inline std::string to_significant(const Rational& r, int significant = 12) {
  if (significant < 1) throw ValidationError("to_significant: need at least one digit");
  if (r == 0) return "0";
  Rational magnitude = r < 0 ? Rational(-r) : r;
  // Decimal exponent e with 10^e <= |r| < 10^(e+1).
  int exponent = 0;
  while (magnitude >= 10) {
    magnitude /= 10;
    ++exponent;
  }
  while (magnitude < 1) {
    magnitude *= 10;
    --exponent;
  }
  const int decimals = significant - 1 - exponent;
  return to_fixed(r, decimals < 0 ? 0 : decimals);
}

}  // namespace bingo
