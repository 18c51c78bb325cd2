#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cfw {

using Int = long;  // 64-bit on the supported platforms; see static_assert below
using BigInt = mpz_class;
using Rational = mpq_class;

static_assert(sizeof(Int) == 8, "coordinate type must be 64-bit");

inline Rational make_rational(Int num, Int den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Serialized form is "num" or "num/den"; the same form the CLI reports use.
std::string rational_to_string(const Rational& r);
Rational rational_from_string(const std::string& s);

// Floor of num/den as an exact integer (rounds toward -inf).
BigInt floor_div(const BigInt& num, const BigInt& den);

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace cfw
