#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace demon {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Always "num/den", including integers ("1/1").
std::string to_fraction_string(const Rational& q);
/// Accepts "num/den" or an integer. Throws std::invalid_argument.
Rational parse_fraction(const std::string& text);

/// 2^{-k} exactly.
Rational inverse_power_of_two(unsigned k);

inline Rational make_rational(long num, unsigned long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace demon
