#include "demon/core/rational.hpp"

#include <stdexcept>

namespace demon {

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_fraction(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0)
    throw std::invalid_argument("bad fraction: '" + text + "'");
  q.canonicalize();
  return q;
}

Rational inverse_power_of_two(unsigned k) {
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, k);
  return Rational(BigInt(1), den);
}

}  // namespace demon
