#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "demon/core/bitrow.hpp"
#include "demon/core/rng.hpp"

namespace demon {

/// Finite binary word w_1 w_2 ... w_n, stored packed. The C++ accessors are
/// 0-based; positions reported in witnesses are 1-based.
class Word {
 public:
  Word() = default;
  /// All-zero word of length n.
  explicit Word(std::size_t n) : bits_(n) {}

  /// Parses a string over {0,1}. Throws std::invalid_argument otherwise.
  static Word parse(std::string_view text);
  /// Letter k (0-based) is bit k of `bits`. Requires n <= 64.
  static Word from_bits(std::uint64_t bits, std::size_t n);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.size() == 0; }

  int operator[](std::size_t i) const noexcept { return bits_.test(i) ? 1 : 0; }
  void set(std::size_t i, int letter) noexcept { bits_.set(i, letter != 0); }

  std::size_t count_ones() const noexcept { return bits_.count(); }
  Word complement() const;
  Word prefix(std::size_t n) const;
  /// Letters as the low bits of an integer. Requires size() <= 64.
  std::uint64_t to_bits() const;

  /// Bit i set iff letter i equals `letter`.
  BitRow positions_of(int letter) const;
  const BitRow& bits() const noexcept { return bits_; }

  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  BitRow bits_;
};

/// w = 0^{gaps[0]} 1 0^{gaps[1]} 1 ... 1 0^{trailing_zeros}.
struct GapEncoding {
  std::vector<std::size_t> gaps;
  std::size_t trailing_zeros = 0;

  friend bool operator==(const GapEncoding&, const GapEncoding&) = default;
};

GapEncoding gap_encode(const Word& w);
Word gap_decode(const GapEncoding& g);

/// True iff y arises from x by deleting some (possibly no) 0-letters.
/// Gap-wise: same number of 1s, every gap of x at least the matching gap of
/// y, and at least as many trailing zeros.
bool reduces_to(const Word& x, const Word& y);

namespace word_kind {
struct Alternating {};
struct Constant {
  int letter = 1;
};
struct Periodic {
  Word pattern;
};
struct Bernoulli {
  double p = 0.5;
  RngSpec rng;
};
}  // namespace word_kind

using WordKind =
    std::variant<word_kind::Alternating, word_kind::Constant, word_kind::Periodic, word_kind::Bernoulli>;

/// Throws std::invalid_argument on an empty periodic pattern or p outside [0,1].
Word make_word(const WordKind& kind, std::size_t n);

/// Letters drawn as uniform() < p from an existing stream.
Word bernoulli_word(Stream& stream, double p, std::size_t n);

Word alternating_word(std::size_t n);
Word constant_word(int letter, std::size_t n);

}  // namespace demon
