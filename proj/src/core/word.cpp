#include "demon/core/word.hpp"

#include <stdexcept>

namespace demon {

Word Word::parse(std::string_view text) {
  Word w(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c != '0' && c != '1')
      throw std::invalid_argument("word literal must be over {0,1}: '" + std::string(text) + "'");
    w.set(i, c - '0');
  }
  return w;
}

Word Word::from_bits(std::uint64_t bits, std::size_t n) {
  if (n > 64) throw std::invalid_argument("from_bits: length exceeds 64");
  Word w(n);
  for (std::size_t i = 0; i < n; ++i) w.set(i, static_cast<int>((bits >> i) & 1u));
  return w;
}

Word Word::complement() const {
  Word w;
  w.bits_ = ~bits_;
  return w;
}

Word Word::prefix(std::size_t n) const {
  if (n > size()) throw std::out_of_range("prefix longer than word");
  Word w(n);
  for (std::size_t i = 0; i < n; ++i) w.set(i, (*this)[i]);
  return w;
}

std::uint64_t Word::to_bits() const {
  if (size() > 64) throw std::logic_error("to_bits: word longer than 64");
  return size() == 0 ? 0 : bits_.blocks()[0];
}

BitRow Word::positions_of(int letter) const { return letter ? bits_ : ~bits_; }

std::string Word::str() const {
  std::string s(size(), '0');
  for (std::size_t i = 0; i < size(); ++i)
    if (bits_.test(i)) s[i] = '1';
  return s;
}

GapEncoding gap_encode(const Word& w) {
  GapEncoding g;
  std::size_t run = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i]) {
      g.gaps.push_back(run);
      run = 0;
    } else {
      ++run;
    }
  }
  g.trailing_zeros = run;
  return g;
}

Word gap_decode(const GapEncoding& g) {
  std::size_t n = g.trailing_zeros + g.gaps.size();
  for (auto z : g.gaps) n += z;
  Word w(n);
  std::size_t pos = 0;
  for (auto z : g.gaps) {
    pos += z;
    w.set(pos++, 1);
  }
  return w;
}

bool reduces_to(const Word& x, const Word& y) {
  const GapEncoding gx = gap_encode(x);
  const GapEncoding gy = gap_encode(y);
  if (gx.gaps.size() != gy.gaps.size()) return false;
  for (std::size_t j = 0; j < gx.gaps.size(); ++j)
    if (gx.gaps[j] < gy.gaps[j]) return false;
  return gx.trailing_zeros >= gy.trailing_zeros;
}

Word alternating_word(std::size_t n) {
  Word w(n);
  for (std::size_t i = 1; i < n; i += 2) w.set(i, 1);
  return w;
}

Word constant_word(int letter, std::size_t n) {
  Word w(n);
  if (letter)
    for (std::size_t i = 0; i < n; ++i) w.set(i, 1);
  return w;
}

Word bernoulli_word(Stream& stream, double p, std::size_t n) {
  Word w(n);
  for (std::size_t i = 0; i < n; ++i) w.set(i, stream.bernoulli(p) ? 1 : 0);
  return w;
}

namespace {
struct MakeWord {
  std::size_t n;
  Word operator()(const word_kind::Alternating&) const { return alternating_word(n); }
  Word operator()(const word_kind::Constant& c) const { return constant_word(c.letter, n); }
  Word operator()(const word_kind::Periodic& p) const {
    if (p.pattern.empty()) throw std::invalid_argument("periodic word needs a nonempty pattern");
    Word w(n);
    for (std::size_t i = 0; i < n; ++i) w.set(i, p.pattern[i % p.pattern.size()]);
    return w;
  }
  Word operator()(const word_kind::Bernoulli& b) const {
    if (!(b.p >= 0.0 && b.p <= 1.0)) throw std::invalid_argument("bernoulli parameter outside [0,1]");
    Stream s(b.rng);
    return bernoulli_word(s, b.p, n);
  }
};
}  // namespace

Word make_word(const WordKind& kind, std::size_t n) { return std::visit(MakeWord{n}, kind); }

}  // namespace demon
