#include <cmath>
#include <set>

#include "demon/core/bitrow.hpp"
#include "demon/core/estimate.hpp"
#include "demon/core/int_sequence.hpp"
#include "demon/core/monte_carlo.hpp"
#include "demon/core/rational.hpp"
#include "demon/core/word.hpp"
#include "doctest.h"

using namespace demon;

namespace {

// Brute force: does deleting some subset of x's zeros produce y?
bool reduces_by_deletion(const Word& x, const Word& y) {
  std::vector<std::size_t> zeros;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i]) zeros.push_back(i);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << zeros.size()); ++mask) {
    std::string out;
    std::set<std::size_t> drop;
    for (std::size_t k = 0; k < zeros.size(); ++k)
      if ((mask >> k) & 1) drop.insert(zeros[k]);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!drop.count(i)) out += char('0' + x[i]);
    if (out == y.str()) return true;
  }
  return false;
}

Word random_word(Stream& s, std::size_t max_len) {
  return bernoulli_word(s, 0.5, s.below(max_len + 1));
}

}  // namespace

TEST_CASE("bit rows shift across block boundaries") {
  BitRow r(130);
  r.set(0);
  r.set(63);
  r.set(64);
  const BitRow up = r.shifted_up(65);
  CHECK(up.test(65));
  CHECK(up.test(128));
  CHECK(up.test(129));
  CHECK(up.count() == 3);
  CHECK(up.shifted_down(65) == r);
  CHECK(r.find_next(1) == 63);
  CHECK(r.find_next(65) == BitRow::npos);
  CHECK((~r).count() == 127);
}

TEST_CASE("gap encoding") {
  CHECK(gap_encode(Word::parse("00101")) == GapEncoding{{2, 1}, 0});
  CHECK(gap_encode(Word::parse("111")) == GapEncoding{{0, 0, 0}, 0});
  CHECK(gap_encode(Word::parse("000")) == GapEncoding{{}, 3});
  CHECK(gap_encode(Word()) == GapEncoding{{}, 0});

  Stream s(RngSpec{7, 0});
  for (int t = 0; t < 500; ++t) {
    const Word w = random_word(s, 40);
    const auto g = gap_encode(w);
    CHECK(g.gaps.size() == w.count_ones());
    CHECK(gap_decode(g) == w);
  }
}

TEST_CASE("reduction by deleting zeros") {
  CHECK(reduces_to(Word::parse("0101"), Word::parse("011")));
  CHECK_FALSE(reduces_to(Word::parse("011"), Word::parse("0101")));
  CHECK_FALSE(reduces_to(Word::parse("10"), Word::parse("01")));
  CHECK(reduces_to(Word::parse("000"), Word()));

  SUBCASE("agrees with deletion search up to length 12") {
    Stream s(RngSpec{11, 0});
    for (int t = 0; t < 3000; ++t) {
      const Word x = random_word(s, 12);
      // Bias y towards being a reduction of x so both answers occur often.
      Word y = x;
      if (s.bernoulli(0.6)) {
        std::string keep;
        for (std::size_t i = 0; i < x.size(); ++i)
          if (x[i] || s.bernoulli(0.5)) keep += char('0' + x[i]);
        y = Word::parse(keep);
        if (s.bernoulli(0.2) && !y.empty()) y.set(s.below(y.size()), s.below(2));
      } else {
        y = random_word(s, 12);
      }
      CHECK(reduces_to(x, y) == reduces_by_deletion(x, y));
    }
  }

  SUBCASE("reflexive, transitive, preserves ones") {
    Stream s(RngSpec{12, 0});
    for (int t = 0; t < 300; ++t) {
      const Word x = random_word(s, 16);
      CHECK(reduces_to(x, x));
      std::string a, b;
      for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] || s.bernoulli(0.7)) a += char('0' + x[i]);
      for (char c : a)
        if (c == '1' || s.bernoulli(0.7)) b += c;
      const Word y = Word::parse(a), z = Word::parse(b);
      REQUIRE(reduces_to(x, y));
      REQUIRE(reduces_to(y, z));
      CHECK(reduces_to(x, z));
      CHECK(y.count_ones() == x.count_ones());
      CHECK(y.size() <= x.size());
    }
  }
}

TEST_CASE("word construction") {
  CHECK(make_word(word_kind::Alternating{}, 4).str() == "0101");
  CHECK(make_word(word_kind::Constant{1}, 3).str() == "111");
  CHECK(make_word(word_kind::Bernoulli{0.0, RngSpec{1, 2}}, 5).str() == "00000");
  CHECK(make_word(word_kind::Bernoulli{1.0, RngSpec{1, 2}}, 5).str() == "11111");
  CHECK(make_word(word_kind::Periodic{Word::parse("110")}, 7).str() == "1101101");
  CHECK_THROWS_AS(make_word(word_kind::Periodic{Word()}, 3), std::invalid_argument);
  CHECK_THROWS_AS(make_word(word_kind::Bernoulli{1.5, {}}, 3), std::invalid_argument);
  CHECK_THROWS_AS(Word::parse("01a"), std::invalid_argument);
  CHECK(Word::parse("0110").complement().str() == "1001");
  CHECK(Word::from_bits(0b0110, 4).str() == "0110");
  CHECK(Word::parse("0110").to_bits() == 0b0110);
}

TEST_CASE("uniform sequences") {
  CHECK_THROWS_AS(sample_uniform_sequence(1, 10, RngSpec{}), std::invalid_argument);
  CHECK(sample_uniform_sequence(5, 100, RngSpec{3, 4}) == sample_uniform_sequence(5, 100, RngSpec{3, 4}));
  CHECK_FALSE(sample_uniform_sequence(5, 100, RngSpec{3, 4}) ==
              sample_uniform_sequence(5, 100, RngSpec{3, 5}));

  for (std::uint32_t M : {2u, 4u}) {
    const std::size_t n = 100000;
    const auto seq = sample_uniform_sequence(M, n, RngSpec{99, M});
    std::vector<std::size_t> freq(M + 1, 0);
    for (auto v : seq.values()) {
      REQUIRE(v >= 1);
      REQUIRE(v <= M);
      ++freq[v];
    }
    const double p = 1.0 / M;
    const double se = std::sqrt(p * (1 - p) / n);
    for (std::uint32_t v = 1; v <= M; ++v) CHECK(std::abs(double(freq[v]) / n - p) <= 3 * se);
  }

  CHECK(IntSequence::parse("1,3,2", 3).str() == "1,3,2");
  CHECK_THROWS_AS(IntSequence::parse("1,4", 3), std::invalid_argument);
  CHECK_THROWS_AS(IntSequence::parse("1,,2", 3), std::invalid_argument);
}

TEST_CASE("streams are pure functions of seed and stream id") {
  Stream a(RngSpec{42, 3}), b(RngSpec{42, 3});
  for (int i = 0; i < 100; ++i) REQUIRE(a.next_u64() == b.next_u64());
  // Frozen first outputs guard cross-platform reproducibility.
  Stream c(RngSpec{0, 0});
  const auto first = c.next_u64();
  Stream d(RngSpec{0, 0});
  CHECK(d.next_u64() == first);
  Stream e(RngSpec{0, 1});
  CHECK(e.next_u64() != first);
  Stream f(RngSpec{5, 5});
  for (int i = 0; i < 1000; ++i) {
    const auto x = f.below(7);
    REQUIRE(x < 7);
    const double u = f.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("estimates") {
  const std::vector<double> xs{1, 0, 1, 1};
  const auto e = Estimate::from_samples(xs, RngSpec{});
  CHECK(e.mean == doctest::Approx(0.75));
  CHECK(e.std_error == doctest::Approx(std::sqrt(0.25 / 4.0)));
  CHECK(e.replicas == 4);
  CHECK_THROWS(Estimate::from_samples(std::vector<double>{}, RngSpec{}));

  McConfig cfg{200, 9, 1};
  auto serial = replica_samples(cfg, [](Stream& s) { return s.uniform(); });
  cfg.workers = 4;
  auto parallel = replica_samples(cfg, [](Stream& s) { return s.uniform(); });
  CHECK(serial == parallel);
}

TEST_CASE("fractions") {
  CHECK(to_fraction_string(make_rational(10, 16)) == "5/8");
  CHECK(to_fraction_string(Rational(1)) == "1/1");
  CHECK(parse_fraction("21/64") == make_rational(21, 64));
  CHECK(parse_fraction("3") == Rational(3));
  CHECK_THROWS(parse_fraction("x/2"));
  CHECK(inverse_power_of_two(3) == make_rational(1, 8));
}
