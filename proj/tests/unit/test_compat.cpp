#include "demon/compat.hpp"
#include "demon/core/errors.hpp"
#include "doctest.h"

using namespace demon;
using namespace demon::compat;

namespace {

Word random_word(Stream& s, std::size_t n, double p) { return bernoulli_word(s, p, n); }

Word prefix_of(const Word& w, std::size_t n) { return w.prefix(n); }

}  // namespace

TEST_CASE("compatibility examples") {
  const auto w = compatible_prefix(Word::parse("10"), Word::parse("01"));
  REQUIRE(w);
  CHECK(validate_deletion_witness(Word::parse("10"), Word::parse("01"), *w));
  CHECK_FALSE(compatible_prefix(Word::parse("11"), Word::parse("11")));
  CHECK_FALSE(compatible_prefix(Word::parse("101"), Word::parse("011")));
  CHECK_FALSE(compat_oracle(Word::parse("101"), Word::parse("011")));
  CHECK(compatible_prefix(Word::parse("1"), Word::parse("0")));
  CHECK(compat_oracle(Word::parse("1"), Word::parse("0")));
  CHECK(compatible_prefix(Word::parse("0000"), Word::parse("1111")));
  CHECK(compat_oracle(Word::parse("0000"), Word::parse("1111")));
  CHECK_THROWS_AS(compat_oracle(Word(13), Word(12)), BudgetExceeded);
}

TEST_CASE("witness validator") {
  const auto x = Word::parse("1001"), y = Word::parse("0110");
  CHECK(validate_deletion_witness(x, y, {{1, 2, 3, 4}, {1, 2, 3, 4}}));
  CHECK_FALSE(validate_deletion_witness(x, y, {{1, 4}, {1, 2, 3, 4}}));  // (1,0),(1,1)
  CHECK_FALSE(validate_deletion_witness(x, y, {{2, 3, 4}, {1, 2, 3, 4}}));  // dropped a 1
  CHECK_FALSE(validate_deletion_witness(x, y, {{1, 1, 2}, {1}}));           // not increasing
  CHECK_FALSE(validate_deletion_witness(x, y, {{1, 5}, {1}}));              // out of range
}

TEST_CASE("DP agrees with the deletion-subset oracle") {
  std::size_t agree_yes = 0;
  for (std::size_t a = 1; a <= 6; ++a)
    for (std::size_t b = 1; b <= 6; ++b)
      for (std::uint64_t xb = 0; xb < (std::uint64_t{1} << a); ++xb)
        for (std::uint64_t yb = 0; yb < (std::uint64_t{1} << b); ++yb) {
          const auto x = Word::from_bits(xb, a), y = Word::from_bits(yb, b);
          const auto w = compatible_prefix(x, y);
          REQUIRE(w.has_value() == compat_oracle(x, y));
          if (w) {
            ++agree_yes;
            REQUIRE(validate_deletion_witness(x, y, *w));
          }
        }
  CHECK(agree_yes > 0);

  Stream s(RngSpec{11, 0});
  for (int t = 0; t < 500; ++t) {
    const auto x = random_word(s, 1 + s.below(10), 0.5);
    const auto y = random_word(s, 1 + s.below(10), 0.5);
    const auto w = compatible_prefix(x, y);
    REQUIRE(w.has_value() == compat_oracle(x, y));
    if (w) REQUIRE(validate_deletion_witness(x, y, *w));
  }
}

TEST_CASE("compatibility properties") {
  Stream s(RngSpec{12, 0});
  for (int t = 0; t < 2000; ++t) {
    const std::size_t n = 1 + s.below(40);
    const double p = 0.3 + 0.4 * s.uniform();
    const auto x = random_word(s, n, p), y = random_word(s, n, p);
    const bool ok = compatible_prefix(x, y).has_value();

    // Lowering a letter never hurts.
    auto x2 = x;
    const auto flip = s.below(n);
    x2.set(flip, 0);
    if (ok) REQUIRE(compatible_prefix(x2, y));

    // Horizon: the horizon routine matches the decision at every prefix
    // length and the set of good horizons is downward closed.
    const auto h = compatible_horizon(x, y);
    REQUIRE((h == n) == ok);
    for (std::size_t m = 1; m <= n; ++m)
      REQUIRE(compatible_prefix(prefix_of(x, m), prefix_of(y, m)).has_value() == (m <= h));
  }
}

TEST_CASE("majority certificate") {
  CHECK(majority_certificate(Word::parse("111"), Word::parse("111"))->N == 1);
  CHECK_FALSE(majority_certificate(Word::parse("0000"), Word::parse("1111")));
  CHECK(majority_certificate(Word::parse("0111"), Word::parse("1011"))->N == 3);
  CHECK_THROWS_AS(majority_certificate(Word::parse("01"), Word::parse("0")), std::invalid_argument);

  Stream s(RngSpec{13, 0});
  int issued = 0;
  for (int t = 0; t < 2000; ++t) {
    const auto x = random_word(s, 100, 0.6), y = random_word(s, 100, 0.6);
    if (const auto c = majority_certificate(x, y)) {
      ++issued;
      REQUIRE_FALSE(compatible_prefix(prefix_of(x, c->N), prefix_of(y, c->N)));
    }
  }
  CHECK(issued > 1000);
}

TEST_CASE("psi estimates") {
  McConfig cfg{500, 3, 1};
  CHECK(psi_mc(0.0, 30, cfg).mean == 1.0);
  CHECK(psi_mc(1.0, 30, cfg).mean == 0.0);
  CHECK_THROWS_AS(psi_mc(1.5, 10, cfg), std::invalid_argument);

  const std::vector<std::size_t> horizons{5, 10, 25, 50};
  const auto curve = psi_curve_horizons(0.5, horizons, cfg);
  for (std::size_t k = 1; k < curve.size(); ++k) CHECK(curve[k].mean <= curve[k - 1].mean);
  CHECK(curve[2].mean == psi_mc(0.5, 25, cfg).mean);

  const std::vector<double> ps{0.1, 0.3, 0.5, 0.7};
  const auto by_p = psi_curve_densities(ps, 20, cfg);
  for (std::size_t k = 1; k < by_p.size(); ++k) CHECK(by_p[k].mean <= by_p[k - 1].mean);
  CHECK(by_p[2].mean == psi_mc(0.5, 20, cfg).mean);

  McConfig par{500, 3, 4};
  CHECK(psi_mc(0.4, 30, par).mean == psi_mc(0.4, 30, cfg).mean);
}
