#include <sstream>

#include "demon/core/errors.hpp"
#include "demon/lattice2d.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace demon;
using namespace demon::lattice2d;

namespace {

Field2D filled(std::size_t w, std::size_t h, int letter) {
  Field2D f(w, h);
  for (std::size_t i = 1; i <= w; ++i)
    for (std::size_t j = 1; j <= h; ++j) f.set(i, j, letter);
  return f;
}

// Checkerboard: every R x R block with R >= 2 holds both letters.
Field2D checkerboard(std::size_t w, std::size_t h) {
  Field2D f(w, h);
  for (std::size_t i = 1; i <= w; ++i)
    for (std::size_t j = 1; j <= h; ++j) f.set(i, j, static_cast<int>((i + j) % 2));
  return f;
}

bool adjacent(LatticeKind kind, Cell a, Cell b) {
  for (const auto& [dx, dy] : neighbour_offsets(kind))
    if (static_cast<long>(a.i) + dx == static_cast<long>(b.i) && static_cast<long>(a.j) + dy == static_cast<long>(b.j))
      return true;
  return false;
}

}  // namespace

TEST_CASE("field text io") {
  std::istringstream in("0110\n1001\n\n0000\n");
  const auto f = Field2D::parse(in);
  CHECK(f.width() == 3);
  CHECK(f.height() == 4);
  CHECK(f.at(1, 2) == 1);
  CHECK(f.at(2, 1) == 1);
  CHECK(f.to_text() == "0110\n1001\n0000\n");
  std::istringstream ragged("01\n0\n");
  CHECK_THROWS_AS(Field2D::parse(ragged), std::invalid_argument);
  std::istringstream junk("0a\n");
  CHECK_THROWS_AS(Field2D::parse(junk), std::invalid_argument);
}

TEST_CASE("block goodness") {
  CHECK(block_good_prob_exact(make_rational(1, 2), 2) == make_rational(7, 8));
  CHECK(block_good_prob_exact(make_rational(1, 2), 3) == make_rational(255, 256));
  CHECK(block_good_prob_exact(Rational(0), 3) == 0);
  CHECK(block_good_prob_exact(Rational(1), 3) == 0);
  CHECK(block_good_prob(0.5, 2) == doctest::Approx(0.875));
  CHECK(block_good_prob(1.0, 1) == 0.0);

  const BlockGrid blocks(checkerboard(6, 4), 2);
  CHECK(blocks.width() == 3);
  CHECK(blocks.height() == 2);
  CHECK(blocks.good(3, 2));
  CHECK_FALSE(BlockGrid(filled(4, 4, 1), 2).good(1, 1));

  McConfig cfg{20000, 9, 1};
  for (double p : {0.25, 0.5, 0.75})
    for (std::size_t R : {1u, 2u, 3u}) CHECK(block_good_frequency(p, R, cfg).within(block_good_prob(p, R), 3.0));
}

TEST_CASE("block percolation") {
  const auto [w, h] = field_size_for(2, 6);
  CHECK(w == 12);
  CHECK(h == 22);
  const auto good = checkerboard(w, h);
  for (std::size_t d = 1; d <= 6; ++d) {
    const auto path = block_percolation(good, 2, d);
    REQUIRE(path);
    CHECK(path->size() == d);
    CHECK(path->front() == Cell{1, 1});
    for (std::size_t k = 1; k < path->size(); ++k) {
      CHECK((*path)[k].i == (*path)[k - 1].i + 1);
      const auto dj = (*path)[k].j - (*path)[k - 1].j;
      CHECK((dj == 1 || dj == 2));
    }
  }
  auto broken = good;
  broken.set(1, 2, 0);
  broken.set(2, 1, 0);
  broken.set(2, 2, 0);  // block (1,1) is now all 0
  CHECK_FALSE(block_percolation(broken, 2, 3));
  CHECK_THROWS_AS(block_percolation(good, 2, 7), std::invalid_argument);

  SUBCASE("forced skip steps") {
    // Spoil every diagonal successor so the path must use (i+1, j+2).
    auto f = checkerboard(w, h);
    for (std::size_t b = 2; b <= 6; ++b)
      for (std::size_t i = (b - 1) * 2 + 1; i <= b * 2; ++i)
        for (std::size_t j = (b - 1) * 2 + 1; j <= b * 2; ++j) f.set(i, j, 1);
    const auto path = block_percolation(f, 2, 6);
    REQUIRE(path);
    for (std::size_t k = 1; k < path->size(); ++k) CHECK((*path)[k].j != (*path)[k].i);
  }

  for (std::size_t rows = 1; rows <= 12; ++rows) CHECK(block_graph_matches_quadrant(rows));
}

TEST_CASE("two-dimensional embedding") {
  for (std::size_t R = 1; R <= 5; ++R) {
    const auto g = adjacent_block_gaps(R);
    CHECK(g.max_l1_diagonal == 4 * R - 2);
    CHECK(g.max_l1_skip == 5 * R - 2);
    CHECK(g.max_l1_skip <= 5 * R);
    CHECK(g.min_l1 >= 2);
    CHECK(g.min_coordinate_step >= 1);
  }

  const auto [w, h] = field_size_for(3, 20);
  const auto field = checkerboard(w, h);
  const auto path = block_percolation(field, 3, 20);
  REQUIRE(path);
  for (const auto& word : {constant_word(0, 20), constant_word(1, 20), alternating_word(20)}) {
    const auto wit = embed_word_2d(word, field, 3, *path);
    CHECK(wit.gap_bound == 15);
    CHECK(validate_embedding_2d(word, field, wit));
  }
  CHECK_THROWS_AS(embed_word_2d(constant_word(1, 21), field, 3, *path), std::invalid_argument);
  const auto ones = filled(w, h, 1);
  CHECK_THROWS_AS(embed_word_2d(constant_word(0, 3), ones, 3, *path), PropertyViolation);

  // Validator rejects each broken condition.
  const Word ab = Word::parse("01");
  const Field2D tiny = checkerboard(4, 4);  // (1,1)=0, (1,2)=1
  CHECK(validate_embedding_2d(ab, tiny, {{{1, 1}, {2, 3}}, 3}));
  CHECK_FALSE(validate_embedding_2d(ab, tiny, {{{1, 1}, {2, 3}}, 2}));   // gap
  CHECK_FALSE(validate_embedding_2d(ab, tiny, {{{1, 1}, {1, 2}}, 5}));   // m not increasing
  CHECK_FALSE(validate_embedding_2d(ab, tiny, {{{1, 1}, {2, 2}}, 5}));   // wrong letter
  CHECK_FALSE(validate_embedding_2d(ab, tiny, {{{1, 1}}, 5}));           // length

  Stream s(RngSpec{14, 0});
  int found = 0;
  for (int t = 0; t < 10; ++t) {
    const auto trial = construction_trial(0.5, 3, 40, s);
    if (trial.path_found) {
      ++found;
      CHECK(trial.valid);
    }
  }
  CHECK(found >= 9);
}

TEST_CASE("lattices") {
  CHECK(neighbour_offsets(LatticeKind::Square).size() == 4);
  CHECK(neighbour_offsets(LatticeKind::Triangular).size() == 6);
  CHECK(neighbour_offsets(LatticeKind::ClosePacked).size() == 8);
  for (auto kind : {LatticeKind::Square, LatticeKind::Triangular, LatticeKind::ClosePacked}) {
    for (const auto& [dx, dy] : neighbour_offsets(kind)) {
      const auto& o = neighbour_offsets(kind);
      CHECK(std::find(o.begin(), o.end(), std::pair{-dx, -dy}) != o.end());
    }
    CHECK(parse_lattice(lattice_name(kind)) == kind);
  }
  CHECK_THROWS(parse_lattice("hex"));
}

TEST_CASE("visible words") {
  const auto open = filled(9, 9, 1);
  for (auto kind : {LatticeKind::Square, LatticeKind::Triangular, LatticeKind::ClosePacked}) {
    const auto r = visible_word(open, kind, {5, 5}, constant_word(1, 8));
    REQUIRE(r.outcome == Visibility::Visible);
    REQUIRE(r.path.size() == 8);
    CHECK(adjacent(kind, Cell{5, 5}, r.path.front()));
    for (std::size_t k = 1; k < r.path.size(); ++k) CHECK(adjacent(kind, r.path[k - 1], r.path[k]));
  }
  auto lonely = open;
  for (std::size_t i = 4; i <= 6; ++i)
    for (std::size_t j = 4; j <= 6; ++j) lonely.set(i, j, 0);
  CHECK(visible_word(lonely, LatticeKind::ClosePacked, {5, 5}, Word::parse("1")).outcome == Visibility::NotVisible);
  CHECK(visible_word(lonely, LatticeKind::ClosePacked, {5, 5}, Word::parse("01")).outcome == Visibility::Visible);

  // Budget exhaustion is reported as its own outcome.
  const auto hard = visible_word(open, LatticeKind::Square, {1, 1}, constant_word(1, 60), 50);
  CHECK(hard.outcome == Visibility::BudgetExhausted);
  // Exact negative from the counting pass: 81 sites minus the origin.
  CHECK(visible_word(open, LatticeKind::Square, {1, 1}, constant_word(1, 81)).outcome == Visibility::NotVisible);

  SUBCASE("agrees with walk enumeration on 4x4 boxes") {
    Stream s(RngSpec{15, 0});
    int visible = 0;
    for (int t = 0; t < 100; ++t) {
      for (auto kind : {LatticeKind::Square, LatticeKind::Triangular, LatticeKind::ClosePacked}) {
        const auto f = Field2D::sample(0.5, 4, 4, s);
        const Cell origin{1 + s.below(4), 1 + s.below(4)};
        const auto w = bernoulli_word(s, 0.5, 1 + s.below(7));
        const auto r = visible_word(f, kind, origin, w);
        REQUIRE(r.outcome != Visibility::BudgetExhausted);
        REQUIRE((r.outcome == Visibility::Visible) == oracle::saw_visible(f, kind, origin, w));
        if (r.outcome == Visibility::Visible) {
          ++visible;
          REQUIRE(adjacent(kind, origin, r.path.front()));
          for (std::size_t k = 0; k < w.size(); ++k) REQUIRE(f.at(r.path[k]) == w[k]);
        }
      }
    }
    CHECK(visible > 30);
    CHECK(visible < 270);
  }

  SUBCASE("somewhere search") {
    Stream s(RngSpec{16, 0});
    for (int t = 0; t < 40; ++t) {
      const auto f = Field2D::sample(0.5, 4, 4, s);
      const auto w = bernoulli_word(s, 0.5, 1 + s.below(6));
      bool any = false;
      for (std::size_t i = 1; i <= 4; ++i)
        for (std::size_t j = 1; j <= 4; ++j) any = any || oracle::saw_visible(f, LatticeKind::Square, {i, j}, w);
      CHECK((visible_from_somewhere(f, LatticeKind::Square, w).outcome == Visibility::Visible) == any);
    }
  }
}

TEST_CASE("visibility frequencies") {
  McConfig cfg{200, 21, 1};
  const auto zero = ab_scan(0.0, 20, cfg);
  CHECK(zero.alternating.visible.mean == 0.0);
  CHECK(zero.constant.visible.mean == 0.0);

  const auto half = ab_scan(0.5, 30, cfg);
  CHECK(half.alternating.exhausted == 0);
  CHECK(half.constant.exhausted == 0);
  CHECK(half.alternating.visible.mean > half.constant.visible.mean);

  // Complement symmetry: the law at 1-p with letters swapped is the same.
  const auto w = Word::parse("0110100");
  McConfig big{1500, 22, 1};
  const auto a = visibility_mc(LatticeKind::Triangular, 0.4, 16, w, big);
  const auto b = visibility_mc(LatticeKind::Triangular, 0.6, 16, w.complement(), big);
  CHECK(std::abs(a.visible.mean - b.visible.mean) <= 3 * combined_std_error(a.visible, b.visible) + 1e-12);

  McConfig par{200, 21, 3};
  const auto again = ab_scan(0.5, 30, par);
  CHECK(again.alternating.visible.mean == half.alternating.visible.mean);
  CHECK(again.constant.visible.mean == half.constant.visible.mean);
}
