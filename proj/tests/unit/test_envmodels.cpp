#include <sstream>

#include "demon/envmodels.hpp"
#include "demon/schedule.hpp"
#include "doctest.h"

using namespace demon;
using namespace demon::envmodels;

namespace {

JointPmf random_pmf(Stream& s, std::size_t k) {
  // Random integer weights; sometimes a product law so both outcomes occur.
  if (s.bernoulli(0.3)) {
    std::vector<Rational> ones;
    for (std::size_t v = 0; v < k; ++v) ones.push_back(make_rational(static_cast<long>(1 + s.below(5)), 6));
    return JointPmf::product(ones);
  }
  std::vector<std::uint64_t> w(std::size_t{1} << k);
  std::uint64_t total = 0;
  for (auto& x : w) total += x = 1 + s.below(4);
  std::vector<Rational> probs;
  for (auto x : w) probs.push_back(make_rational(static_cast<long>(x), total));
  std::vector<std::string> labels(k, "v");
  return JointPmf(labels, probs);
}

}  // namespace

TEST_CASE("joint pmf construction and io") {
  CHECK_THROWS_AS(JointPmf({"a"}, {make_rational(1, 2), make_rational(1, 3)}), std::invalid_argument);
  CHECK_THROWS_AS(JointPmf({"a"}, {make_rational(1, 2)}), std::invalid_argument);

  const schedule::Vertex rect[] = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
  const auto pmf = schedule::kwise_joint(rect, 4);
  std::stringstream io;
  pmf.write_csv(io);
  const auto back = JointPmf::read_csv(io);
  CHECK(back.probs() == pmf.probs());
  CHECK(back.labels() == pmf.labels());

  std::istringstream bad("outcome,numerator,denominator\n0,1,2\n2,1,2\n");
  CHECK_THROWS(JointPmf::read_csv(bad));
}

TEST_CASE("k-wise test") {
  const auto fair = JointPmf::product(std::vector<Rational>(4, make_rational(1, 2)));
  for (std::size_t k = 1; k <= 4; ++k) CHECK(kwise_test(fair, k).independent);

  const auto one = JointPmf({"x"}, {make_rational(1, 3), make_rational(2, 3)});
  CHECK(kwise_test(one, 1).independent);
  CHECK_THROWS(kwise_test(one, 2));

  const schedule::Vertex rect[] = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
  const auto pmf = schedule::kwise_joint(rect, 4);
  CHECK(kwise_test(pmf, 3).independent);
  const auto report = kwise_test(pmf, 4);
  CHECK_FALSE(report.independent);
  REQUIRE(report.worst);
  CHECK(report.worst->subset.size() == 4);
  bool saw_all_open = false;
  for (const auto& v : report.violations)
    if (v.values == 0b1111) {
      saw_all_open = true;
      CHECK(v.joint == make_rational(21, 64));
      CHECK(v.product == make_rational(81, 256));
    }
  CHECK(saw_all_open);

  // XOR triple: pairwise independent, not 3-wise.
  std::vector<Rational> probs(8, Rational(0));
  for (std::uint64_t b = 0; b < 8; ++b)
    if (((b ^ (b >> 1) ^ (b >> 2)) & 1) == 0) probs[b] = make_rational(1, 4);
  const JointPmf parity({"a", "b", "c"}, probs);
  CHECK(kwise_test(parity, 2).independent);
  CHECK_FALSE(kwise_test(parity, 3).independent);

  SUBCASE("independence at k implies independence at k-1") {
    Stream s(RngSpec{4, 4});
    for (int t = 0; t < 60; ++t) {
      const std::size_t k = 2 + s.below(3);
      const auto p = random_pmf(s, k);
      for (std::size_t r = 2; r <= k; ++r)
        if (kwise_test(p, r).independent) CHECK(kwise_test(p, r - 1).independent);
    }
  }
}

TEST_CASE("mu parsing and sampling") {
  const auto mu = Mu::parse("0.2:0.5,0.9:0.5");
  CHECK(mu.support == std::vector<double>{0.2, 0.9});
  CHECK(mu.draw(0.1) == 0.2);
  CHECK(mu.draw(0.7) == 0.9);
  CHECK_THROWS(Mu::parse("0.2:0.5"));
  CHECK_THROWS(Mu::parse("1.2:1"));
  CHECK_THROWS(Mu::parse("0.5"));
  CHECK_THROWS(Mu::parse(""));
  CHECK(Mu::parse(Mu::parse("0.25:0.75,1:0.25").str()).support == std::vector<double>{0.25, 1});
}

TEST_CASE("column environment crossing") {
  McConfig cfg{300, 12, 1};
  CHECK(column_percolation_mc(Mu::point_mass(1.0), 20, cfg).mean == 1.0);
  CHECK(column_percolation_mc(Mu::point_mass(0.0), 20, cfg).mean == 0.0);

  SiteGrid g{3, 2, {1, 0, 1, 1, 0, 1}};
  CHECK(horizontal_crossing(g));
  g.open[2 * 2 + 1] = 0;
  CHECK_FALSE(horizontal_crossing(g));

  SUBCASE("coupled monotonicity in the point mass") {
    Stream s(RngSpec{1, 1});
    for (int t = 0; t < 200; ++t) {
      const std::size_t n = 12;
      std::vector<double> u(n * n);
      for (auto& x : u) x = s.uniform();
      const double p = s.uniform(), q = p + (1 - p) * s.uniform();
      const bool low = horizontal_crossing(threshold_grid(std::vector<double>(n, p), u, n));
      const bool high = horizontal_crossing(threshold_grid(std::vector<double>(n, q), u, n));
      CHECK((!low || high));
    }
  }

  SUBCASE("point mass reproduces iid site percolation") {
    McConfig big{4000, 77, 1};
    for (double p : {0.3, 0.7}) {
      const auto col = column_percolation_mc(Mu::point_mass(p), 16, big);
      const auto iid = iid_percolation_mc(p, 16, big);
      CHECK(std::abs(col.mean - iid.mean) <= 3 * combined_std_error(col, iid) + 1e-12);
    }
  }
}
