#include "demon/embed1d.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "demon/core/errors.hpp"
#include "demon/core/parallel.hpp"

namespace demon::embed1d {

namespace {

void require_gap(unsigned M) {
  if (M < 1) throw std::invalid_argument("gap bound M must be at least 1");
}

// Bit p (1 <= p <= |y|) set iff y_p == letter; bit 0 clear.
BitRow letter_mask(const Word& y, int letter) {
  BitRow m(y.size() + 1);
  m |= y.positions_of(letter);
  return m.shifted_up(1);
}

// Every position reachable by one step of length 1..M from the frontier.
BitRow spread(const BitRow& f, unsigned M) {
  BitRow g = f.shifted_up(1);
  for (unsigned d = 2; d <= M; ++d) g |= f.shifted_up(d);
  return g;
}

std::uint64_t spread64(std::uint64_t f, unsigned M) {
  std::uint64_t g = 0;
  for (unsigned d = 1; d <= M; ++d) g |= f << d;
  return g;
}

}  // namespace

bool validate_witness(const Word& v, const Word& y, const EmbeddingWitness& w) {
  if (w.positions.size() != v.size()) return false;
  std::size_t prev = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::size_t m = w.positions[i];
    if (m <= prev || m - prev > w.gap_bound) return false;
    if (m > y.size()) return false;
    if (y[m - 1] != v[i]) return false;
    prev = m;
  }
  return true;
}

std::optional<EmbeddingWitness> embed_decide(const Word& v, const Word& y, unsigned M) {
  require_gap(M);
  const BitRow ones = letter_mask(y, 1);
  const BitRow zeros = letter_mask(y, 0);
  std::vector<BitRow> frontiers;
  frontiers.reserve(v.size() + 1);
  BitRow f(y.size() + 1);
  f.set(0);
  frontiers.push_back(f);
  for (std::size_t i = 0; i < v.size(); ++i) {
    BitRow g = spread(frontiers.back(), M);
    g &= v[i] ? ones : zeros;
    if (g.none()) return std::nullopt;
    frontiers.push_back(std::move(g));
  }
  EmbeddingWitness w;
  w.gap_bound = M;
  w.positions.resize(v.size());
  std::size_t p = frontiers.back().find_first();
  for (std::size_t i = v.size(); i-- > 0;) {
    w.positions[i] = p;
    const std::size_t lo = p > M ? p - M : 0;
    p = frontiers[i].find_next(lo);  // lies below the current p by construction
  }
  return w;
}

bool embeds(const Word& v, const Word& y, unsigned M) {
  require_gap(M);
  const BitRow ones = letter_mask(y, 1);
  const BitRow zeros = letter_mask(y, 0);
  BitRow f(y.size() + 1);
  f.set(0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    f = spread(f, M);
    f &= v[i] ? ones : zeros;
    if (f.none()) return false;
  }
  return true;
}

BigInt embed_count(const Word& v, const Word& y, unsigned M) {
  require_gap(M);
  const std::size_t L = y.size();
  std::vector<BigInt> cur(L + 1), next(L + 1);
  cur[0] = 1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    BigInt window = 0;  // sum of cur[p-M .. p-1]
    next[0] = 0;
    for (std::size_t p = 1; p <= L; ++p) {
      window += cur[p - 1];
      if (p > M) window -= cur[p - 1 - M];
      next[p] = (y[p - 1] == v[i]) ? window : BigInt(0);
    }
    std::swap(cur, next);
  }
  BigInt total = 0;
  for (const auto& c : cur) total += c;
  return total;
}

std::uint64_t count_embedding_targets(const Word& v, unsigned M) {
  require_gap(M);
  const std::size_t n = v.size();
  const std::size_t L = n * M;
  if (L > 40) throw BudgetExceeded("enumeration over 2^" + std::to_string(L) + " targets");
  if (n == 0) return 1;
  const std::uint64_t full = (std::uint64_t{1} << L) - 1;
  std::uint64_t hits = 0;
  for (std::uint64_t y = 0; y <= full; ++y) {
    const std::uint64_t ones = y << 1;
    const std::uint64_t zeros = (~y & full) << 1;
    std::uint64_t f = 1;
    for (std::size_t i = 0; i < n && f; ++i) f = spread64(f, M) & (v[i] ? ones : zeros);
    hits += f != 0;
  }
  return hits;
}

Rational embed_prob_exact(const Word& v, unsigned M, unsigned budget) {
  require_gap(M);
  const std::size_t cells = v.size() * M;
  if (cells > budget)
    throw BudgetExceeded("embed_prob_exact: n*M = " + std::to_string(cells) + " exceeds budget " +
                         std::to_string(budget));
  Rational q(BigInt(std::to_string(count_embedding_targets(v, M))));
  q *= inverse_power_of_two(static_cast<unsigned>(cells));
  q.canonicalize();
  return q;
}

RecursionParams RecursionParams::for_gap(unsigned M) {
  require_gap(M);
  RecursionParams r;
  r.M = M;
  r.beta = inverse_power_of_two(M);
  r.alpha = 1 - r.beta;
  return r;
}

std::vector<Rational> vn_recursion(unsigned M, std::size_t n_max) {
  const auto params = RecursionParams::for_gap(M);
  const Rational a = params.linear_coefficient();
  const Rational b = params.constant_coefficient();
  std::vector<Rational> v;
  v.reserve(n_max + 1);
  v.emplace_back(1);
  if (n_max >= 1) v.push_back(params.alpha);
  for (std::size_t n = 1; n < n_max; ++n) {
    Rational next = a * v[n] - b * v[n - 1];
    next.canonicalize();
    v.push_back(next);
  }
  return v;
}

CharRoots char_roots(unsigned M) {
  require_gap(M);
  const long double beta = std::ldexp(1.0L, -static_cast<int>(M));
  const long double alpha = 1.0L - beta;
  const long double b = alpha + (M - 1) * beta;
  const long double c = beta * (M - 2 * alpha);
  const long double disc = std::sqrt(b * b - 4 * c);
  CharRoots r;
  r.large = (b + disc) / 2;
  r.small = c / r.large;
  return r;
}

ExtremalReport extremal_scan(std::size_t n, unsigned M, unsigned workers, unsigned budget_log2) {
  require_gap(M);
  if (n + n * M > budget_log2)
    throw BudgetExceeded("extremal_scan: 2^" + std::to_string(n + n * M) +
                         " (word, target) pairs exceeds budget 2^" + std::to_string(budget_log2));
  const std::size_t words = std::size_t{1} << n;
  ExtremalReport r;
  r.n = n;
  r.M = M;
  const auto counts = parallel_map(words, workers, [&](std::size_t b) {
    return count_embedding_targets(Word::from_bits(b, n), M);
  });
  r.table.reserve(words);
  const Rational scale = inverse_power_of_two(static_cast<unsigned>(n * M));
  for (auto c : counts) {
    Rational q(BigInt(std::to_string(c)));
    q *= scale;
    q.canonicalize();
    r.table.push_back(q);
  }
  const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
  for (std::size_t b = 0; b < words; ++b) {
    if (counts[b] == *hi) r.best.push_back(Word::from_bits(b, n));
    if (counts[b] == *lo) r.worst.push_back(Word::from_bits(b, n));
  }
  return r;
}

Rational mean_embeddings_closed_form(std::size_t n, unsigned M) {
  Rational base(static_cast<unsigned long>(M), 2UL);
  base.canonicalize();
  Rational out(1);
  for (std::size_t i = 0; i < n; ++i) out *= base;
  return out;
}

Rational mean_embeddings(std::size_t n, unsigned M) {
  require_gap(M);
  // expected[p] = expected number of partial embeddings of w_1..w_i with
  // m_i = p. Each new letter matches the fair coin Y_p with probability 1/2,
  // independently of earlier letters since positions are distinct.
  const std::size_t L = n * M;
  const Rational half(1, 2);
  std::vector<Rational> cur(L + 1), next(L + 1);
  cur[0] = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Rational window = 0;
    next[0] = 0;
    for (std::size_t p = 1; p <= L; ++p) {
      window += cur[p - 1];
      if (p > M) window -= cur[p - 1 - M];
      next[p] = window * half;
    }
    std::swap(cur, next);
  }
  Rational total = std::accumulate(cur.begin(), cur.end(), Rational(0));
  total.canonicalize();
  if (total != mean_embeddings_closed_form(n, M))
    throw PropertyViolation("mean_embeddings: DP value " + to_fraction_string(total) +
                            " differs from (M/2)^n");
  return total;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

std::vector<std::vector<std::size_t>> all_position_sets(std::size_t n, unsigned M) {
  std::vector<std::vector<std::size_t>> sets;
  std::vector<unsigned> gaps(n, 1);
  while (true) {
    std::vector<std::size_t> pos(n);
    std::size_t acc = 0;
    for (std::size_t i = 0; i < n; ++i) pos[i] = acc += gaps[i];
    sets.push_back(std::move(pos));
    std::size_t k = 0;
    while (k < n && gaps[k] == M) gaps[k++] = 1;
    if (k == n) break;
    ++gaps[k];
  }
  return sets;
}

}  // namespace

Rational second_moment(std::size_t n, unsigned M, std::uint64_t pair_budget) {
  require_gap(M);
  if (n == 0) return Rational(1);
  long double pairs = std::pow(static_cast<long double>(M), 2.0L * n);
  if (pairs > static_cast<long double>(pair_budget))
    throw BudgetExceeded("second_moment: " + std::to_string(static_cast<double>(pairs)) +
                         " gap-sequence pairs exceeds budget " + std::to_string(pair_budget));
  const auto sets = all_position_sets(n, M);
  const std::size_t L = n * M;
  // by_exponent[e] counts pairs whose joint constraint has probability 2^-e.
  std::vector<std::uint64_t> by_exponent(2 * n + 1, 0);
  std::vector<char> used(L + 1);
  for (const auto& P : sets) {
    for (const auto& Q : sets) {
      // Variables: X_1..X_n and Y at every position of P ∪ Q. Constraints
      // Y_{p_i} = X_i = Y_{q_i} glue each X_i to both positions, so the
      // number of free fair bits is the component count of the position
      // graph with edges {p_i, q_i}.
      std::fill(used.begin(), used.end(), 0);
      std::size_t union_size = 0;
      for (const auto* set : {&P, &Q})
        for (auto p : *set)
          if (!used[p]) {
            used[p] = 1;
            ++union_size;
          }
      UnionFind uf(L + 1);
      std::size_t merges = 0;
      for (std::size_t i = 0; i < n; ++i) merges += uf.unite(P[i], Q[i]);
      const std::size_t components = union_size - merges;
      const std::size_t vars = n + union_size;
      ++by_exponent[vars - components];
    }
  }
  Rational total = 0;
  for (std::size_t e = 0; e < by_exponent.size(); ++e)
    if (by_exponent[e])
      total += Rational(BigInt(std::to_string(by_exponent[e]))) *
               inverse_power_of_two(static_cast<unsigned>(e));
  total.canonicalize();
  return total;
}

Rational second_moment_ratio(std::size_t n, unsigned M, std::uint64_t pair_budget) {
  const Rational mean = mean_embeddings_closed_form(n, M);
  Rational r = second_moment(n, M, pair_budget) / (mean * mean);
  r.canonicalize();
  return r;
}

std::vector<MomentReport> moment_reports(std::size_t n_max, unsigned M, std::uint64_t pair_budget) {
  std::vector<MomentReport> out;
  for (std::size_t n = 0; n <= n_max; ++n) {
    MomentReport m;
    m.n = n;
    m.mean = mean_embeddings(n, M);
    m.second_moment_ratio = second_moment_ratio(n, M, pair_budget);
    if (n > 0) {
      const Rational step = m.second_moment_ratio / out.back().second_moment_ratio;
      m.growth_estimate = step.get_d();
    }
    out.push_back(std::move(m));
  }
  return out;
}

Estimate embed_survival_mc(unsigned M, std::size_t n, double p_x, double p_y, const McConfig& cfg) {
  require_gap(M);
  return estimate_replicas(cfg, [&](Stream& s) {
    const Word x = bernoulli_word(s, p_x, n);
    const Word y = bernoulli_word(s, p_y, n * M);
    return embeds(x, y, M) ? 1 : 0;
  });
}

Estimate word_survival_mc(const Word& w, unsigned M, double p_y, const McConfig& cfg) {
  require_gap(M);
  return estimate_replicas(cfg, [&](Stream& s) {
    const Word y = bernoulli_word(s, p_y, w.size() * M);
    return embeds(w, y, M) ? 1 : 0;
  });
}

}  // namespace demon::embed1d
