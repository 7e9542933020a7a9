#pragma once

// One-dimensional M-embedding: v ⊑_M y iff there are positions
// 0 = m_0 < m_1 < ... < m_n with v_i = y_{m_i} and 1 <= m_i - m_{i-1} <= M.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "demon/core/estimate.hpp"
#include "demon/core/monte_carlo.hpp"
#include "demon/core/rational.hpp"
#include "demon/core/word.hpp"

namespace demon::embed1d {

struct EmbeddingWitness {
  std::vector<std::size_t> positions;  // 1-based m_1 < m_2 < ...
  unsigned gap_bound = 2;
};

/// Independent check of a witness against v and y: letters match, gaps in
/// [1, M], positions inside y.
bool validate_witness(const Word& v, const Word& y, const EmbeddingWitness& w);

/// Frontier DP over reachable positions, witness by backtracking.
std::optional<EmbeddingWitness> embed_decide(const Word& v, const Word& y, unsigned M);

/// Decision only; no frontier history is kept.
bool embeds(const Word& v, const Word& y, unsigned M);

/// Exact number of M-embeddings of v in y.
BigInt embed_count(const Word& v, const Word& y, unsigned M);

inline constexpr unsigned kDefaultExactBudget = 24;

/// Number of y in {0,1}^{Mn} with v ⊑_M y, by exhaustive enumeration.
/// Positions beyond Mn can never be used since m_i <= M i.
std::uint64_t count_embedding_targets(const Word& v, unsigned M);

/// Exact P(v ⊑_M Y) for fair-coin Y. Refuses (BudgetExceeded) when
/// n * M > budget.
Rational embed_prob_exact(const Word& v, unsigned M, unsigned budget = kDefaultExactBudget);

struct RecursionParams {
  unsigned M = 2;
  Rational alpha;  // 1 - 2^-M
  Rational beta;   // 2^-M

  static RecursionParams for_gap(unsigned M);
  Rational linear_coefficient() const { return alpha + (M - 1) * beta; }
  Rational constant_coefficient() const { return beta * (M - 2 * alpha); }
};

/// v_0..v_{n_max} for the alternating word:
/// v_{n+1} = (alpha + (M-1) beta) v_n - beta (M - 2 alpha) v_{n-1},
/// v_0 = 1, v_1 = alpha.
std::vector<Rational> vn_recursion(unsigned M, std::size_t n_max);

struct CharRoots {
  long double small = 0;
  long double large = 0;
};

/// Roots of x^2 - (alpha + (M-1) beta) x + beta (M - 2 alpha).
CharRoots char_roots(unsigned M);

inline constexpr unsigned kDefaultScanBudgetLog2 = 36;

struct ExtremalReport {
  std::size_t n = 0;
  unsigned M = 2;
  /// table[b] = P(w ⊑_M Y) where letter k of w is bit k of b.
  std::vector<Rational> table;
  std::vector<Word> best;
  std::vector<Word> worst;

  Rational probability(const Word& w) const { return table[w.to_bits()]; }
};

/// Exact probability of every w in {0,1}^n. Refuses when
/// n + M n > budget_log2 (total enumerated (w, Y) pairs).
ExtremalReport extremal_scan(std::size_t n, unsigned M, unsigned workers = 1,
                             unsigned budget_log2 = kDefaultScanBudgetLog2);

/// E(N_n(w)) for fair-coin Y, summed over every gap sequence by a positional
/// DP; the value does not depend on w. Throws PropertyViolation if the DP
/// disagrees with (M/2)^n.
Rational mean_embeddings(std::size_t n, unsigned M);
Rational mean_embeddings_closed_form(std::size_t n, unsigned M);

inline constexpr std::uint64_t kDefaultPairBudget = std::uint64_t{1} << 16;

/// E(N_n(X)^2) over independent fair X and Y, by enumerating every pair of
/// gap sequences and partitioning the union of their position sets.
Rational second_moment(std::size_t n, unsigned M, std::uint64_t pair_budget = kDefaultPairBudget);
Rational second_moment_ratio(std::size_t n, unsigned M,
                             std::uint64_t pair_budget = kDefaultPairBudget);

struct MomentReport {
  std::size_t n = 0;
  Rational mean;
  Rational second_moment_ratio;
  /// ratio_n / ratio_{n-1}; a finite-n proxy for the growth rate c_M.
  double growth_estimate = 0.0;
};

std::vector<MomentReport> moment_reports(std::size_t n_max, unsigned M,
                                         std::uint64_t pair_budget = kDefaultPairBudget);

/// P(X_{1..n} ⊑_M Y_{1..Mn}) with X ~ Bernoulli(p_x), Y ~ Bernoulli(p_y).
Estimate embed_survival_mc(unsigned M, std::size_t n, double p_x, double p_y, const McConfig& cfg);

/// P(w ⊑_M Y_{1..M|w|}) for a fixed word.
Estimate word_survival_mc(const Word& w, unsigned M, double p_y, const McConfig& cfg);

}  // namespace demon::embed1d
