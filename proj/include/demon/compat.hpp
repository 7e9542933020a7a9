#pragma once

// Finite-horizon compatibility of two binary words. x and y are compatible
// if deleting 0s from each leaves words x', y' with no position t at which
// both read 1. Only positions where both outputs still have letters count:
// once one word is used up the rest of the other is unconstrained.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "demon/core/estimate.hpp"
#include "demon/core/monte_carlo.hpp"
#include "demon/core/word.hpp"

namespace demon::compat {

struct DeletionWitness {
  std::vector<std::size_t> kept_x;  // 1-based, increasing
  std::vector<std::size_t> kept_y;
};

/// Checks independently of the DP: only 0s are dropped and the kept letters
/// never put two 1s at the same output position.
bool validate_deletion_witness(const Word& x, const Word& y, const DeletionWitness& w);

/// DP over consumed-prefix pairs (i, j). Moves: drop a 0 from x, drop a 0
/// from y, or emit one letter from each unless both are 1. Accepts once
/// either word is used up.
std::optional<DeletionWitness> compatible_prefix(const Word& x, const Word& y);

/// Largest horizon h <= min(|x|, |y|) at which the length-h prefixes are
/// compatible. Compatibility at h implies it at every shorter horizon.
std::size_t compatible_horizon(const Word& x, const Word& y);

inline constexpr std::size_t kOracleBudget = 24;

/// Tries every subset of 0-positions of both words. Throws BudgetExceeded
/// when |x| + |y| > budget.
bool compat_oracle(const Word& x, const Word& y, std::size_t budget = kOracleBudget);

struct MajorityCertificate {
  std::size_t N = 0;
};

/// Smallest N with more than N/2 ones in both x_1..x_N and y_1..y_N, which
/// rules out compatibility at horizon N. Throws std::invalid_argument when
/// the lengths differ.
std::optional<MajorityCertificate> majority_certificate(const Word& x, const Word& y);

/// psi_n(p): P(length-n Bernoulli(p) prefixes are compatible).
Estimate psi_mc(double p, std::size_t n, const McConfig& cfg);

/// psi_n(p) at several horizons from the same replicas (x_i = [U_i < p]),
/// so each replica's indicator is non-increasing in n.
std::vector<Estimate> psi_curve_horizons(double p, std::span<const std::size_t> horizons, const McConfig& cfg);

/// psi_n(p) at several p from shared uniforms, so each replica's indicator
/// is non-increasing in p.
std::vector<Estimate> psi_curve_densities(std::span<const double> ps, std::size_t n, const McConfig& cfg);

}  // namespace demon::compat
