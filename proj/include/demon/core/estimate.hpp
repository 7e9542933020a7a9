#pragma once

#include <cstddef>
#include <span>

#include "demon/core/rng.hpp"

namespace demon {

/// Monte Carlo result. std_error is the sample standard deviation (n - 1
/// denominator) over sqrt(replicas); zero for a single replica.
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t replicas = 0;
  RngSpec rng;

  static Estimate from_samples(std::span<const double> samples, RngSpec rng);
  static Estimate from_indicators(std::span<const char> hits, RngSpec rng);

  /// |mean - value| <= k * std_error; a zero-variance estimate must match exactly.
  bool within(double value, double k) const;
};

/// Standard error of the difference of two independent estimates.
double combined_std_error(const Estimate& a, const Estimate& b);

}  // namespace demon
