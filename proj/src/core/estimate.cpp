#include "demon/core/estimate.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace demon {

Estimate Estimate::from_samples(std::span<const double> samples, RngSpec rng) {
  if (samples.empty()) throw std::invalid_argument("estimate needs at least one replica");
  const auto n = static_cast<double>(samples.size());
  double sum = 0.0;
  for (double x : samples) sum += x;
  const double mean = sum / n;
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  Estimate e;
  e.mean = mean;
  e.std_error = samples.size() > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;
  e.replicas = samples.size();
  e.rng = rng;
  return e;
}

Estimate Estimate::from_indicators(std::span<const char> hits, RngSpec rng) {
  std::vector<double> xs(hits.size());
  for (std::size_t i = 0; i < hits.size(); ++i) xs[i] = hits[i] ? 1.0 : 0.0;
  return from_samples(xs, rng);
}

bool Estimate::within(double value, double k) const {
  return std::abs(mean - value) <= k * std_error + 1e-12;
}

double combined_std_error(const Estimate& a, const Estimate& b) {
  return std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
}

}  // namespace demon
