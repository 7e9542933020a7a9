#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "demon/core/estimate.hpp"
#include "demon/core/parallel.hpp"
#include "demon/core/rng.hpp"

namespace demon {

/// Shared replica settings for every Monte Carlo operation.
struct McConfig {
  std::size_t replicas = 1000;
  std::uint64_t master_seed = 0;
  unsigned workers = 1;
};

/// Replica k runs on Stream{master_seed, k}; samples are merged by index.
template <class Fn>
std::vector<double> replica_samples(const McConfig& cfg, Fn&& per_replica) {
  if (cfg.replicas == 0) throw std::invalid_argument("replicas must be at least 1");
  return parallel_map(cfg.replicas, cfg.workers, [&](std::size_t k) {
    Stream stream(RngSpec{cfg.master_seed, k});
    return static_cast<double>(per_replica(stream));
  });
}

template <class Fn>
Estimate estimate_replicas(const McConfig& cfg, Fn&& per_replica) {
  const auto samples = replica_samples(cfg, per_replica);
  return Estimate::from_samples(samples, RngSpec{cfg.master_seed, 0});
}

}  // namespace demon
