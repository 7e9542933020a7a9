#pragma once

#include <cstdint>
#include <limits>

namespace demon {

/// Identifies one reproducible random stream. Replica k of an experiment
/// draws from stream_id = k under the experiment's master seed.
struct RngSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  friend bool operator==(const RngSpec&, const RngSpec&) = default;
};

std::uint64_t mix64(std::uint64_t z) noexcept;

/// Derives an unrelated master seed for a named sub-experiment, so two
/// families of replicas sharing a master seed never share streams.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t tag) noexcept;

/// Counter-based generator: output k is a keyed hash of (master_seed,
/// stream_id, k). No hidden state beyond the counter, so the sequence is a
/// pure function of the RngSpec and identical on every platform.
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(RngSpec spec) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return next_u64(); }
  std::uint64_t next_u64() noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Uniform on {0, ..., bound - 1}; bound >= 1.
  std::uint64_t below(std::uint64_t bound) noexcept;
  /// 1 with probability p. p <= 0 always yields 0 and p >= 1 always 1.
  bool bernoulli(double p) noexcept { return uniform() < p; }

  std::uint64_t counter() const noexcept { return counter_; }
  const RngSpec& spec() const noexcept { return spec_; }

 private:
  RngSpec spec_;
  std::uint64_t key_a_;
  std::uint64_t key_b_;
  std::uint64_t counter_ = 0;
};

}  // namespace demon
