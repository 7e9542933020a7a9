#include "demon/core/rng.hpp"

namespace demon {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t tag) noexcept {
  return mix64(mix64(master_seed + kGolden) ^ (tag * 0xD1B54A32D192ED03ULL + 1));
}

Stream::Stream(RngSpec spec) noexcept
    : spec_(spec),
      key_a_(mix64(spec.master_seed ^ 0x243F6A8885A308D3ULL)),
      key_b_(mix64(spec.stream_id * kGolden + key_a_)) {}

std::uint64_t Stream::next_u64() noexcept {
  const std::uint64_t c = counter_++;
  return mix64(mix64(c * kGolden + key_b_) ^ key_a_);
}

double Stream::uniform() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t Stream::below(std::uint64_t bound) noexcept {
  // Lemire's multiply-shift with rejection; exact uniformity.
  std::uint64_t x = next_u64();
  __uint128_t m = static_cast<__uint128_t>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = next_u64();
      m = static_cast<__uint128_t>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace demon
