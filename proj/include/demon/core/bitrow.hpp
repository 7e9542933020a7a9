#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace demon {

/// Fixed-length packed bit vector. Used both as word storage and as the
/// frontier of reachable states in every path/embedding DP.
class BitRow {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  BitRow() = default;
  explicit BitRow(std::size_t nbits) : n_(nbits), blocks_((nbits + 63) / 64, 0) {}

  std::size_t size() const noexcept { return n_; }

  bool test(std::size_t i) const noexcept { return (blocks_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool value = true) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (value)
      blocks_[i >> 6] |= bit;
    else
      blocks_[i >> 6] &= ~bit;
  }
  void reset() noexcept;
  void set_all() noexcept;

  bool any() const noexcept;
  bool none() const noexcept { return !any(); }
  std::size_t count() const noexcept;

  /// First set index >= from, or npos.
  std::size_t find_next(std::size_t from) const noexcept;
  std::size_t find_first() const noexcept { return find_next(0); }

  BitRow& operator|=(const BitRow& other) noexcept;
  BitRow& operator&=(const BitRow& other) noexcept;

  /// Bit i moves to i + k; bits shifted past size() are dropped.
  BitRow shifted_up(std::size_t k) const;
  /// Bit i moves to i - k.
  BitRow shifted_down(std::size_t k) const;
  BitRow operator~() const;

  std::span<const std::uint64_t> blocks() const noexcept { return blocks_; }

  friend bool operator==(const BitRow&, const BitRow&) = default;

 private:
  void clear_tail() noexcept;

  std::size_t n_ = 0;
  std::vector<std::uint64_t> blocks_;
};

}  // namespace demon
