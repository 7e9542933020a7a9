#include "demon/core/bitrow.hpp"

#include <algorithm>
#include <bit>

namespace demon {

void BitRow::reset() noexcept { std::fill(blocks_.begin(), blocks_.end(), 0); }

void BitRow::set_all() noexcept {
  std::fill(blocks_.begin(), blocks_.end(), ~std::uint64_t{0});
  clear_tail();
}

void BitRow::clear_tail() noexcept {
  const std::size_t rem = n_ & 63;
  if (rem != 0 && !blocks_.empty()) blocks_.back() &= (std::uint64_t{1} << rem) - 1;
}

bool BitRow::any() const noexcept {
  return std::any_of(blocks_.begin(), blocks_.end(), [](std::uint64_t b) { return b != 0; });
}

std::size_t BitRow::count() const noexcept {
  std::size_t c = 0;
  for (auto b : blocks_) c += static_cast<std::size_t>(std::popcount(b));
  return c;
}

std::size_t BitRow::find_next(std::size_t from) const noexcept {
  if (from >= n_) return npos;
  std::size_t bi = from >> 6;
  std::uint64_t b = blocks_[bi] & (~std::uint64_t{0} << (from & 63));
  while (true) {
    if (b != 0) return (bi << 6) + static_cast<std::size_t>(std::countr_zero(b));
    if (++bi == blocks_.size()) return npos;
    b = blocks_[bi];
  }
}

BitRow& BitRow::operator|=(const BitRow& other) noexcept {
  const std::size_t m = std::min(blocks_.size(), other.blocks_.size());
  for (std::size_t i = 0; i < m; ++i) blocks_[i] |= other.blocks_[i];
  clear_tail();
  return *this;
}

BitRow& BitRow::operator&=(const BitRow& other) noexcept {
  const std::size_t m = std::min(blocks_.size(), other.blocks_.size());
  for (std::size_t i = 0; i < m; ++i) blocks_[i] &= other.blocks_[i];
  for (std::size_t i = m; i < blocks_.size(); ++i) blocks_[i] = 0;
  return *this;
}

BitRow BitRow::shifted_up(std::size_t k) const {
  BitRow out(n_);
  const std::size_t words = k >> 6;
  const unsigned bits = static_cast<unsigned>(k & 63);
  const std::size_t nb = blocks_.size();
  for (std::size_t i = nb; i-- > words;) {
    std::uint64_t v = blocks_[i - words] << bits;
    if (bits != 0 && i - words > 0) v |= blocks_[i - words - 1] >> (64 - bits);
    out.blocks_[i] = v;
  }
  out.clear_tail();
  return out;
}

BitRow BitRow::shifted_down(std::size_t k) const {
  BitRow out(n_);
  const std::size_t words = k >> 6;
  const unsigned bits = static_cast<unsigned>(k & 63);
  const std::size_t nb = blocks_.size();
  for (std::size_t i = 0; i + words < nb; ++i) {
    std::uint64_t v = blocks_[i + words] >> bits;
    if (bits != 0 && i + words + 1 < nb) v |= blocks_[i + words + 1] << (64 - bits);
    out.blocks_[i] = v;
  }
  return out;
}

BitRow BitRow::operator~() const {
  BitRow out(n_);
  for (std::size_t i = 0; i < blocks_.size(); ++i) out.blocks_[i] = ~blocks_[i];
  out.clear_tail();
  return out;
}

}  // namespace demon
