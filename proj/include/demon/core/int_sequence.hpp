#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "demon/core/rng.hpp"

namespace demon {

/// Finite sequence with values in {1..M}; a random-walk trajectory on the
/// complete graph with loops, which is just an iid uniform sequence.
class IntSequence {
 public:
  IntSequence() = default;
  /// Throws std::invalid_argument if M < 2 or any value is outside {1..M}.
  IntSequence(std::vector<std::uint32_t> values, std::uint32_t alphabet);

  /// Comma-separated integers, e.g. "1,3,2".
  static IntSequence parse(std::string_view text, std::uint32_t alphabet);

  std::size_t size() const noexcept { return values_.size(); }
  std::uint32_t alphabet() const noexcept { return alphabet_; }
  std::uint32_t operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const std::uint32_t> values() const noexcept { return values_; }

  std::string str() const;

  friend bool operator==(const IntSequence&, const IntSequence&) = default;

 private:
  std::vector<std::uint32_t> values_;
  std::uint32_t alphabet_ = 2;
};

/// n iid uniform values on {1..M}. Throws std::invalid_argument if M < 2.
IntSequence sample_uniform_sequence(std::uint32_t alphabet, std::size_t n, RngSpec rng);
IntSequence sample_uniform_sequence(std::uint32_t alphabet, std::size_t n, Stream& stream);

}  // namespace demon
