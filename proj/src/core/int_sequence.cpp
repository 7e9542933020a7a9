#include "demon/core/int_sequence.hpp"

#include <charconv>
#include <stdexcept>

namespace demon {

IntSequence::IntSequence(std::vector<std::uint32_t> values, std::uint32_t alphabet)
    : values_(std::move(values)), alphabet_(alphabet) {
  if (alphabet_ < 2) throw std::invalid_argument("alphabet size must be at least 2");
  for (auto v : values_)
    if (v < 1 || v > alphabet_)
      throw std::invalid_argument("sequence value " + std::to_string(v) + " outside {1.." +
                                  std::to_string(alphabet_) + "}");
}

IntSequence IntSequence::parse(std::string_view text, std::uint32_t alphabet) {
  std::vector<std::uint32_t> values;
  std::size_t start = 0;
  while (start <= text.size() && !text.empty()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    const auto field = text.substr(start, end - start);
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty())
      throw std::invalid_argument("bad integer sequence: '" + std::string(text) + "'");
    values.push_back(v);
    start = end + 1;
  }
  return IntSequence(std::move(values), alphabet);
}

std::string IntSequence::str() const {
  std::string s;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(values_[i]);
  }
  return s;
}

IntSequence sample_uniform_sequence(std::uint32_t alphabet, std::size_t n, Stream& stream) {
  if (alphabet < 2) throw std::invalid_argument("alphabet size must be at least 2");
  std::vector<std::uint32_t> v(n);
  for (auto& x : v) x = static_cast<std::uint32_t>(stream.below(alphabet)) + 1;
  return IntSequence(std::move(v), alphabet);
}

IntSequence sample_uniform_sequence(std::uint32_t alphabet, std::size_t n, RngSpec rng) {
  Stream s(rng);
  return sample_uniform_sequence(alphabet, n, s);
}

}  // namespace demon
