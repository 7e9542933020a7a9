#pragma once

// Brute-force oracles shared by unit and acceptance tests. They enumerate
// the objects directly and share no code with the library algorithms.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "demon/lattice2d.hpp"
#include "demon/schedule.hpp"

namespace oracle {

/// Some monotone open path of n steps from the origin: tries all 2^n step
/// sequences.
inline bool schedule_survives(const demon::schedule::ScheduleGrid& g, std::size_t n) {
  for (std::uint64_t steps = 0; steps < (std::uint64_t{1} << n); ++steps) {
    std::size_t i = 0, j = 0;
    bool ok = true;
    for (std::size_t t = 0; t < n && ok; ++t) {
      if ((steps >> t) & 1)
        ++i;
      else
        ++j;
      ok = g.open(i, j);
    }
    if (ok) return true;
  }
  return false;
}

/// Enumerates every self-avoiding walk of length |w| from the origin with no
/// letter pruning, then reads the letters along it.
inline bool saw_visible(const demon::lattice2d::Field2D& f, demon::lattice2d::LatticeKind kind,
                        demon::lattice2d::Cell origin, const demon::Word& w) {
  using demon::lattice2d::Cell;
  const auto& offsets = demon::lattice2d::neighbour_offsets(kind);
  std::vector<Cell> path{origin};
  bool found = false;
  auto rec = [&](auto&& self) -> void {
    if (found) return;
    if (path.size() == w.size() + 1) {
      bool ok = true;
      for (std::size_t k = 1; k <= w.size() && ok; ++k) ok = f.at(path[k]) == w[k - 1];
      found = ok;
      return;
    }
    const Cell c = path.back();
    for (const auto& [dx, dy] : offsets) {
      const long a = static_cast<long>(c.i) + dx, b = static_cast<long>(c.j) + dy;
      if (a < 1 || b < 1) continue;
      const Cell next{static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
      if (!f.contains(next) || std::find(path.begin(), path.end(), next) != path.end()) continue;
      path.push_back(next);
      self(self);
      path.pop_back();
    }
  };
  rec(rec);
  return found;
}

}  // namespace oracle
