#include "demon/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>
#include <string>

#include "demon/core/bitrow.hpp"
#include "demon/core/errors.hpp"

namespace demon::schedule {

ScheduleGrid::ScheduleGrid(IntSequence x, IntSequence y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.alphabet() != y_.alphabet()) throw std::invalid_argument("walks use different alphabets");
  if (x_.size() == 0 || y_.size() == 0) throw std::invalid_argument("walks need a starting point");
}

ScheduleGrid sample_grid(std::uint32_t M, std::size_t n, Stream& stream) {
  IntSequence x = sample_uniform_sequence(M, n + 1, stream);
  IntSequence y = sample_uniform_sequence(M, n + 1, stream);
  return ScheduleGrid(std::move(x), std::move(y));
}

bool validate_path(const ScheduleGrid& grid, const PathWitness& path) {
  if (path.vertices.empty() || !(path.vertices.front() == Vertex{0, 0})) return false;
  for (std::size_t k = 1; k < path.vertices.size(); ++k) {
    const Vertex a = path.vertices[k - 1], b = path.vertices[k];
    const bool step_i = b.i == a.i + 1 && b.j == a.j;
    const bool step_j = b.j == a.j + 1 && b.i == a.i;
    if (!step_i && !step_j) return false;
    if (b.i > grid.max_i() || b.j > grid.max_j()) return false;
    if (!grid.open(b.i, b.j)) return false;
  }
  return true;
}

namespace {

// Frontier over antidiagonal d, indexed by the i coordinate.
BitRow open_on_antidiagonal(const ScheduleGrid& grid, std::size_t d, std::size_t width) {
  BitRow mask(width);
  const std::size_t lo = d > grid.max_j() ? d - grid.max_j() : 0;
  const std::size_t hi = std::min(d, grid.max_i());
  for (std::size_t i = lo; i <= hi && i < width; ++i)
    if (grid.open(i, d - i)) mask.set(i);
  return mask;
}

BitRow advance(const BitRow& frontier, const ScheduleGrid& grid, std::size_t next_d) {
  BitRow g = frontier.shifted_up(1);  // step in i
  g |= frontier;                      // step in j
  g &= open_on_antidiagonal(grid, next_d, frontier.size());
  return g;
}

}  // namespace

std::optional<PathWitness> directed_survival(const ScheduleGrid& grid, std::size_t depth) {
  if (grid.max_i() < depth || grid.max_j() < depth)
    throw std::invalid_argument("grid smaller than requested depth");
  const std::size_t width = depth + 1;
  std::vector<BitRow> frontiers;
  frontiers.reserve(depth + 1);
  BitRow f(width);
  f.set(0);
  frontiers.push_back(std::move(f));
  for (std::size_t d = 1; d <= depth; ++d) {
    BitRow g = advance(frontiers.back(), grid, d);
    if (g.none()) return std::nullopt;
    frontiers.push_back(std::move(g));
  }
  PathWitness path;
  path.vertices.resize(depth + 1);
  std::size_t i = frontiers.back().find_first();
  for (std::size_t d = depth;; --d) {
    path.vertices[d] = Vertex{i, d - i};
    if (d == 0) break;
    // Predecessor is (i, j-1) or (i-1, j) on antidiagonal d-1.
    if (i <= d - 1 && frontiers[d - 1].test(i)) continue;
    --i;
  }
  return path;
}

std::size_t survival_depth(const ScheduleGrid& grid, std::size_t max_depth) {
  const std::size_t limit = std::min({max_depth, grid.max_i() + grid.max_j()});
  BitRow f(grid.max_i() + 1);
  f.set(0);
  for (std::size_t d = 1; d <= limit; ++d) {
    f = advance(f, grid, d);
    if (f.none()) return d - 1;
  }
  return limit;
}

std::vector<Estimate> survival_curve_mc(std::uint32_t M, std::span<const std::size_t> depths,
                                        const McConfig& cfg) {
  if (depths.empty()) return {};
  const std::size_t max_depth = *std::max_element(depths.begin(), depths.end());
  const auto reached = parallel_map(cfg.replicas, cfg.workers, [&](std::size_t k) {
    Stream s(RngSpec{cfg.master_seed, k});
    return survival_depth(sample_grid(M, max_depth, s), max_depth);
  });
  std::vector<Estimate> out;
  for (auto depth : depths) {
    std::vector<double> hits(reached.size());
    for (std::size_t k = 0; k < reached.size(); ++k) hits[k] = reached[k] >= depth ? 1.0 : 0.0;
    out.push_back(Estimate::from_samples(hits, RngSpec{cfg.master_seed, 0}));
  }
  return out;
}

IntSequence reduce_modulo(const IntSequence& fine, std::uint32_t M) {
  std::vector<std::uint32_t> v(fine.size());
  for (std::size_t t = 0; t < fine.size(); ++t) v[t] = (fine[t] - 1) % M + 1;
  return IntSequence(std::move(v), M);
}

CouplingSample coupling_sample(std::uint32_t M, std::uint32_t k, std::size_t depth, Stream& stream) {
  if (k < 1) throw std::invalid_argument("coupling factor k must be at least 1");
  const ScheduleGrid fine = sample_grid(M * k, depth, stream);
  const ScheduleGrid reduced(reduce_modulo(fine.x(), M), reduce_modulo(fine.y(), M));
  CouplingSample out;
  for (std::size_t i = 0; i <= depth && out.open_superset; ++i)
    for (std::size_t j = 0; j <= depth; ++j)
      if (reduced.open(i, j) && !fine.open(i, j)) {
        out.open_superset = false;
        break;
      }
  out.fine_survives = directed_survival(fine, depth).has_value();
  out.reduced_survives = directed_survival(reduced, depth).has_value();
  return out;
}

std::vector<CouplingSample> coupling_check(std::uint32_t M, std::uint32_t k, std::size_t depth,
                                           const McConfig& cfg) {
  return parallel_map(cfg.replicas, cfg.workers, [&](std::size_t r) {
    Stream s(RngSpec{cfg.master_seed, r});
    return coupling_sample(M, k, depth, s);
  });
}

bool undirected_escape(const ScheduleGrid& grid, std::size_t n) {
  if (grid.max_i() < n || grid.max_j() < n) throw std::invalid_argument("grid smaller than box");
  const std::size_t side = n + 1;
  std::vector<char> seen(side * side, 0);
  std::deque<Vertex> queue{{0, 0}};
  seen[0] = 1;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    if (v.i == n || v.j == n) return true;
    auto visit = [&](std::size_t i, std::size_t j) {
      if (!seen[i * side + j] && grid.open(i, j)) {
        seen[i * side + j] = 1;
        queue.push_back({i, j});
      }
    };
    if (v.i > 0) visit(v.i - 1, v.j);
    visit(v.i + 1, v.j);
    if (v.j > 0) visit(v.i, v.j - 1);
    visit(v.i, v.j + 1);
  }
  return false;
}

Estimate undirected_escape_mc(std::uint32_t M, std::size_t n, const McConfig& cfg) {
  return estimate_replicas(cfg, [&](Stream& s) { return undirected_escape(sample_grid(M, n, s), n) ? 1 : 0; });
}

envmodels::JointPmf kwise_joint(std::span<const Vertex> vertices, std::uint32_t M, std::uint64_t budget) {
  if (M < 2) throw std::invalid_argument("alphabet size must be at least 2");
  if (vertices.size() > 24) throw BudgetExceeded("kwise_joint: too many vertices");
  std::map<std::size_t, std::size_t> xs, ys;  // index -> slot
  for (const auto& v : vertices) {
    if (v.i == 0 && v.j == 0) continue;
    xs.emplace(v.i, 0);
    ys.emplace(v.j, 0);
  }
  std::size_t slot = 0;
  for (auto& [idx, s] : xs) s = slot++;
  for (auto& [idx, s] : ys) s = slot++;
  const std::size_t vars = slot;
  const long double terms = std::pow(static_cast<long double>(M), static_cast<long double>(vars));
  if (terms > static_cast<long double>(budget))
    throw BudgetExceeded("kwise_joint: " + std::to_string(static_cast<double>(terms)) +
                         " assignments exceeds budget " + std::to_string(budget));

  std::vector<std::uint64_t> counts(std::size_t{1} << vertices.size(), 0);
  std::vector<std::uint32_t> value(vars, 0);
  const auto total = static_cast<std::uint64_t>(terms);
  for (std::uint64_t t = 0; t < total; ++t) {
    std::uint64_t outcome = 0;
    for (std::size_t k = 0; k < vertices.size(); ++k) {
      const auto& v = vertices[k];
      const bool is_open = (v.i == 0 && v.j == 0) || value[xs.at(v.i)] != value[ys.at(v.j)];
      if (is_open) outcome |= std::uint64_t{1} << k;
    }
    ++counts[outcome];
    for (std::size_t s = 0; s < vars && ++value[s] == M; ++s) value[s] = 0;
  }
  std::vector<std::string> labels;
  for (const auto& v : vertices) labels.push_back("(" + std::to_string(v.i) + "," + std::to_string(v.j) + ")");
  std::vector<Rational> probs;
  probs.reserve(counts.size());
  for (auto c : counts) probs.emplace_back(Rational(BigInt(std::to_string(c)), BigInt(std::to_string(total))));
  return envmodels::JointPmf(std::move(labels), std::move(probs));
}

}  // namespace demon::schedule
