#pragma once

// Clairvoyant scheduling on the complete graph with a loop at every vertex.
// Walks are iid uniform sequences X_0, X_1, ... and Y_0, Y_1, ... on {1..M};
// vertex (i, j) of the quadrant is open iff X_i != Y_j, the origin is open
// by declaration, and a good schedule is a monotone open path from (0, 0).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "demon/core/estimate.hpp"
#include "demon/core/int_sequence.hpp"
#include "demon/core/monte_carlo.hpp"
#include "demon/envmodels.hpp"

namespace demon::schedule {

struct Vertex {
  std::size_t i = 0;
  std::size_t j = 0;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Index 0 of each sequence is the walk's starting point, so the axis
/// vertices (i, 0) and (0, j) compare against it.
class ScheduleGrid {
 public:
  /// Throws std::invalid_argument if the alphabets differ or a sequence is empty.
  ScheduleGrid(IntSequence x, IntSequence y);

  bool open(std::size_t i, std::size_t j) const noexcept {
    return (i == 0 && j == 0) || x_[i] != y_[j];
  }
  /// Largest i (resp. j) coordinate in the grid.
  std::size_t max_i() const noexcept { return x_.size() - 1; }
  std::size_t max_j() const noexcept { return y_.size() - 1; }
  std::uint32_t alphabet() const noexcept { return x_.alphabet(); }

  const IntSequence& x() const noexcept { return x_; }
  const IntSequence& y() const noexcept { return y_; }

 private:
  IntSequence x_;
  IntSequence y_;
};

/// X_0..X_n and Y_0..Y_n iid uniform on {1..M}.
ScheduleGrid sample_grid(std::uint32_t M, std::size_t n, Stream& stream);

struct PathWitness {
  std::vector<Vertex> vertices;  // starts at (0,0)
};

/// Steps of +1 in exactly one coordinate, every vertex after the origin open.
bool validate_path(const ScheduleGrid& grid, const PathWitness& path);

/// Monotone open path from the origin to the antidiagonal i + j = depth, by
/// a frontier DP over antidiagonals. Throws std::invalid_argument if the
/// grid is smaller than depth in either coordinate.
std::optional<PathWitness> directed_survival(const ScheduleGrid& grid, std::size_t depth);

/// Largest d <= max_depth such that some open monotone path reaches i + j = d.
std::size_t survival_depth(const ScheduleGrid& grid, std::size_t max_depth);

/// One estimate per requested depth; every replica contributes to all
/// depths, so each sample is monotone in depth.
std::vector<Estimate> survival_curve_mc(std::uint32_t M, std::span<const std::size_t> depths,
                                        const McConfig& cfg);

struct CouplingSample {
  bool open_superset = true;      // every open vertex of the reduced grid is open in the fine grid
  bool fine_survives = false;     // on {1..kM}
  bool reduced_survives = false;  // after value -> ((value - 1) mod M) + 1
  bool ordering_holds() const { return fine_survives || !reduced_survives; }
};

/// Maps a walk on {1..kM} onto {1..M}.
IntSequence reduce_modulo(const IntSequence& fine, std::uint32_t M);

CouplingSample coupling_sample(std::uint32_t M, std::uint32_t k, std::size_t depth, Stream& stream);
std::vector<CouplingSample> coupling_check(std::uint32_t M, std::uint32_t k, std::size_t depth,
                                           const McConfig& cfg);

/// Open cluster of the origin (4-neighbour, quadrant box [0, n]^2) meets
/// i = n or j = n.
bool undirected_escape(const ScheduleGrid& grid, std::size_t n);
Estimate undirected_escape_mc(std::uint32_t M, std::size_t n, const McConfig& cfg);

inline constexpr std::uint64_t kDefaultKwiseBudget = 10'000'000;

/// Exact joint law of the open indicators at the given vertices, by
/// enumerating values of the distinct X and Y indices involved. Refuses
/// (BudgetExceeded) when M^(a+b) exceeds the budget.
envmodels::JointPmf kwise_joint(std::span<const Vertex> vertices, std::uint32_t M,
                                std::uint64_t budget = kDefaultKwiseBudget);

}  // namespace demon::schedule
