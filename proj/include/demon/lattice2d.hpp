#pragma once

// Two-dimensional embedding via good blocks, and words visible along
// self-avoiding walks on planar lattices.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "demon/core/estimate.hpp"
#include "demon/core/monte_carlo.hpp"
#include "demon/core/rational.hpp"
#include "demon/core/word.hpp"

namespace demon::lattice2d {

/// Cell (i, j), both 1-based.
struct Cell {
  std::size_t i = 0;
  std::size_t j = 0;
  bool operator==(const Cell&) const = default;
};

/// Binary array Y(i, j) for 1 <= i <= width, 1 <= j <= height.
class Field2D {
 public:
  Field2D() = default;
  Field2D(std::size_t width, std::size_t height) : width_(width), height_(height), bits_(width * height, 0) {}

  /// Y(i, j) = [U < p], drawn with i outer and j inner.
  static Field2D sample(double p, std::size_t width, std::size_t height, Stream& stream);
  /// Text form: line i holds Y(i, 1..height) as 0/1 characters. Blank lines
  /// are skipped; all lines must have equal length.
  static Field2D parse(std::istream& in);
  std::string to_text() const;

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  bool contains(Cell c) const noexcept { return c.i >= 1 && c.i <= width_ && c.j >= 1 && c.j <= height_; }
  int at(std::size_t i, std::size_t j) const { return bits_[(i - 1) * height_ + (j - 1)]; }
  int at(Cell c) const { return at(c.i, c.j); }
  void set(std::size_t i, std::size_t j, int letter) { bits_[(i - 1) * height_ + (j - 1)] = letter ? 1 : 0; }

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<char> bits_;
};

// ---------------------------------------------------------------------------
// Blocks

/// Block (i, j) of side R covers cells ((i-1)R, iR] x ((j-1)R, jR]. It is
/// good when it holds at least one 0 and at least one 1.
class BlockGrid {
 public:
  BlockGrid(const Field2D& field, std::size_t side);

  std::size_t side() const noexcept { return side_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  bool good(std::size_t i, std::size_t j) const { return good_[(i - 1) * height_ + (j - 1)] != 0; }

 private:
  std::size_t side_, width_, height_;
  std::vector<char> good_;
};

/// 1 - p^(R^2) - (1-p)^(R^2).
double block_good_prob(double p, std::size_t side);
Rational block_good_prob_exact(const Rational& p, std::size_t side);

/// Fraction of independently sampled R x R blocks that are good; one block
/// per replica.
Estimate block_good_frequency(double p, std::size_t side, const McConfig& cfg);

using BlockPath = std::vector<Cell>;

/// Path of `depth` good blocks from (1, 1), each step going to (i+1, j+1) or
/// (i+1, j+2). Needs field width >= depth R and height >= (2 depth - 1) R;
/// throws std::invalid_argument otherwise.
std::optional<BlockPath> block_percolation(const Field2D& field, std::size_t side, std::size_t depth);

/// Field dimensions that block_percolation needs for the given depth.
std::pair<std::size_t, std::size_t> field_size_for(std::size_t side, std::size_t depth);

/// Checks that the blocks reachable from (1, 1) within `rows` block columns
/// map onto {a + b < rows} in N^2 under (i, j) -> (2i - j - 1, j - i), with
/// the two step types landing on the east and north neighbours.
bool block_graph_matches_quadrant(std::size_t rows);

// ---------------------------------------------------------------------------
// Two-dimensional embedding

struct Embedding2DWitness {
  std::vector<Cell> cells;  // (m_k, n_k)
  std::size_t gap_bound = 0;
};

/// Letters match, both coordinates strictly increase from (0, 0), and each
/// L1 step lies in [1, gap_bound].
bool validate_embedding_2d(const Word& w, const Field2D& field, const Embedding2DWitness& witness);

/// Places letter k in block k of the path, at the smallest (i, j) in
/// lexicographic order carrying it. Bound is 5R. Throws std::invalid_argument
/// if the path is shorter than the word, and PropertyViolation if a block
/// lacks the letter or the witness fails validation.
Embedding2DWitness embed_word_2d(const Word& w, const Field2D& field, std::size_t side, const BlockPath& path);

struct AdjacentGapReport {
  std::size_t max_l1_diagonal = 0;  // (i+1, j+1)
  std::size_t max_l1_skip = 0;      // (i+1, j+2)
  std::size_t min_l1 = 0;
  std::size_t min_coordinate_step = 0;
};

/// Exhaustive over all cell pairs in two adjacent blocks, both step types.
AdjacentGapReport adjacent_block_gaps(std::size_t side);

struct ConstructionTrial {
  bool path_found = false;
  std::optional<Embedding2DWitness> witness;
  bool valid = false;
};

/// Samples a field at density p sized for `depth` blocks, searches a block
/// path, and embeds a Bernoulli(1/2) word of length `depth` along it.
ConstructionTrial construction_trial(double p, std::size_t side, std::size_t depth, Stream& stream);

// ---------------------------------------------------------------------------
// Visible words

enum class LatticeKind { Square, Triangular, ClosePacked };

LatticeKind parse_lattice(const std::string& name);
std::string lattice_name(LatticeKind kind);
/// Neighbour offsets: square has the four axis steps, triangular adds
/// (+1, +1) and (-1, -1), close-packed adds all four diagonals.
const std::vector<std::pair<int, int>>& neighbour_offsets(LatticeKind kind);

enum class Visibility { Visible, NotVisible, BudgetExhausted };

struct VisibilityResult {
  Visibility outcome = Visibility::NotVisible;
  std::size_t expansions = 0;
  std::vector<Cell> path;  // v_1 .. v_|w| when visible
};

inline constexpr std::size_t kUnlimited = static_cast<std::size_t>(-1);

/// Self-avoiding walk v_0 = origin, v_1, ..., v_|w| inside the field with
/// Y(v_k) = w_k for k >= 1. Exact depth-first search; stops after `budget`
/// node expansions and then says so. A walk-reachability pass (walks may
/// revisit) gives exact early negatives.
VisibilityResult visible_word(const Field2D& field, LatticeKind kind, Cell origin, const Word& w,
                              std::size_t budget = kUnlimited);

/// Tries every possible first step v_1 in the field, each with its own
/// budget; v_0 is any neighbour of v_1 off the walk. BudgetExhausted only if
/// nothing succeeds and some start ran out.
VisibilityResult visible_from_somewhere(const Field2D& field, LatticeKind kind, const Word& w,
                                        std::size_t budget_per_origin = kUnlimited);

struct VisibilityFrequency {
  Estimate visible;            // exhausted searches count as not visible
  std::size_t exhausted = 0;
};

/// Square box of side `box` at density p, origin at the centre cell
/// (box/2 + 1, box/2 + 1); the fraction of replicas where w is visible.
VisibilityFrequency visibility_mc(LatticeKind kind, double p, std::size_t box, const Word& w, const McConfig& cfg,
                                  std::size_t budget = 10'000'000);

struct AbScan {
  VisibilityFrequency alternating;  // 0101... of length box/2
  VisibilityFrequency constant;     // 11...1 of length box/2
};

/// Both words on the same triangular-lattice configurations.
AbScan ab_scan(double p, std::size_t box, const McConfig& cfg, std::size_t budget = 10'000'000);

}  // namespace demon::lattice2d
