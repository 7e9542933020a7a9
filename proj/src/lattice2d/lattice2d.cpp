#include "demon/lattice2d.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <stdexcept>

#include "demon/core/errors.hpp"

namespace demon::lattice2d {

Field2D Field2D::sample(double p, std::size_t width, std::size_t height, Stream& stream) {
  Field2D f(width, height);
  for (auto& b : f.bits_) b = stream.uniform() < p ? 1 : 0;
  return f;
}

Field2D Field2D::parse(std::istream& in) {
  std::vector<std::string> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.find_first_not_of("01") != std::string::npos)
      throw std::invalid_argument("Field2D::parse: only 0/1 characters allowed");
    if (!rows.empty() && line.size() != rows.front().size())
      throw std::invalid_argument("Field2D::parse: ragged rows");
    rows.push_back(line);
  }
  if (rows.empty()) throw std::invalid_argument("Field2D::parse: empty field");
  Field2D f(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) f.set(i + 1, j + 1, rows[i][j] - '0');
  return f;
}

std::string Field2D::to_text() const {
  std::string out;
  for (std::size_t i = 1; i <= width_; ++i) {
    for (std::size_t j = 1; j <= height_; ++j) out.push_back(at(i, j) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

// ---------------------------------------------------------------------------

BlockGrid::BlockGrid(const Field2D& field, std::size_t side)
    : side_(side), width_(side ? field.width() / side : 0), height_(side ? field.height() / side : 0) {
  if (side == 0) throw std::invalid_argument("BlockGrid: side must be positive");
  good_.assign(width_ * height_, 0);
  for (std::size_t bi = 1; bi <= width_; ++bi)
    for (std::size_t bj = 1; bj <= height_; ++bj) {
      bool zero = false, one = false;
      for (std::size_t i = (bi - 1) * side + 1; i <= bi * side; ++i)
        for (std::size_t j = (bj - 1) * side + 1; j <= bj * side; ++j) (field.at(i, j) ? one : zero) = true;
      good_[(bi - 1) * height_ + (bj - 1)] = zero && one;
    }
}

double block_good_prob(double p, std::size_t side) {
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("block_good_prob: p outside [0,1]");
  const double cells = static_cast<double>(side * side);
  return 1.0 - std::pow(p, cells) - std::pow(1.0 - p, cells);
}

Rational block_good_prob_exact(const Rational& p, std::size_t side) {
  if (p < 0 || p > 1) throw std::invalid_argument("block_good_prob_exact: p outside [0,1]");
  auto power = [](const Rational& base, unsigned long e) {
    BigInt num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
    Rational r(num, den);
    r.canonicalize();
    return r;
  };
  const unsigned long cells = side * side;
  Rational q = 1 - p;
  Rational out = 1 - power(p, cells) - power(q, cells);
  out.canonicalize();
  return out;
}

Estimate block_good_frequency(double p, std::size_t side, const McConfig& cfg) {
  return estimate_replicas(cfg, [&](Stream& s) {
    bool zero = false, one = false;
    for (std::size_t c = 0; c < side * side; ++c) (s.uniform() < p ? one : zero) = true;
    return zero && one ? 1.0 : 0.0;
  });
}

std::pair<std::size_t, std::size_t> field_size_for(std::size_t side, std::size_t depth) {
  return {depth * side, depth == 0 ? 0 : (2 * depth - 1) * side};
}

std::optional<BlockPath> block_percolation(const Field2D& field, std::size_t side, std::size_t depth) {
  if (depth == 0) return BlockPath{};
  const auto [need_w, need_h] = field_size_for(side, depth);
  if (field.width() < need_w || field.height() < need_h)
    throw std::invalid_argument("block_percolation: field too small for depth " + std::to_string(depth));
  const BlockGrid blocks(field, side);
  const std::size_t rows = 2 * depth - 1;

  // reach[i - 1][j - 1]: a good path from (1, 1) ends at block (i, j).
  std::vector<std::vector<char>> reach(depth, std::vector<char>(rows + 1, 0));
  reach[0][0] = blocks.good(1, 1);
  for (std::size_t i = 2; i <= depth; ++i)
    for (std::size_t j = 2; j <= std::min(rows, 2 * i - 1); ++j) {
      const bool from = reach[i - 2][j - 2] || (j >= 3 && reach[i - 2][j - 3]);
      reach[i - 1][j - 1] = from && blocks.good(i, j);
    }

  std::size_t j = 0;
  for (std::size_t t = 1; t <= rows && !j; ++t)
    if (reach[depth - 1][t - 1]) j = t;
  if (!j) return std::nullopt;
  BlockPath path{{depth, j}};
  for (std::size_t i = depth; i > 1; --i) {
    j = reach[i - 2][j - 2] ? j - 1 : j - 2;
    path.push_back({i - 1, j});
  }
  std::reverse(path.begin(), path.end());
  return path;
}

bool block_graph_matches_quadrant(std::size_t rows) {
  // Blocks reachable from (1, 1) with i <= rows, by forward search.
  std::vector<Cell> seen{{1, 1}};
  for (std::size_t k = 0; k < seen.size(); ++k) {
    const Cell c = seen[k];
    if (c.i == rows) continue;
    for (Cell next : {Cell{c.i + 1, c.j + 1}, Cell{c.i + 1, c.j + 2}})
      if (std::find(seen.begin(), seen.end(), next) == seen.end()) seen.push_back(next);
  }
  auto image = [](Cell c) {
    const long a = 2 * static_cast<long>(c.i) - static_cast<long>(c.j) - 1;
    const long b = static_cast<long>(c.j) - static_cast<long>(c.i);
    return std::pair<long, long>{a, b};
  };
  std::vector<std::pair<long, long>> points;
  for (const Cell c : seen) {
    const auto [a, b] = image(c);
    if (a < 0 || b < 0 || a + b >= static_cast<long>(rows)) return false;
    if (image({c.i + 1, c.j + 1}) != std::pair<long, long>{a + 1, b}) return false;
    if (image({c.i + 1, c.j + 2}) != std::pair<long, long>{a, b + 1}) return false;
    points.emplace_back(a, b);
  }
  std::sort(points.begin(), points.end());
  if (std::adjacent_find(points.begin(), points.end()) != points.end()) return false;
  return points.size() == rows * (rows + 1) / 2;
}

// ---------------------------------------------------------------------------

bool validate_embedding_2d(const Word& w, const Field2D& field, const Embedding2DWitness& witness) {
  if (witness.cells.size() != w.size()) return false;
  std::size_t m = 0, n = 0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const Cell c = witness.cells[k];
    if (!field.contains(c) || field.at(c) != w[k]) return false;
    if (c.i <= m || c.j <= n) return false;
    const std::size_t step = (c.i - m) + (c.j - n);
    if (step < 1 || step > witness.gap_bound) return false;
    m = c.i;
    n = c.j;
  }
  return true;
}

Embedding2DWitness embed_word_2d(const Word& w, const Field2D& field, std::size_t side, const BlockPath& path) {
  if (path.size() < w.size()) throw std::invalid_argument("embed_word_2d: block path shorter than word");
  Embedding2DWitness out{{}, 5 * side};
  for (std::size_t k = 0; k < w.size(); ++k) {
    const Cell b = path[k];
    std::optional<Cell> pick;
    for (std::size_t i = (b.i - 1) * side + 1; i <= b.i * side && !pick; ++i)
      for (std::size_t j = (b.j - 1) * side + 1; j <= b.j * side && !pick; ++j)
        if (field.contains({i, j}) && field.at(i, j) == w[k]) pick = Cell{i, j};
    if (!pick)
      throw PropertyViolation("embed_word_2d: block (" + std::to_string(b.i) + "," + std::to_string(b.j) +
                              ") lacks letter " + std::to_string(w[k]) + "; path is not all good");
    out.cells.push_back(*pick);
  }
  if (!validate_embedding_2d(w, field, out))
    throw PropertyViolation("embed_word_2d: witness failed validation");
  return out;
}

AdjacentGapReport adjacent_block_gaps(std::size_t side) {
  AdjacentGapReport r;
  r.min_l1 = static_cast<std::size_t>(-1);
  r.min_coordinate_step = static_cast<std::size_t>(-1);
  auto cells_of = [side](std::size_t bi, std::size_t bj) {
    std::vector<Cell> out;
    for (std::size_t i = (bi - 1) * side + 1; i <= bi * side; ++i)
      for (std::size_t j = (bj - 1) * side + 1; j <= bj * side; ++j) out.push_back({i, j});
    return out;
  };
  const auto from = cells_of(1, 1);
  for (int skip = 0; skip <= 1; ++skip) {
    const auto to = cells_of(2, 2 + skip);
    for (const Cell a : from)
      for (const Cell b : to) {
        const std::size_t di = b.i - a.i, dj = b.j - a.j;  // both positive
        (skip ? r.max_l1_skip : r.max_l1_diagonal) =
            std::max(skip ? r.max_l1_skip : r.max_l1_diagonal, di + dj);
        r.min_l1 = std::min(r.min_l1, di + dj);
        r.min_coordinate_step = std::min({r.min_coordinate_step, di, dj});
      }
  }
  return r;
}

ConstructionTrial construction_trial(double p, std::size_t side, std::size_t depth, Stream& stream) {
  const auto [w, h] = field_size_for(side, depth);
  const auto field = Field2D::sample(p, w, h, stream);
  const auto word = bernoulli_word(stream, 0.5, depth);
  ConstructionTrial t;
  const auto path = block_percolation(field, side, depth);
  t.path_found = path.has_value();
  if (!path) return t;
  t.witness = embed_word_2d(word, field, side, *path);
  t.valid = validate_embedding_2d(word, field, *t.witness);
  return t;
}

// ---------------------------------------------------------------------------

LatticeKind parse_lattice(const std::string& name) {
  if (name == "square") return LatticeKind::Square;
  if (name == "triangular") return LatticeKind::Triangular;
  if (name == "cp" || name == "close-packed") return LatticeKind::ClosePacked;
  throw std::invalid_argument("unknown lattice '" + name + "' (square, triangular, cp)");
}

std::string lattice_name(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::Square:
      return "square";
    case LatticeKind::Triangular:
      return "triangular";
    case LatticeKind::ClosePacked:
      return "cp";
  }
  return "?";
}

const std::vector<std::pair<int, int>>& neighbour_offsets(LatticeKind kind) {
  static const std::vector<std::pair<int, int>> square{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  static const std::vector<std::pair<int, int>> triangular{{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}, {-1, -1}};
  static const std::vector<std::pair<int, int>> close_packed{{1, 0},  {0, 1}, {-1, 0}, {0, -1},
                                                             {1, 1}, {-1, -1}, {1, -1}, {-1, 1}};
  switch (kind) {
    case LatticeKind::Square:
      return square;
    case LatticeKind::Triangular:
      return triangular;
    case LatticeKind::ClosePacked:
      return close_packed;
  }
  throw std::logic_error("neighbour_offsets: bad lattice");
}

namespace {

// Flat-index adjacency of the field under a lattice.
class Adjacency {
 public:
  Adjacency(const Field2D& f, LatticeKind kind) : w_(f.width()), h_(f.height()), offsets_(neighbour_offsets(kind)) {}

  std::size_t cells() const { return w_ * h_; }
  std::size_t index(Cell c) const { return (c.i - 1) * h_ + (c.j - 1); }
  Cell cell(std::size_t idx) const { return {idx / h_ + 1, idx % h_ + 1}; }

  template <class Fn>
  void for_each(std::size_t idx, Fn&& fn) const {
    const long x = static_cast<long>(idx / h_), y = static_cast<long>(idx % h_);
    for (const auto& [dx, dy] : offsets_) {
      const long a = x + dx, b = y + dy;
      if (a < 0 || b < 0 || a >= static_cast<long>(w_) || b >= static_cast<long>(h_)) continue;
      fn(static_cast<std::size_t>(a) * h_ + static_cast<std::size_t>(b));
    }
  }

 private:
  std::size_t w_, h_;
  const std::vector<std::pair<int, int>>& offsets_;
};

// layers[k][u]: u can serve as v_k on some walk (revisits allowed) that
// matches all of w. Starts from `first`, the candidates for v_1.
std::vector<std::vector<char>> walk_layers(const Field2D& f, const Adjacency& adj, const Word& w,
                                           std::vector<char> first) {
  const std::size_t n = w.size(), cells = adj.cells();
  std::vector<std::vector<char>> layer(n + 1, std::vector<char>(cells, 0));
  for (std::size_t u = 0; u < cells; ++u) layer[1][u] = first[u] && f.at(adj.cell(u)) == w[0];
  for (std::size_t k = 2; k <= n; ++k)
    for (std::size_t u = 0; u < cells; ++u) {
      if (!layer[k - 1][u]) continue;
      adj.for_each(u, [&](std::size_t v) {
        if (f.at(adj.cell(v)) == w[k - 1]) layer[k][v] = 1;
      });
    }
  // Backward pass: keep only vertices that can still finish.
  for (std::size_t k = n; k-- > 1;)
    for (std::size_t u = 0; u < cells; ++u) {
      if (!layer[k][u]) continue;
      bool onward = false;
      adj.for_each(u, [&](std::size_t v) { onward = onward || layer[k + 1][v]; });
      layer[k][u] = onward;
    }
  return layer;
}

// Depth-first search over self-avoiding continuations. `accept` is called on
// a complete v_1..v_n and may reject it.
template <class Accept>
Visibility dfs(const Adjacency& adj, const std::vector<std::vector<char>>& layer, std::vector<char>& used,
               std::size_t start, std::size_t n, std::size_t budget, std::size_t& expansions,
               std::vector<std::size_t>& path, Accept&& accept) {
  struct Frame {
    std::size_t vertex;
    std::vector<std::size_t> next;
    std::size_t cursor = 0;
  };
  auto children = [&](std::size_t u, std::size_t k) {
    std::vector<std::size_t> out;
    if (k < n)
      adj.for_each(u, [&](std::size_t v) {
        if (layer[k + 1][v] && !used[v]) out.push_back(v);
      });
    return out;
  };
  std::vector<Frame> stack;
  auto enter = [&](std::size_t u) {
    ++expansions;
    used[u] = 1;
    path.push_back(u);
    stack.push_back({u, children(u, path.size()), 0});
  };
  auto leave = [&]() {
    used[stack.back().vertex] = 0;
    path.pop_back();
    stack.pop_back();
  };
  enter(start);
  while (!stack.empty()) {
    if (path.size() == n && accept(path)) return Visibility::Visible;
    if (expansions >= budget) {
      while (!stack.empty()) leave();
      return Visibility::BudgetExhausted;
    }
    Frame& top = stack.back();
    if (top.cursor < top.next.size()) {
      const std::size_t v = top.next[top.cursor++];
      if (!used[v]) enter(v);
    } else {
      leave();
    }
  }
  return Visibility::NotVisible;
}

VisibilityResult search(const Field2D& field, const Adjacency& adj, const Word& w,
                        const std::vector<char>& first, std::optional<std::size_t> origin, std::size_t budget,
                        bool budget_per_start) {
  VisibilityResult r;
  const std::size_t n = w.size();
  if (n == 0) {
    r.outcome = Visibility::Visible;
    return r;
  }
  const auto layer = walk_layers(field, adj, w, first);
  // Exact negatives: some layer empty, or too few distinct vertices overall.
  std::vector<char> any(adj.cells(), 0);
  std::size_t distinct = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    bool nonempty = false;
    for (std::size_t u = 0; u < adj.cells(); ++u)
      if (layer[k][u] && (!origin || u != *origin)) {
        nonempty = true;
        if (!any[u]) ++distinct, any[u] = 1;
      }
    if (!nonempty) return r;
  }
  if (distinct < n) return r;

  std::vector<char> used(adj.cells(), 0);
  if (origin) used[*origin] = 1;
  std::vector<std::size_t> path;
  bool exhausted = false;
  for (std::size_t u = 0; u < adj.cells(); ++u) {
    if (!layer[1][u] || used[u]) continue;
    auto accept = [&](const std::vector<std::size_t>& p) {
      if (origin) return true;
      // Some neighbour of v_1 off the path can serve as v_0.
      bool free = false;
      adj.for_each(p.front(), [&](std::size_t v) { free = free || !used[v]; });
      return free;
    };
    std::size_t spent = budget_per_start ? 0 : r.expansions;
    const auto outcome = dfs(adj, layer, used, u, n, budget, spent, path, accept);
    r.expansions = budget_per_start ? r.expansions + spent : spent;
    if (outcome == Visibility::Visible) {
      r.outcome = Visibility::Visible;
      for (auto idx : path) r.path.push_back(adj.cell(idx));
      return r;
    }
    if (outcome == Visibility::BudgetExhausted) {
      exhausted = true;
      if (!budget_per_start) break;
    }
  }
  r.outcome = exhausted ? Visibility::BudgetExhausted : Visibility::NotVisible;
  return r;
}

}  // namespace

VisibilityResult visible_word(const Field2D& field, LatticeKind kind, Cell origin, const Word& w, std::size_t budget) {
  if (!field.contains(origin)) throw std::invalid_argument("visible_word: origin outside the field");
  const Adjacency adj(field, kind);
  const std::size_t o = adj.index(origin);
  std::vector<char> first(adj.cells(), 0);
  adj.for_each(o, [&](std::size_t v) { first[v] = 1; });
  return search(field, adj, w, first, o, budget, false);
}

VisibilityResult visible_from_somewhere(const Field2D& field, LatticeKind kind, const Word& w,
                                        std::size_t budget) {
  const Adjacency adj(field, kind);
  return search(field, adj, w, std::vector<char>(adj.cells(), 1), std::nullopt, budget, true);
}

namespace {

Cell centre(std::size_t box) { return {box / 2 + 1, box / 2 + 1}; }

VisibilityFrequency summarize(const std::vector<Visibility>& outcomes, const McConfig& cfg) {
  VisibilityFrequency f;
  std::vector<double> hits(outcomes.size());
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    hits[k] = outcomes[k] == Visibility::Visible ? 1.0 : 0.0;
    f.exhausted += outcomes[k] == Visibility::BudgetExhausted;
  }
  f.visible = Estimate::from_samples(hits, RngSpec{cfg.master_seed, 0});
  return f;
}

}  // namespace

VisibilityFrequency visibility_mc(LatticeKind kind, double p, std::size_t box, const Word& w, const McConfig& cfg,
                                  std::size_t budget) {
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("visibility_mc: p outside [0,1]");
  if (box == 0) throw std::invalid_argument("visibility_mc: empty box");
  const auto outcomes = parallel_map(cfg.replicas, cfg.workers, [&](std::size_t k) {
    Stream s(RngSpec{cfg.master_seed, k});
    const auto field = Field2D::sample(p, box, box, s);
    return visible_word(field, kind, centre(box), w, budget).outcome;
  });
  return summarize(outcomes, cfg);
}

AbScan ab_scan(double p, std::size_t box, const McConfig& cfg, std::size_t budget) {
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("ab_scan: p outside [0,1]");
  if (box == 0) throw std::invalid_argument("ab_scan: empty box");
  const Word alternating = alternating_word(box / 2), constant = constant_word(1, box / 2);
  const auto outcomes = parallel_map(cfg.replicas, cfg.workers, [&](std::size_t k) {
    Stream s(RngSpec{cfg.master_seed, k});
    const auto field = Field2D::sample(p, box, box, s);
    return std::pair{visible_word(field, LatticeKind::Triangular, centre(box), alternating, budget).outcome,
                     visible_word(field, LatticeKind::Triangular, centre(box), constant, budget).outcome};
  });
  std::vector<Visibility> a, c;
  for (const auto& [x, y] : outcomes) {
    a.push_back(x);
    c.push_back(y);
  }
  return {summarize(a, cfg), summarize(c, cfg)};
}

}  // namespace demon::lattice2d
