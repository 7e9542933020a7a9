#include "demon/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "demon/compat.hpp"
#include "demon/core/errors.hpp"
#include "demon/core/rational.hpp"
#include "demon/embed1d.hpp"
#include "demon/envmodels.hpp"
#include "demon/lattice2d.hpp"
#include "demon/schedule.hpp"

#ifndef DEMON_VERSION
#define DEMON_VERSION "dev"
#endif

namespace demon::cli {

using ordered_json = nlohmann::ordered_json;

void Table::add(std::vector<Value> row) {
  if (row.size() != columns.size()) throw std::logic_error("Table::add: row width mismatch");
  rows.push_back(std::move(row));
}

std::string format_float(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  return buf;
}

namespace {

std::string csv_cell(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, double>) {
          return format_float(x);
        } else if constexpr (std::is_same_v<T, std::string>) {
          if (x.find_first_of(",\"\n") == std::string::npos) return x;
          std::string q = "\"";
          for (char c : x) {
            if (c == '"') q.push_back('"');
            q.push_back(c);
          }
          return q + "\"";
        } else {
          return std::to_string(x);
        }
      },
      v);
}

ordered_json json_cell(const Value& v) {
  return std::visit(
      [](const auto& x) -> ordered_json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(x)) return format_float(x);
          return std::stod(format_float(x));
        } else {
          return x;
        }
      },
      v);
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
  for (const auto& line : table.preamble) out << "# " << line << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_cell(row[c]);
    out << '\n';
  }
}

void write_json_lines(const Table& table, std::ostream& out) {
  for (const auto& row : table.rows) {
    ordered_json obj = ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = json_cell(row[c]);
    out << obj.dump() << '\n';
  }
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string version() { return DEMON_VERSION; }

namespace {

struct Params {
  // global
  std::uint64_t seed = 0;
  std::size_t replicas = 1000;
  unsigned workers = 1;
  std::string out;
  std::string format = "csv";
  // shared by subcommands
  unsigned M = 2;
  std::vector<unsigned> Ms;
  std::size_t n = 10;
  std::vector<std::size_t> ns;
  std::string v, x, y, word;
  double p = 0.5, px = 0.5, py = 0.5;
  std::vector<double> ps;
  std::size_t R = 3, depth = 0, box = 60, k = 3;
  unsigned factor = 2;
  unsigned exact_budget = embed1d::kDefaultExactBudget;
  std::size_t search_budget = 10'000'000;
  std::string lattice = "triangular", field, origin, mu, vertices, pmf;
  bool all = false, iid = false, somewhere = false;
};

struct Result {
  Table table;
  std::string violation;  // non-empty: a checked property failed
};

Result with_columns(std::vector<std::string> columns) {
  Result r;
  r.table.columns = std::move(columns);
  return r;
}

McConfig mc(const Params& P) { return McConfig{P.replicas, P.seed, P.workers}; }

std::string index_list(const std::vector<std::size_t>& xs) {
  std::string out;
  for (std::size_t t = 0; t < xs.size(); ++t) out += (t ? " " : "") + std::to_string(xs[t]);
  return out;
}

template <class Cells>
std::string pair_array(const Cells& cells) {
  auto arr = ordered_json::array();
  for (const auto& c : cells) arr.push_back({c.i, c.j});
  return arr.dump();
}

std::string frac(const Rational& q) { return to_fraction_string(q); }

std::vector<Value> estimate_cells(const Estimate& e) {
  return {e.mean, e.std_error, static_cast<std::uint64_t>(e.replicas)};
}

lattice2d::Field2D load_field(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open field file '" + path + "'");
  return lattice2d::Field2D::parse(in);
}

std::pair<std::size_t, std::size_t> parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("expected 'i,j', got '" + text + "'");
  return {std::stoul(text.substr(0, comma)), std::stoul(text.substr(comma + 1))};
}

std::vector<schedule::Vertex> parse_vertices(const std::string& text) {
  std::vector<schedule::Vertex> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ';');) {
    const auto [i, j] = parse_pair(item);
    out.push_back({i, j});
  }
  if (out.empty()) throw std::invalid_argument("no vertices given");
  return out;
}

// ---------------------------------------------------------------------------
// embed

Result embed_decide_cmd(const Params& P) {
  const auto v = Word::parse(P.v), y = Word::parse(P.y);
  Result r = with_columns({"v", "y", "M", "embeds", "positions"});
  const auto w = embed1d::embed_decide(v, y, P.M);
  if (w && !embed1d::validate_witness(v, y, *w)) r.violation = "embedding witness failed validation";
  r.table.add({P.v, P.y, std::uint64_t{P.M}, w.has_value(), w ? index_list(w->positions) : std::string()});
  return r;
}

Result embed_count_cmd(const Params& P) {
  Result r = with_columns({"v", "y", "M", "count"});
  r.table.add({P.v, P.y, std::uint64_t{P.M}, embed1d::embed_count(Word::parse(P.v), Word::parse(P.y), P.M).get_str()});
  return r;
}

Result embed_exact_cmd(const Params& P) {
  Result r = with_columns({"v", "M", "probability", "probability_float"});
  const auto q = embed1d::embed_prob_exact(Word::parse(P.v), P.M, P.exact_budget);
  r.table.add({P.v, std::uint64_t{P.M}, frac(q), q.get_d()});
  return r;
}

Result embed_recursion_cmd(const Params& P) {
  Result r = with_columns({"n", "M", "value", "value_float"});
  const auto vals = embed1d::vn_recursion(P.M, P.n);
  for (std::size_t t = 0; t < vals.size(); ++t)
    r.table.add({static_cast<std::uint64_t>(t), std::uint64_t{P.M}, frac(vals[t]), vals[t].get_d()});
  return r;
}

Result embed_roots_cmd(const Params& P) {
  Result r = with_columns({"M", "alpha", "beta", "r_small", "r_large", "small_bound", "scaled_gap"});
  std::vector<unsigned> Ms = P.Ms;
  if (Ms.empty())
    for (unsigned m = 2; m <= 12; ++m) Ms.push_back(m);
  for (unsigned m : Ms) {
    const auto params = embed1d::RecursionParams::for_gap(m);
    const auto roots = embed1d::char_roots(m);
    const long double beta = params.beta.get_d();
    const long double scaled = std::ldexp(1.0L - roots.large, static_cast<int>(2 * m - 1));
    r.table.add({std::uint64_t{m}, frac(params.alpha), frac(params.beta), static_cast<double>(roots.small),
                 static_cast<double>(roots.large), static_cast<double>(m * beta), static_cast<double>(scaled)});
  }
  return r;
}

Result embed_scan_cmd(const Params& P) {
  Result r = with_columns({"w", "probability_num", "probability_den"});
  const auto report = embed1d::extremal_scan(P.n, P.M, P.workers);
  for (std::uint64_t b = 0; b < report.table.size(); ++b) {
    const auto& q = report.table[b];
    r.table.add({Word::from_bits(b, P.n).str(), q.get_num().get_str(), q.get_den().get_str()});
  }
  return r;
}

Result embed_moments_cmd(const Params& P) {
  Result r = with_columns({"n", "M", "mean", "second_moment_ratio", "growth_estimate"});
  for (const auto& m : embed1d::moment_reports(P.n, P.M))
    r.table.add({static_cast<std::uint64_t>(m.n), std::uint64_t{P.M}, frac(m.mean), frac(m.second_moment_ratio),
                 m.growth_estimate});
  return r;
}

Result embed_mc_cmd(const Params& P) {
  Result r = with_columns({"word", "M", "n", "p_x", "p_y", "estimate", "std_error", "replicas"});
  std::vector<Value> row;
  if (!P.v.empty()) {
    const auto w = Word::parse(P.v);
    row = {P.v, std::uint64_t{P.M}, static_cast<std::uint64_t>(w.size()), std::string(), P.py};
    for (auto&& c : estimate_cells(embed1d::word_survival_mc(w, P.M, P.py, mc(P)))) row.push_back(c);
  } else {
    row = {std::string("random"), std::uint64_t{P.M}, static_cast<std::uint64_t>(P.n), P.px, P.py};
    for (auto&& c : estimate_cells(embed1d::embed_survival_mc(P.M, P.n, P.px, P.py, mc(P)))) row.push_back(c);
  }
  r.table.add(std::move(row));
  return r;
}

// ---------------------------------------------------------------------------
// schedule

Result schedule_survive_cmd(const Params& P) {
  Stream s(RngSpec{P.seed, 0});
  const auto grid = (!P.x.empty() || !P.y.empty())
                        ? schedule::ScheduleGrid(IntSequence::parse(P.x, P.M), IntSequence::parse(P.y, P.M))
                        : schedule::sample_grid(P.M, P.n, s);
  const std::size_t depth = P.depth ? P.depth : std::min(grid.max_i(), grid.max_j());
  Result r = with_columns({"M", "depth", "survives", "survival_depth", "path"});
  const auto path = schedule::directed_survival(grid, depth);
  if (path && !schedule::validate_path(grid, *path)) r.violation = "schedule path failed validation";
  r.table.add({std::uint64_t{P.M}, static_cast<std::uint64_t>(depth), path.has_value(),
               static_cast<std::uint64_t>(schedule::survival_depth(grid, depth)),
               path ? pair_array(path->vertices) : std::string()});
  return r;
}

Result schedule_curve_cmd(const Params& P) {
  std::vector<std::size_t> depths = P.ns;
  if (depths.empty()) depths = {0, 10, 20, 50, 100};
  Result r = with_columns({"M", "depth", "estimate", "std_error", "replicas"});
  const auto curve = schedule::survival_curve_mc(P.M, depths, mc(P));
  for (std::size_t t = 0; t < depths.size(); ++t) {
    std::vector<Value> row{std::uint64_t{P.M}, static_cast<std::uint64_t>(depths[t])};
    for (auto&& c : estimate_cells(curve[t])) row.push_back(c);
    r.table.add(std::move(row));
  }
  return r;
}

Result schedule_coupling_cmd(const Params& P) {
  const std::size_t depth = P.depth ? P.depth : 50;
  const auto samples = schedule::coupling_check(P.M, P.factor, depth, mc(P));
  std::uint64_t superset_bad = 0, ordering_bad = 0, fine = 0, reduced = 0;
  for (const auto& c : samples) {
    superset_bad += !c.open_superset;
    ordering_bad += !c.ordering_holds();
    fine += c.fine_survives;
    reduced += c.reduced_survives;
  }
  Result r = with_columns({"M", "k", "depth", "samples", "superset_violations", "ordering_violations", "fine_survivals",
             "reduced_survivals"});
  r.table.add({std::uint64_t{P.M}, std::uint64_t{P.factor}, static_cast<std::uint64_t>(depth),
               static_cast<std::uint64_t>(samples.size()), superset_bad, ordering_bad, fine, reduced});
  if (superset_bad || ordering_bad) r.violation = "coupling property violated";
  return r;
}

Result schedule_undirected_cmd(const Params& P) {
  Result r = with_columns({"M", "n", "estimate", "std_error", "replicas"});
  std::vector<Value> row{std::uint64_t{P.M}, static_cast<std::uint64_t>(P.n)};
  for (auto&& c : estimate_cells(schedule::undirected_escape_mc(P.M, P.n, mc(P)))) row.push_back(c);
  r.table.add(std::move(row));
  return r;
}

Result schedule_kwise_cmd(const Params& P) {
  const auto vertices = parse_vertices(P.vertices);
  const auto pmf = schedule::kwise_joint(vertices, P.M);
  Result r = with_columns({"outcome", "numerator", "denominator"});
  std::string labels = "labels:";
  for (const auto& l : pmf.labels()) labels += " " + l;
  r.table.preamble.push_back(labels);
  for (std::uint64_t b = 0; b < pmf.probs().size(); ++b) {
    std::string bits;
    for (std::size_t t = 0; t < pmf.arity(); ++t) bits.push_back((b >> t) & 1 ? '1' : '0');
    r.table.add({bits, pmf[b].get_num().get_str(), pmf[b].get_den().get_str()});
  }
  return r;
}

// ---------------------------------------------------------------------------
// compat

Result compat_decide_cmd(const Params& P) {
  const auto x = Word::parse(P.x), y = Word::parse(P.y);
  Result r = with_columns({"x", "y", "compatible", "kept_x", "kept_y"});
  const auto w = compat::compatible_prefix(x, y);
  if (w && !compat::validate_deletion_witness(x, y, *w)) r.violation = "deletion witness failed validation";
  r.table.add({P.x, P.y, w.has_value(), w ? index_list(w->kept_x) : std::string(),
               w ? index_list(w->kept_y) : std::string()});
  return r;
}

Result compat_oracle_cmd(const Params& P) {
  Result r = with_columns({"x", "y", "compatible"});
  r.table.add({P.x, P.y, compat::compat_oracle(Word::parse(P.x), Word::parse(P.y))});
  return r;
}

Result compat_cert_cmd(const Params& P) {
  const auto x = Word::parse(P.x), y = Word::parse(P.y);
  Result r = with_columns({"x", "y", "certified", "N"});
  const auto c = compat::majority_certificate(x, y);
  if (c && compat::compatible_prefix(x.prefix(c->N), y.prefix(c->N)))
    r.violation = "majority certificate contradicted by the DP";
  r.table.add({P.x, P.y, c.has_value(), c ? std::to_string(c->N) : std::string()});
  return r;
}

Result compat_mc_cmd(const Params& P) {
  std::vector<double> ps = P.ps.empty() ? std::vector<double>{0.5} : P.ps;
  std::vector<std::size_t> ns = P.ns.empty() ? std::vector<std::size_t>{25, 50, 100, 200} : P.ns;
  Result r = with_columns({"p", "n", "estimate", "std_error", "replicas"});
  for (double p : ps) {
    const auto curve = compat::psi_curve_horizons(p, ns, mc(P));
    for (std::size_t t = 0; t < ns.size(); ++t) {
      std::vector<Value> row{p, static_cast<std::uint64_t>(ns[t])};
      for (auto&& c : estimate_cells(curve[t])) row.push_back(c);
      r.table.add(std::move(row));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// lattice

Result lattice_blocks_cmd(const Params& P) {
  const std::size_t depth = P.depth ? P.depth : 100;
  lattice2d::Field2D field;
  if (!P.field.empty()) {
    field = load_field(P.field);
  } else {
    Stream s(RngSpec{P.seed, 0});
    const auto [w, h] = lattice2d::field_size_for(P.R, depth);
    field = lattice2d::Field2D::sample(P.p, w, h, s);
  }
  const auto path = lattice2d::block_percolation(field, P.R, depth);
  Result r = with_columns({"R", "depth", "found", "path"});
  r.table.add({static_cast<std::uint64_t>(P.R), static_cast<std::uint64_t>(depth), path.has_value(),
               path ? pair_array(*path) : std::string()});
  return r;
}

Result lattice_embed2d_cmd(const Params& P) {
  const std::size_t depth = P.depth ? P.depth : 100;
  const auto trials = parallel_map(P.replicas, P.workers, [&](std::size_t k) {
    Stream s(RngSpec{P.seed, k});
    return lattice2d::construction_trial(P.p, P.R, depth, s);
  });
  Result r = with_columns({"replica", "path_found", "valid", "gap_bound", "witness"});
  for (std::size_t k = 0; k < trials.size(); ++k) {
    const auto& t = trials[k];
    if (t.path_found && !t.valid) r.violation = "two-dimensional witness failed validation";
    r.table.add({static_cast<std::uint64_t>(k), t.path_found, t.valid,
                  static_cast<std::uint64_t>(t.witness ? t.witness->gap_bound : 5 * P.R),
                  t.witness ? pair_array(t.witness->cells) : std::string()});
  }
  return r;
}

std::string outcome_name(lattice2d::Visibility v) {
  switch (v) {
    case lattice2d::Visibility::Visible:
      return "visible";
    case lattice2d::Visibility::NotVisible:
      return "not_visible";
    case lattice2d::Visibility::BudgetExhausted:
      return "budget_exhausted";
  }
  return "?";
}

Result lattice_visible_cmd(const Params& P) {
  const auto kind = lattice2d::parse_lattice(P.lattice);
  const auto w = Word::parse(P.word);
  if (!P.field.empty()) {
    const auto field = load_field(P.field);
    lattice2d::VisibilityResult res;
    if (P.somewhere) {
      res = lattice2d::visible_from_somewhere(field, kind, w, P.search_budget);
    } else {
      const auto [i, j] = P.origin.empty() ? std::pair{field.width() / 2 + 1, field.height() / 2 + 1}
                                           : parse_pair(P.origin);
      res = lattice2d::visible_word(field, kind, {i, j}, w, P.search_budget);
    }
    Result r = with_columns({"lattice", "word", "outcome", "expansions", "path"});
    r.table.add({lattice2d::lattice_name(kind), P.word, outcome_name(res.outcome),
                 static_cast<std::uint64_t>(res.expansions), pair_array(res.path)});
    return r;
  }
  Result r = with_columns({"lattice", "p", "box", "word", "estimate", "std_error", "replicas", "exhausted"});
  const auto f = lattice2d::visibility_mc(kind, P.p, P.box, w, mc(P), P.search_budget);
  std::vector<Value> row{lattice2d::lattice_name(kind), P.p, static_cast<std::uint64_t>(P.box), P.word};
  for (auto&& c : estimate_cells(f.visible)) row.push_back(c);
  row.push_back(static_cast<std::uint64_t>(f.exhausted));
  r.table.add(std::move(row));
  return r;
}

Result lattice_abscan_cmd(const Params& P) {
  const auto scan = lattice2d::ab_scan(P.p, P.box, mc(P), P.search_budget);
  Result r = with_columns({"p", "box", "word", "estimate", "std_error", "replicas", "exhausted"});
  for (const auto& [name, f] : {std::pair{"alternating", scan.alternating}, std::pair{"constant", scan.constant}}) {
    std::vector<Value> row{P.p, static_cast<std::uint64_t>(P.box), std::string(name)};
    for (auto&& c : estimate_cells(f.visible)) row.push_back(c);
    row.push_back(static_cast<std::uint64_t>(f.exhausted));
    r.table.add(std::move(row));
  }
  return r;
}

// ---------------------------------------------------------------------------
// env

Result env_column_cmd(const Params& P) {
  const auto law = envmodels::Mu::parse(P.mu);
  Result r = with_columns({"model", "law", "n", "estimate", "std_error", "replicas"});
  std::vector<Value> row{std::string("column"), law.str(), static_cast<std::uint64_t>(P.n)};
  for (auto&& c : estimate_cells(envmodels::column_percolation_mc(law, P.n, mc(P)))) row.push_back(c);
  r.table.add(std::move(row));
  if (P.iid) {
    if (law.support.size() != 1) throw std::invalid_argument("--iid needs a point-mass law");
    std::vector<Value> ref{std::string("iid"), law.str(), static_cast<std::uint64_t>(P.n)};
    for (auto&& c : estimate_cells(envmodels::iid_percolation_mc(law.support[0], P.n, mc(P)))) ref.push_back(c);
    r.table.add(std::move(ref));
  }
  return r;
}

Result env_kwise_cmd(const Params& P) {
  std::ifstream in(P.pmf);
  if (!in) throw std::invalid_argument("cannot open pmf file '" + P.pmf + "'");
  const auto pmf = envmodels::JointPmf::read_csv(in);
  const auto report = envmodels::kwise_test(pmf, P.k);
  auto subset_str = [&](const std::vector<std::size_t>& subset) {
    std::string s;
    for (std::size_t t = 0; t < subset.size(); ++t) s += (t ? " " : "") + pmf.labels()[subset[t]];
    return s;
  };
  auto values_str = [](const envmodels::KwiseViolation& v) {
    std::string s;
    for (std::size_t t = 0; t < v.subset.size(); ++t) s.push_back((v.values >> t) & 1 ? '1' : '0');
    return s;
  };
  Result r;
  if (P.all) {
    r.table.columns = {"subset", "values", "joint", "product", "deviation"};
    for (const auto& v : report.violations)
      r.table.add({subset_str(v.subset), values_str(v), frac(v.joint), frac(v.product), frac(v.deviation())});
    return r;
  }
  r.table.columns = {"k", "independent", "violations", "worst_subset", "worst_values", "worst_deviation"};
  const auto& w = report.worst;
  r.table.add({static_cast<std::uint64_t>(P.k), report.independent,
               static_cast<std::uint64_t>(report.violations.size()), w ? subset_str(w->subset) : std::string(),
               w ? values_str(*w) : std::string(), w ? frac(w->deviation()) : std::string()});
  return r;
}

// ---------------------------------------------------------------------------

std::string json_manifest(const std::vector<std::string>& args, const Params& P, double seconds,
                          const std::string& output_name, const std::string& bytes) {
  ordered_json m;
  m["tool"] = "demon";
  m["version"] = version();
  m["args"] = args;
  m["config"] = {{"seed", P.seed}, {"replicas", P.replicas}, {"workers", P.workers}, {"format", P.format},
                 {"out", P.out}};
  m["wall_seconds"] = seconds;
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(bytes);
  m["outputs"] = ordered_json::array({{{"path", output_name}, {"bytes", bytes.size()}, {"fnv1a64", hex.str()}}});
  return m.dump();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  Params P;
  std::function<Result()> action;

  CLI::App app{"Clairvoyant demon problems: exact oracles and seeded Monte Carlo", "demon"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", P.seed, "master seed");
  app.add_option("--replicas", P.replicas, "Monte Carlo replicas")->check(CLI::PositiveNumber);
  app.add_option("--workers", P.workers, "worker threads (0 = hardware)");
  app.add_option("--out", P.out, "write data here; manifest goes to <out>.manifest.json");
  app.add_option("--format", P.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, Result (*fn)(const Params&)) {
    auto* sub = parent->add_subcommand(name, help);
    sub->callback([&action, &P, fn] { action = [&P, fn] { return fn(P); }; });
    return sub;
  };
  auto group = [&](const std::string& name, const std::string& help) {
    auto* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    return g;
  };

  auto* embed = group("embed", "one-dimensional M-embedding");
  {
    auto* s = leaf(embed, "decide", "decide v ⊑_M y with a witness", embed_decide_cmd);
    s->add_option("--v", P.v)->required();
    s->add_option("--y", P.y)->required();
    s->add_option("--M", P.M);
    s = leaf(embed, "count", "number of gap sequences embedding v in y", embed_count_cmd);
    s->add_option("--v", P.v)->required();
    s->add_option("--y", P.y)->required();
    s->add_option("--M", P.M);
    s = leaf(embed, "exact", "exact P(v ⊑_M Y) by enumeration", embed_exact_cmd);
    s->add_option("--v", P.v)->required();
    s->add_option("--M", P.M);
    s->add_option("--budget", P.exact_budget, "refuse when |v| M exceeds this");
    s = leaf(embed, "recursion", "alternating-word probabilities v_0..v_n", embed_recursion_cmd);
    s->add_option("--M", P.M);
    s->add_option("--n", P.n);
    s = leaf(embed, "roots", "characteristic roots of the recursion", embed_roots_cmd);
    s->add_option("--M", P.Ms, "gap bounds (default 2..12)");
    s = leaf(embed, "scan", "exact probability of every word of length n", embed_scan_cmd);
    s->add_option("--n", P.n);
    s->add_option("--M", P.M);
    s = leaf(embed, "moments", "first and second moments of the embedding count", embed_moments_cmd);
    s->add_option("--n", P.n);
    s->add_option("--M", P.M);
    s = leaf(embed, "mc", "Monte Carlo embedding probability", embed_mc_cmd);
    s->add_option("--v", P.v, "fixed word (default: random Bernoulli(px) word of length n)");
    s->add_option("--M", P.M);
    s->add_option("--n", P.n);
    s->add_option("--px", P.px);
    s->add_option("--py", P.py);
  }

  auto* sched = group("schedule", "clairvoyant scheduling grid");
  {
    auto* s = leaf(sched, "survive", "directed survival on one grid", schedule_survive_cmd);
    s->add_option("--M", P.M);
    s->add_option("--n", P.n);
    s->add_option("--x", P.x, "comma-separated X_0..X_n (default: sampled)");
    s->add_option("--y", P.y, "comma-separated Y_0..Y_n");
    s->add_option("--depth", P.depth);
    s = leaf(sched, "curve", "survival probability against depth", schedule_curve_cmd);
    s->add_option("--M", P.M);
    s->add_option("--depths", P.ns);
    s = leaf(sched, "coupling", "coupling of kM onto M", schedule_coupling_cmd);
    s->add_option("--M", P.M);
    s->add_option("--k", P.factor);
    s->add_option("--depth", P.depth);
    s = leaf(sched, "undirected", "undirected escape probability", schedule_undirected_cmd);
    s->add_option("--M", P.M);
    s->add_option("--n", P.n);
    s = leaf(sched, "kwise", "exact joint law of open indicators", schedule_kwise_cmd);
    s->add_option("--M", P.M);
    s->add_option("--vertices", P.vertices, "e.g. '1,1;1,2;2,1;2,2'")->required();
  }

  auto* comp = group("compat", "clairvoyant compatibility");
  {
    auto* s = leaf(comp, "decide", "DP decision with a deletion witness", compat_decide_cmd);
    s->add_option("--x", P.x)->required();
    s->add_option("--y", P.y)->required();
    s = leaf(comp, "oracle", "exhaustive deletion-subset search", compat_oracle_cmd);
    s->add_option("--x", P.x)->required();
    s->add_option("--y", P.y)->required();
    s = leaf(comp, "cert", "majority incompatibility certificate", compat_cert_cmd);
    s->add_option("--x", P.x)->required();
    s->add_option("--y", P.y)->required();
    s = leaf(comp, "mc", "psi_n(p) estimates", compat_mc_cmd);
    s->add_option("--p", P.ps, "densities (default 0.5)");
    s->add_option("--n", P.ns, "horizons (default 25 50 100 200)");
  }

  auto* lat = group("lattice", "two-dimensional embedding and visible words");
  {
    auto* s = leaf(lat, "blocks", "directed path of good blocks", lattice_blocks_cmd);
    s->add_option("--p", P.p);
    s->add_option("--R", P.R);
    s->add_option("--depth", P.depth);
    s->add_option("--field", P.field, "0/1 text grid (default: sampled)");
    s = leaf(lat, "embed2d", "block construction of a 2D embedding, one trial per replica", lattice_embed2d_cmd);
    s->add_option("--p", P.p);
    s->add_option("--R", P.R);
    s->add_option("--depth", P.depth);
    s = leaf(lat, "visible", "is a word visible along a self-avoiding walk", lattice_visible_cmd);
    s->add_option("--lattice", P.lattice, "square, triangular or cp");
    s->add_option("--word", P.word)->required();
    s->add_option("--p", P.p);
    s->add_option("--box", P.box);
    s->add_option("--field", P.field, "0/1 text grid; decides once instead of sampling");
    s->add_option("--origin", P.origin, "i,j (default: centre)");
    s->add_flag("--somewhere", P.somewhere, "any starting vertex");
    s->add_option("--budget", P.search_budget, "node expansions before giving up");
    s = leaf(lat, "abscan", "alternating vs constant word on the triangular lattice", lattice_abscan_cmd);
    s->add_option("--p", P.p);
    s->add_option("--box", P.box);
    s->add_option("--budget", P.search_budget);
  }

  auto* env = group("env", "random-environment percolation and k-wise independence");
  {
    auto* s = leaf(env, "column", "column-environment crossing probability", env_column_cmd);
    s->add_option("--mu", P.mu, "law 'v1:w1,v2:w2,...'")->required();
    s->add_option("--n", P.n);
    s->add_flag("--iid", P.iid, "also run iid site percolation at the point mass");
    s = leaf(env, "kwise", "k-wise independence of a joint pmf", env_kwise_cmd);
    s->add_option("--pmf", P.pmf, "pmf CSV (as written by 'schedule kwise')")->required();
    s->add_option("--k", P.k);
    s->add_flag("--all", P.all, "list every violation");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  }
  if (!action) {
    err << app.help();
    return kUsageError;
  }

  Result result;
  try {
    result = action();
  } catch (const PropertyViolation& e) {
    err << "property violation: " << e.what() << '\n';
    return kPropertyViolation;
  } catch (const BudgetExceeded& e) {
    err << "refused: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  std::ostringstream data;
  if (P.format == "json")
    write_json_lines(result.table, data);
  else
    write_csv(result.table, data);
  const std::string bytes = data.str();
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (P.out.empty()) {
    out << bytes;
    err << json_manifest(args, P, seconds, "-", bytes) << '\n';
  } else {
    std::ofstream file(P.out, std::ios::binary);
    std::ofstream manifest(P.out + ".manifest.json");
    if (!file || !manifest) {
      err << "error: cannot write '" << P.out << "'\n";
      return kUsageError;
    }
    file << bytes;
    manifest << json_manifest(args, P, seconds, P.out, bytes) << '\n';
  }
  if (!result.violation.empty()) {
    err << "property violation: " << result.violation << '\n';
    return kPropertyViolation;
  }
  return kOk;
}

}  // namespace demon::cli
