#include "demon/envmodels.hpp"

#include <charconv>
#include <cmath>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace demon::envmodels {

JointPmf::JointPmf(std::vector<std::string> labels, std::vector<Rational> probs)
    : labels_(std::move(labels)), probs_(std::move(probs)) {
  if (labels_.size() > 24) throw std::invalid_argument("joint pmf: too many variables");
  if (probs_.size() != (std::size_t{1} << labels_.size()))
    throw std::invalid_argument("joint pmf: need 2^k outcome probabilities");
  for (const auto& label : labels_)
    if (label.empty() || label.find_first_of(" \t\n") != std::string::npos)
      throw std::invalid_argument("joint pmf: labels must be nonempty without whitespace");
  Rational total = 0;
  for (auto& q : probs_) {
    q.canonicalize();
    if (q < 0) throw std::invalid_argument("joint pmf: negative probability");
    total += q;
  }
  if (total != 1) throw std::invalid_argument("joint pmf: probabilities sum to " + to_fraction_string(total));
}

Rational JointPmf::marginal(const std::vector<std::size_t>& subset, std::uint64_t values) const {
  Rational total = 0;
  for (std::uint64_t b = 0; b < probs_.size(); ++b) {
    bool match = true;
    for (std::size_t t = 0; t < subset.size() && match; ++t)
      match = ((b >> subset[t]) & 1u) == ((values >> t) & 1u);
    if (match) total += probs_[b];
  }
  return total;
}

Rational JointPmf::marginal_one(std::size_t variable) const { return marginal({variable}, 1); }

void JointPmf::write_csv(std::ostream& out) const {
  out << "# labels:";
  for (const auto& label : labels_) out << ' ' << label;
  out << "\noutcome,numerator,denominator\n";
  for (std::uint64_t b = 0; b < probs_.size(); ++b) {
    for (std::size_t v = 0; v < arity(); ++v) out << ((b >> v) & 1u);
    out << ',' << probs_[b].get_num().get_str() << ',' << probs_[b].get_den().get_str() << '\n';
  }
}

JointPmf JointPmf::read_csv(std::istream& in) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, Rational>> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# labels:", 0) == 0) {
      std::stringstream ss(line.substr(9));
      for (std::string label; ss >> label;) labels.push_back(label);
      continue;
    }
    if (!header_seen) {
      if (line != "outcome,numerator,denominator") throw std::invalid_argument("pmf csv: bad header");
      header_seen = true;
      continue;
    }
    std::stringstream ss(line);
    std::string bits, num, den;
    if (!std::getline(ss, bits, ',') || !std::getline(ss, num, ',') || !std::getline(ss, den))
      throw std::invalid_argument("pmf csv: bad row '" + line + "'");
    rows.emplace_back(bits, parse_fraction(num + "/" + den));
  }
  if (rows.empty()) throw std::invalid_argument("pmf csv: no rows");
  const std::size_t k = rows.front().first.size();
  if (labels.empty())
    for (std::size_t v = 0; v < k; ++v) labels.push_back("x" + std::to_string(v + 1));
  if (labels.size() != k) throw std::invalid_argument("pmf csv: label count mismatch");
  std::vector<Rational> probs(std::size_t{1} << k, Rational(0));
  std::vector<char> seen(probs.size(), 0);
  for (const auto& [bits, q] : rows) {
    if (bits.size() != k) throw std::invalid_argument("pmf csv: ragged outcome '" + bits + "'");
    std::uint64_t b = 0;
    for (std::size_t v = 0; v < k; ++v) {
      if (bits[v] != '0' && bits[v] != '1') throw std::invalid_argument("pmf csv: bad outcome '" + bits + "'");
      if (bits[v] == '1') b |= std::uint64_t{1} << v;
    }
    if (seen[b]++) throw std::invalid_argument("pmf csv: duplicate outcome '" + bits + "'");
    probs[b] = q;
  }
  return JointPmf(std::move(labels), std::move(probs));
}

JointPmf JointPmf::product(const std::vector<Rational>& one_probs) {
  const std::size_t k = one_probs.size();
  std::vector<std::string> labels;
  for (std::size_t v = 0; v < k; ++v) labels.push_back("x" + std::to_string(v + 1));
  std::vector<Rational> probs(std::size_t{1} << k);
  for (std::uint64_t b = 0; b < probs.size(); ++b) {
    Rational q = 1;
    for (std::size_t v = 0; v < k; ++v) q *= ((b >> v) & 1u) ? one_probs[v] : 1 - one_probs[v];
    probs[b] = q;
  }
  return JointPmf(std::move(labels), std::move(probs));
}

Rational KwiseViolation::deviation() const { return abs(joint - product); }

namespace {

// Calls fn(subset) for every size-r subset of {0..k-1} in lexicographic order.
template <class Fn>
void for_each_subset(std::size_t k, std::size_t r, Fn&& fn) {
  if (r > k) return;
  std::vector<std::size_t> idx(r);
  for (std::size_t t = 0; t < r; ++t) idx[t] = t;
  while (true) {
    fn(idx);
    std::size_t t = r;
    while (t > 0 && idx[t - 1] == k - r + t - 1) --t;
    if (t == 0) return;
    ++idx[t - 1];
    for (std::size_t u = t; u < r; ++u) idx[u] = idx[u - 1] + 1;
  }
}

}  // namespace

KwiseReport kwise_test(const JointPmf& pmf, std::size_t k) {
  if (k > pmf.arity()) throw std::invalid_argument("kwise_test: k exceeds number of variables");
  KwiseReport report;
  std::vector<Rational> ones(pmf.arity());
  for (std::size_t v = 0; v < pmf.arity(); ++v) ones[v] = pmf.marginal_one(v);
  for (std::size_t r = 2; r <= k; ++r) {
    for_each_subset(pmf.arity(), r, [&](const std::vector<std::size_t>& subset) {
      for (std::uint64_t values = 0; values < (std::uint64_t{1} << r); ++values) {
        Rational product = 1;
        for (std::size_t t = 0; t < r; ++t) product *= ((values >> t) & 1u) ? ones[subset[t]] : 1 - ones[subset[t]];
        Rational joint = pmf.marginal(subset, values);
        if (joint == product) continue;
        KwiseViolation v{subset, values, joint, product};
        if (!report.worst || v.deviation() > report.worst->deviation()) report.worst = v;
        report.violations.push_back(std::move(v));
        report.independent = false;
      }
    });
  }
  return report;
}

Mu Mu::parse(std::string_view text) {
  Mu mu;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string field(text.substr(start, end - start));
    const auto colon = field.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("mu: expected value:weight, got '" + field + "'");
    try {
      std::size_t used = 0;
      const double v = std::stod(field.substr(0, colon), &used);
      if (used != colon) throw std::invalid_argument("");
      const std::string ws = field.substr(colon + 1);
      const double w = std::stod(ws, &used);
      if (used != ws.size()) throw std::invalid_argument("");
      mu.support.push_back(v);
      mu.weights.push_back(w);
    } catch (const std::exception&) {
      throw std::invalid_argument("mu: bad entry '" + field + "'");
    }
    start = end + 1;
  }
  if (mu.support.empty()) throw std::invalid_argument("mu: empty distribution");
  double total = 0;
  for (std::size_t t = 0; t < mu.support.size(); ++t) {
    if (!(mu.support[t] >= 0 && mu.support[t] <= 1)) throw std::invalid_argument("mu: support point outside [0,1]");
    if (!(mu.weights[t] >= 0)) throw std::invalid_argument("mu: negative weight");
    total += mu.weights[t];
  }
  if (std::abs(total - 1) > 1e-9) throw std::invalid_argument("mu: weights must sum to 1");
  return mu;
}

Mu Mu::point_mass(double p) { return Mu{{p}, {1.0}}; }

double Mu::draw(double u) const {
  double acc = 0;
  for (std::size_t t = 0; t + 1 < support.size(); ++t) {
    acc += weights[t];
    if (u < acc) return support[t];
  }
  return support.back();
}

std::string Mu::str() const {
  std::ostringstream out;
  out.precision(12);
  for (std::size_t t = 0; t < support.size(); ++t) out << (t ? "," : "") << support[t] << ':' << weights[t];
  return out.str();
}

SiteGrid threshold_grid(const std::vector<double>& densities, const std::vector<double>& uniforms, std::size_t n) {
  SiteGrid g{n, n, std::vector<char>(n * n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g.open[i * n + j] = uniforms[i * n + j] < densities[i];
  return g;
}

ColumnSample sample_column_environment(const Mu& mu, std::size_t n, Stream& stream) {
  ColumnSample s;
  s.densities.resize(n);
  for (auto& d : s.densities) d = mu.draw(stream.uniform());
  s.uniforms.resize(n * n);
  for (auto& u : s.uniforms) u = stream.uniform();
  s.grid = threshold_grid(s.densities, s.uniforms, n);
  return s;
}

bool horizontal_crossing(const SiteGrid& grid) {
  const std::size_t w = grid.width, h = grid.height;
  if (w == 0 || h == 0) return false;
  std::vector<char> seen(w * h, 0);
  std::deque<std::size_t> queue;
  for (std::size_t j = 0; j < h; ++j)
    if (grid.at(0, j)) {
      seen[j] = 1;
      queue.push_back(j);
    }
  while (!queue.empty()) {
    const std::size_t cell = queue.front();
    queue.pop_front();
    const std::size_t i = cell / h, j = cell % h;
    if (i + 1 == w) return true;
    auto visit = [&](std::size_t a, std::size_t b) {
      const std::size_t c = a * h + b;
      if (!seen[c] && grid.open[c]) {
        seen[c] = 1;
        queue.push_back(c);
      }
    };
    if (i > 0) visit(i - 1, j);
    if (i + 1 < w) visit(i + 1, j);
    if (j > 0) visit(i, j - 1);
    if (j + 1 < h) visit(i, j + 1);
  }
  return false;
}

Estimate column_percolation_mc(const Mu& mu, std::size_t n, const McConfig& cfg) {
  return estimate_replicas(cfg, [&](Stream& s) {
    return horizontal_crossing(sample_column_environment(mu, n, s).grid) ? 1 : 0;
  });
}

Estimate iid_percolation_mc(double p, std::size_t n, const McConfig& cfg) {
  McConfig derived = cfg;
  derived.master_seed = derive_seed(cfg.master_seed, 0x11D);
  return estimate_replicas(derived, [&](Stream& s) {
    SiteGrid g{n, n, std::vector<char>(n * n)};
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) g.open[i * n + j] = s.bernoulli(p);
    return horizontal_crossing(g) ? 1 : 0;
  });
}

}  // namespace demon::envmodels
