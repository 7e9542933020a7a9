#include "demon/compat.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "demon/core/errors.hpp"

namespace demon::compat {

bool validate_deletion_witness(const Word& x, const Word& y, const DeletionWitness& w) {
  auto check_side = [](const Word& word, const std::vector<std::size_t>& kept) {
    std::size_t next = 1;
    for (auto k : kept) {
      if (k < next || k > word.size()) return false;
      for (; next < k; ++next)
        if (word[next - 1]) return false;  // dropped a 1
      next = k + 1;
    }
    for (; next <= word.size(); ++next)
      if (word[next - 1]) return false;
    return true;
  };
  if (!check_side(x, w.kept_x) || !check_side(y, w.kept_y)) return false;
  const std::size_t common = std::min(w.kept_x.size(), w.kept_y.size());
  for (std::size_t t = 0; t < common; ++t)
    if (x[w.kept_x[t] - 1] && y[w.kept_y[t] - 1]) return false;
  return true;
}

namespace {

enum Move : char { kNone = 0, kDropX, kDropY, kEmit, kStart };

}  // namespace

std::optional<DeletionWitness> compatible_prefix(const Word& x, const Word& y) {
  const std::size_t n = x.size(), m = y.size();
  const std::size_t stride = m + 1;
  std::vector<char> how((n + 1) * stride, kNone);
  how[0] = kStart;
  std::optional<std::pair<std::size_t, std::size_t>> accept;
  for (std::size_t i = 0; i <= n && !accept; ++i) {
    for (std::size_t j = 0; j <= m; ++j) {
      if (how[i * stride + j] == kNone) continue;
      if (i == n || j == m) {
        accept.emplace(i, j);
        break;
      }
      auto mark = [&](std::size_t a, std::size_t b, Move mv) {
        char& cell = how[a * stride + b];
        if (cell == kNone) cell = mv;
      };
      if (!x[i]) mark(i + 1, j, kDropX);
      if (!y[j]) mark(i, j + 1, kDropY);
      if (!(x[i] && y[j])) mark(i + 1, j + 1, kEmit);
    }
  }
  if (!accept) return std::nullopt;

  DeletionWitness w;
  auto [i, j] = *accept;
  // Letters after the exhausted point are kept as they stand.
  for (std::size_t t = m; t > j; --t) w.kept_y.push_back(t);
  for (std::size_t t = n; t > i; --t) w.kept_x.push_back(t);
  while (i > 0 || j > 0) {
    switch (how[i * stride + j]) {
      case kDropX:
        --i;
        break;
      case kDropY:
        --j;
        break;
      case kEmit:
        w.kept_x.push_back(i--);
        w.kept_y.push_back(j--);
        break;
      default:
        throw std::logic_error("compatible_prefix: broken back-pointer");
    }
  }
  std::reverse(w.kept_x.begin(), w.kept_x.end());
  std::reverse(w.kept_y.begin(), w.kept_y.end());
  return w;
}

std::size_t compatible_horizon(const Word& x, const Word& y) {
  const std::size_t n = std::min(x.size(), y.size());
  const std::size_t stride = n + 1;
  std::vector<char> seen(stride * stride, 0);
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  seen[0] = 1;
  std::size_t best = 0;
  while (!stack.empty()) {
    const auto [i, j] = stack.back();
    stack.pop_back();
    best = std::max({best, i, j});
    if (best == n) return n;
    if (i == n || j == n) continue;
    auto push = [&](std::size_t a, std::size_t b) {
      if (!seen[a * stride + b]) {
        seen[a * stride + b] = 1;
        stack.emplace_back(a, b);
      }
    };
    if (!x[i]) push(i + 1, j);
    if (!y[j]) push(i, j + 1);
    if (!(x[i] && y[j])) push(i + 1, j + 1);
  }
  return best;
}

bool compat_oracle(const Word& x, const Word& y, std::size_t budget) {
  if (x.size() + y.size() > budget)
    throw BudgetExceeded("compat_oracle: |x| + |y| = " + std::to_string(x.size() + y.size()) +
                         " exceeds budget " + std::to_string(budget));
  std::vector<std::size_t> zx, zy;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i]) zx.push_back(i);
  for (std::size_t j = 0; j < y.size(); ++j)
    if (!y[j]) zy.push_back(j);
  const std::size_t zeros = zx.size() + zy.size();
  std::vector<int> xs, ys;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << zeros); ++mask) {
    xs.clear();
    ys.clear();
    std::size_t bit = 0;
    for (std::size_t i = 0, z = 0; i < x.size(); ++i) {
      if (z < zx.size() && zx[z] == i) {
        ++z;
        if ((mask >> bit++) & 1) continue;
      }
      xs.push_back(x[i]);
    }
    for (std::size_t j = 0, z = 0; j < y.size(); ++j) {
      if (z < zy.size() && zy[z] == j) {
        ++z;
        if ((mask >> bit++) & 1) continue;
      }
      ys.push_back(y[j]);
    }
    bool clash = false;
    for (std::size_t t = 0; t < std::min(xs.size(), ys.size()) && !clash; ++t) clash = xs[t] && ys[t];
    if (!clash) return true;
  }
  return false;
}

std::optional<MajorityCertificate> majority_certificate(const Word& x, const Word& y) {
  if (x.size() != y.size()) throw std::invalid_argument("majority_certificate: words differ in length");
  std::size_t sx = 0, sy = 0;
  for (std::size_t N = 1; N <= x.size(); ++N) {
    sx += x[N - 1];
    sy += y[N - 1];
    if (2 * sx > N && 2 * sy > N) return MajorityCertificate{N};
  }
  return std::nullopt;
}

namespace {

// Uniforms for x and y interleaved, so shorter horizons see a prefix of the
// same replica.
std::pair<std::vector<double>, std::vector<double>> draw_uniforms(Stream& s, std::size_t n) {
  std::vector<double> u(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = s.uniform();
    v[i] = s.uniform();
  }
  return {std::move(u), std::move(v)};
}

Word threshold(const std::vector<double>& u, double p) {
  Word w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) w.set(i, u[i] < p ? 1 : 0);
  return w;
}

}  // namespace

Estimate psi_mc(double p, std::size_t n, const McConfig& cfg) {
  const std::size_t horizon[] = {n};
  return psi_curve_horizons(p, horizon, cfg).front();
}

std::vector<Estimate> psi_curve_horizons(double p, std::span<const std::size_t> horizons, const McConfig& cfg) {
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("psi: p outside [0,1]");
  if (horizons.empty()) return {};
  const std::size_t n_max = *std::max_element(horizons.begin(), horizons.end());
  const auto reach = parallel_map(cfg.replicas, cfg.workers, [&](std::size_t k) {
    Stream s(RngSpec{cfg.master_seed, k});
    const auto [u, v] = draw_uniforms(s, n_max);
    return compatible_horizon(threshold(u, p), threshold(v, p));
  });
  std::vector<Estimate> out;
  for (auto n : horizons) {
    std::vector<double> hits(reach.size());
    for (std::size_t k = 0; k < reach.size(); ++k) hits[k] = reach[k] >= n ? 1.0 : 0.0;
    out.push_back(Estimate::from_samples(hits, RngSpec{cfg.master_seed, 0}));
  }
  return out;
}

std::vector<Estimate> psi_curve_densities(std::span<const double> ps, std::size_t n, const McConfig& cfg) {
  for (double p : ps)
    if (!(p >= 0 && p <= 1)) throw std::invalid_argument("psi: p outside [0,1]");
  const auto hits = parallel_map(cfg.replicas, cfg.workers, [&](std::size_t k) {
    Stream s(RngSpec{cfg.master_seed, k});
    const auto [u, v] = draw_uniforms(s, n);
    std::vector<char> row;
    for (double p : ps) row.push_back(compatible_horizon(threshold(u, p), threshold(v, p)) >= n);
    return row;
  });
  std::vector<Estimate> out;
  for (std::size_t t = 0; t < ps.size(); ++t) {
    std::vector<double> xs(hits.size());
    for (std::size_t k = 0; k < hits.size(); ++k) xs[k] = hits[k][t] ? 1.0 : 0.0;
    out.push_back(Estimate::from_samples(xs, RngSpec{cfg.master_seed, 0}));
  }
  return out;
}

}  // namespace demon::compat
