#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "demon/core/estimate.hpp"
#include "demon/core/monte_carlo.hpp"
#include "demon/core/rational.hpp"

namespace demon::envmodels {

/// Exact law of k binary variables. Outcome index b has bit v equal to the
/// value of variable v.
class JointPmf {
 public:
  JointPmf() = default;
  /// Throws std::invalid_argument unless probs has 2^labels.size() entries,
  /// each non-negative, summing to 1.
  JointPmf(std::vector<std::string> labels, std::vector<Rational> probs);

  std::size_t arity() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const Rational& operator[](std::uint64_t outcome) const { return probs_[outcome]; }
  const std::vector<Rational>& probs() const noexcept { return probs_; }

  /// P(variables in `subset` take the values in `values`); values[t] is the
  /// value of subset[t].
  Rational marginal(const std::vector<std::size_t>& subset, std::uint64_t values) const;
  Rational marginal_one(std::size_t variable) const;

  /// CSV with header "outcome,numerator,denominator"; outcome is a bit
  /// string whose character v is variable v. Labels ride along, space-separated,
  /// in a leading "# labels:" comment line.
  void write_csv(std::ostream& out) const;
  static JointPmf read_csv(std::istream& in);

  /// Product law of independent Bernoulli variables.
  static JointPmf product(const std::vector<Rational>& one_probs);

 private:
  std::vector<std::string> labels_;
  std::vector<Rational> probs_;
};

struct KwiseViolation {
  std::vector<std::size_t> subset;
  std::uint64_t values = 0;  // bit t is the value of subset[t]
  Rational joint;
  Rational product;

  Rational deviation() const;
};

struct KwiseReport {
  bool independent = true;
  /// Largest |joint - product|; ties go to the earliest in enumeration
  /// order (subsets by size, then lexicographic; values ascending).
  std::optional<KwiseViolation> worst;
  std::vector<KwiseViolation> violations;
};

/// Checks exact product form on every subset of size <= k.
KwiseReport kwise_test(const JointPmf& pmf, std::size_t k);

/// Finite discrete law on [0,1], written "v1:w1,v2:w2,...".
struct Mu {
  std::vector<double> support;
  std::vector<double> weights;

  /// Throws std::invalid_argument on bad syntax, points outside [0,1],
  /// negative weights, or weights not summing to 1 (within 1e-9).
  static Mu parse(std::string_view text);
  static Mu point_mass(double p);
  /// Inverse-CDF draw from a uniform in [0,1).
  double draw(double u) const;
  std::string str() const;
};

/// Open sites on a width x height box, column-major: open[i * height + j]
/// for column i and row j.
struct SiteGrid {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<char> open;

  bool at(std::size_t i, std::size_t j) const { return open[i * height + j] != 0; }
};

/// Column environment: densities X_i drawn from mu; site (i, j) open iff
/// U_{ij} < X_i. Uniforms are returned so configurations can be coupled.
struct ColumnSample {
  std::vector<double> densities;
  std::vector<double> uniforms;  // column-major like SiteGrid
  SiteGrid grid;
};

ColumnSample sample_column_environment(const Mu& mu, std::size_t n, Stream& stream);
SiteGrid threshold_grid(const std::vector<double>& densities, const std::vector<double>& uniforms,
                        std::size_t n);

/// Some open path (4-neighbour) joins column 0 to column width-1.
bool horizontal_crossing(const SiteGrid& grid);

Estimate column_percolation_mc(const Mu& mu, std::size_t n, const McConfig& cfg);

/// Plain iid site percolation sampled row by row from a derived seed; the
/// reference law for the point-mass column model.
Estimate iid_percolation_mc(double p, std::size_t n, const McConfig& cfg);

}  // namespace demon::envmodels
