#pragma once

#include "nullmodel/graph.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace nullmodel {

struct AnndRow {
  std::int64_t k;
  std::int64_t count; // N_k, or |M_eps(k)| for band values
  double eps;
  double value;
};

// Rows sorted by strictly increasing k.
struct AnndCurve {
  std::vector<AnndRow> rows;
  std::optional<double> at(std::int64_t k) const;
};

// a(k) = (1 / (k N_k)) sum_{i: deg i = k} sum_{j in N(i)} deg j, for every k with N_k >= 1.
AnndCurve annd_curve(const SimpleGraph& g);

// Per-vertex sum of neighbor degrees.
std::vector<std::int64_t> neighbor_degree_sums(const SimpleGraph& g);

struct EpsilonRule {
  enum class Mode { fixed, automatic };
  Mode mode = Mode::fixed;
  double eps = 0.0;        // fixed mode
  std::int64_t m_min = 20; // automatic mode
  double eps_cap = 0.25;   // automatic mode

  static EpsilonRule fixed(double eps);
  static EpsilonRule automatic(std::int64_t m_min = 20, double eps_cap = 0.25);
};

struct BandResult {
  bool empty = true;
  double value = 0.0;
  std::int64_t members = 0;
  double eps = 0.0;
};

// Integer degree range [ceil(k(1-eps)), floor(k(1+eps))].
std::pair<std::int64_t, std::int64_t> band_bounds(std::int64_t k, double eps) noexcept;

// Per-degree class counts and neighbor-degree sums with prefix sums, so that
// any band statistic is O(1) after an O(n + m) build.
class DegreeClassIndex {
public:
  explicit DegreeClassIndex(const SimpleGraph& g);

  std::int64_t max_degree() const noexcept { return static_cast<std::int64_t>(count_prefix_.size()) - 2; }
  std::int64_t members(std::int64_t lo, std::int64_t hi) const noexcept;
  std::int64_t neighbor_degree_sum(std::int64_t lo, std::int64_t hi) const noexcept;

  BandResult band(std::int64_t k, double eps) const;
  double auto_epsilon(std::int64_t k, std::int64_t m_min, double eps_cap) const;
  BandResult band(std::int64_t k, const EpsilonRule& rule) const;

private:
  // prefix arrays indexed by degree + 1
  std::vector<std::int64_t> count_prefix_;
  std::vector<std::int64_t> sum_prefix_;
};

// a_eps(k) over M_eps(k) = {i : deg i in [k(1-eps), k(1+eps)]}. Empty bands
// are reported through BandResult::empty, never as a division by zero.
BandResult annd_band(const SimpleGraph& g, std::int64_t k, const EpsilonRule& rule);

// Smallest eps on the grid {0, 0.01, ...} with |M_eps(k)| >= m_min, else eps_cap.
double epsilon_rule_auto(const SimpleGraph& g, std::int64_t k, std::int64_t m_min, double eps_cap);

// Number of triangles through each vertex.
std::vector<std::int64_t> triangles_per_vertex(const SimpleGraph& g);

struct ClusteringRow {
  std::int64_t k;
  std::int64_t count;
  double value;
};

// Mean local clustering 2 T_i / (k (k-1)) over vertices of degree k >= 2.
struct ClusteringCurve {
  std::vector<ClusteringRow> rows;
  std::optional<double> at(std::int64_t k) const;
};

ClusteringCurve clustering_curve(const SimpleGraph& g);

// sum D_i^2 / L_n. Throws DomainError if L_n <= 0.
double size_biased_mean(std::span<const std::int64_t> degrees, double L_n);
double size_biased_mean(std::span<const double> weights, double L_n);

struct ContributionShare {
  double delta;
  double lo; // delta mu_n / k
  double hi; // mu_n / (delta k)
  double inside;
  double outside;
};

// Splits the double sum behind a_eps(k) by whether the neighbor degree falls
// in [delta mu_n / k, mu_n / (delta k)]. Shares sum to one. Throws DomainError
// if the band is empty.
std::vector<ContributionShare> contribution_profile(const SimpleGraph& g, std::int64_t k, const EpsilonRule& rule,
                                                    std::span<const double> delta_grid, double mu_n);

struct SlopeFit {
  double slope;
  double intercept;
  double r2;
  std::size_t points;
};

// Ordinary least squares of ln(value) on ln(k) over k in [k_lo, k_hi].
// Throws InsufficientData with fewer than 3 points and DomainError on
// non-positive values inside the window.
SlopeFit fit_loglog_slope(std::span<const std::pair<double, double>> curve, double k_lo, double k_hi);

} // namespace nullmodel
