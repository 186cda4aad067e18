#pragma once

#include "nullmodel/models.hpp"
#include "nullmodel/stats.hpp"

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace nullmodel {

enum class Statistic { annd, clustering };

Statistic parse_statistic(std::string_view name);
std::string_view to_string(Statistic s) noexcept;

struct Binning {
  enum class Kind { raw, log };
  Kind kind = Kind::log;
  int bins_per_decade = 16;

  static Binning raw() { return {Kind::raw, 0}; }
  static Binning log(int per_decade = 16) { return {Kind::log, per_decade}; }
};

Binning parse_binning(std::string_view name, int bins_per_decade = 16);

// Geometric bin of an integer degree k >= 1: floor(per_decade * log10 k).
std::int64_t log_bin_of(std::int64_t k, int per_decade) noexcept;
// Geometric mean of the smallest and largest integer falling in the bin.
double log_bin_center(std::int64_t bin, int per_decade);

// One statistic evaluated on one graph: (bin key, value) pairs sorted by key.
// The key is k itself for raw binning and the bin index for log binning.
//  - annd, raw:  a_eps(k) under `eps` for every k in [1, max degree] whose
//    band is non-empty (plain a(k) when eps is fixed at 0).
//  - annd, log:  sum of neighbor degrees over the bin's vertices divided by the
//    sum of their degrees, i.e. the band average with k taken as the bin's
//    mean degree.
//  - clustering: mean local clustering over vertices of degree >= 2 in the
//    degree class (raw) or bin (log).
std::vector<std::pair<std::int64_t, double>> realization_curve(const SimpleGraph& g, Statistic stat,
                                                               const Binning& binning, const EpsilonRule& eps);

struct EnsembleRow {
  double k;
  std::int64_t count;
  double mean;
  double median;
  double q25;
  double q75;
  double std;
};

struct EnsembleSummary {
  Statistic stat = Statistic::annd;
  Binning binning;
  std::vector<EnsembleRow> rows;

  std::vector<std::pair<double, double>> median_curve() const;
  std::vector<std::pair<double, double>> mean_curve() const;
};

struct EnsembleOptions {
  std::int64_t realizations = 1;
  std::uint64_t seed = 0;
  std::vector<Statistic> stats{Statistic::annd};
  Binning binning;
  EpsilonRule eps = EpsilonRule::fixed(0.0);
  unsigned threads = 1;
};

// Aggregates a list of per-realization values: mean, median (midpoint for even
// counts), linear-interpolation quartiles, sample standard deviation.
EnsembleRow summarize(double k, std::vector<double> values);

// Realization r uses SeedSpec{seed, r}. Results are reduced in stream order,
// so the summary does not depend on the thread count. One summary per
// requested statistic, in request order.
std::vector<EnsembleSummary> ensemble_run(const ModelSpec& model, const EnsembleOptions& options);

} // namespace nullmodel
