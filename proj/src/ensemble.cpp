#include "nullmodel/ensemble.hpp"

#include "nullmodel/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <string>
#include <thread>

namespace nullmodel {

Statistic parse_statistic(std::string_view name) {
  if (name == "annd") return Statistic::annd;
  if (name == "clustering") return Statistic::clustering;
  throw DomainError("unknown statistic '" + std::string(name) + "'");
}

std::string_view to_string(Statistic s) noexcept {
  return s == Statistic::annd ? "annd" : "clustering";
}

Binning parse_binning(std::string_view name, int bins_per_decade) {
  if (name == "raw") return Binning::raw();
  if (name == "log") {
    if (bins_per_decade < 1) throw DomainError("bins_per_decade must be >= 1");
    return Binning::log(bins_per_decade);
  }
  throw DomainError("unknown binning '" + std::string(name) + "'");
}

std::int64_t log_bin_of(std::int64_t k, int per_decade) noexcept {
  return static_cast<std::int64_t>(std::floor(per_decade * std::log10(static_cast<double>(k)) + 1e-9));
}

double log_bin_center(std::int64_t bin, int per_decade) {
  const double edge = std::pow(10.0, static_cast<double>(bin) / per_decade);
  auto lo = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(edge)) - 1);
  while (log_bin_of(lo, per_decade) < bin) ++lo;
  if (log_bin_of(lo, per_decade) != bin) {
    throw DomainError("log bin " + std::to_string(bin) + " contains no integer");
  }
  auto hi = lo;
  while (log_bin_of(hi + 1, per_decade) == bin) ++hi;
  return std::sqrt(static_cast<double>(lo) * static_cast<double>(hi));
}

std::vector<std::pair<std::int64_t, double>> realization_curve(const SimpleGraph& g, Statistic stat,
                                                               const Binning& binning, const EpsilonRule& eps) {
  std::vector<std::pair<std::int64_t, double>> out;
  const bool raw = binning.kind == Binning::Kind::raw;

  if (stat == Statistic::annd && raw) {
    const DegreeClassIndex index(g);
    for (std::int64_t k = 1; k <= index.max_degree(); ++k) {
      if (eps.mode == EpsilonRule::Mode::fixed && eps.eps == 0.0) {
        if (index.members(k, k) == 0) continue;
      }
      auto b = index.band(k, eps);
      if (!b.empty) out.emplace_back(k, b.value);
    }
    return out;
  }

  std::map<std::int64_t, std::pair<double, double>> acc; // key -> (numerator, denominator)
  if (stat == Statistic::annd) {
    const auto sums = neighbor_degree_sums(g);
    for (std::size_t i = 0; i < sums.size(); ++i) {
      const auto d = g.degree(static_cast<Vertex>(i));
      if (d < 1) continue;
      auto& a = acc[log_bin_of(d, binning.bins_per_decade)];
      a.first += static_cast<double>(sums[i]);
      a.second += static_cast<double>(d);
    }
  } else {
    const auto tri = triangles_per_vertex(g);
    for (std::size_t i = 0; i < tri.size(); ++i) {
      const auto d = g.degree(static_cast<Vertex>(i));
      if (d < 2) continue;
      auto& a = acc[raw ? d : log_bin_of(d, binning.bins_per_decade)];
      a.first += 2.0 * static_cast<double>(tri[i]) / static_cast<double>(d * (d - 1));
      a.second += 1.0;
    }
  }
  out.reserve(acc.size());
  for (auto& [key, a] : acc) out.emplace_back(key, a.first / a.second);
  return out;
}

namespace {

double quantile_sorted(const std::vector<double>& v, double q) {
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] + frac * (v[hi] - v[lo]);
}

} // namespace

EnsembleRow summarize(double k, std::vector<double> values) {
  if (values.empty()) throw DomainError("cannot summarize an empty sample");
  EnsembleRow row{};
  row.k = k;
  row.count = static_cast<std::int64_t>(values.size());
  long double s = 0.0L;
  for (double v : values) s += v;
  row.mean = static_cast<double>(s / values.size());
  long double ss = 0.0L;
  for (double v : values) ss += (v - row.mean) * static_cast<long double>(v - row.mean);
  row.std = values.size() > 1 ? std::sqrt(static_cast<double>(ss / (values.size() - 1))) : 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size();
  row.median = m % 2 == 1 ? values[m / 2] : 0.5 * (values[m / 2 - 1] + values[m / 2]);
  row.q25 = quantile_sorted(values, 0.25);
  row.q75 = quantile_sorted(values, 0.75);
  return row;
}

std::vector<std::pair<double, double>> EnsembleSummary::median_curve() const {
  std::vector<std::pair<double, double>> c;
  c.reserve(rows.size());
  for (const auto& r : rows) c.emplace_back(r.k, r.median);
  return c;
}

std::vector<std::pair<double, double>> EnsembleSummary::mean_curve() const {
  std::vector<std::pair<double, double>> c;
  c.reserve(rows.size());
  for (const auto& r : rows) c.emplace_back(r.k, r.mean);
  return c;
}

std::vector<EnsembleSummary> ensemble_run(const ModelSpec& model, const EnsembleOptions& options) {
  if (options.realizations < 1) throw DomainError("ensemble needs at least one realization");
  if (options.stats.empty()) throw DomainError("ensemble needs at least one statistic");

  using Curve = std::vector<std::pair<std::int64_t, double>>;
  const auto R = static_cast<std::size_t>(options.realizations);
  const std::size_t S = options.stats.size();
  std::vector<std::vector<Curve>> curves(R, std::vector<Curve>(S));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t r = next.fetch_add(1);
      if (r >= R) return;
      try {
        const auto outcome = generate(model, SeedSpec{options.seed, r});
        const auto& g = graph_of(outcome);
        for (std::size_t s = 0; s < S; ++s) {
          curves[r][s] = realization_curve(g, options.stats[s], options.binning, options.eps);
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(R);
        return;
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(R)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<EnsembleSummary> out;
  for (std::size_t s = 0; s < S; ++s) {
    std::map<std::int64_t, std::vector<double>> by_key;
    for (std::size_t r = 0; r < R; ++r) {
      for (auto [key, v] : curves[r][s]) by_key[key].push_back(v);
    }
    EnsembleSummary summary;
    summary.stat = options.stats[s];
    summary.binning = options.binning;
    for (auto& [key, values] : by_key) {
      const double k = options.binning.kind == Binning::Kind::raw
                           ? static_cast<double>(key)
                           : log_bin_center(key, options.binning.bins_per_decade);
      summary.rows.push_back(summarize(k, std::move(values)));
    }
    out.push_back(std::move(summary));
  }
  return out;
}

} // namespace nullmodel
