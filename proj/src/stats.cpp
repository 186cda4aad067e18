#include "nullmodel/stats.hpp"

#include "nullmodel/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nullmodel {

std::optional<double> AnndCurve::at(std::int64_t k) const {
  auto it = std::lower_bound(rows.begin(), rows.end(), k, [](const AnndRow& r, std::int64_t x) { return r.k < x; });
  if (it == rows.end() || it->k != k) return std::nullopt;
  return it->value;
}

std::optional<double> ClusteringCurve::at(std::int64_t k) const {
  auto it = std::lower_bound(rows.begin(), rows.end(), k,
                             [](const ClusteringRow& r, std::int64_t x) { return r.k < x; });
  if (it == rows.end() || it->k != k) return std::nullopt;
  return it->value;
}

std::vector<std::int64_t> neighbor_degree_sums(const SimpleGraph& g) {
  std::vector<std::int64_t> s(g.num_vertices(), 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (Vertex j : g.neighbors(static_cast<Vertex>(i))) s[i] += g.degree(j);
  }
  return s;
}

AnndCurve annd_curve(const SimpleGraph& g) {
  const auto sums = neighbor_degree_sums(g);
  const auto dmax = static_cast<std::size_t>(g.max_degree());
  std::vector<std::int64_t> count(dmax + 1, 0), total(dmax + 1, 0);
  for (std::size_t i = 0; i < sums.size(); ++i) {
    const auto d = static_cast<std::size_t>(g.degree(static_cast<Vertex>(i)));
    ++count[d];
    total[d] += sums[i];
  }
  AnndCurve curve;
  // k = 0 has no neighbors and no defined a(k)
  for (std::size_t k = 1; k <= dmax; ++k) {
    if (count[k] == 0) continue;
    const double value = static_cast<double>(total[k]) / (static_cast<double>(k) * static_cast<double>(count[k]));
    curve.rows.push_back({static_cast<std::int64_t>(k), count[k], 0.0, value});
  }
  return curve;
}

EpsilonRule EpsilonRule::fixed(double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw DomainError("eps must lie in [0,1)");
  EpsilonRule r;
  r.mode = Mode::fixed;
  r.eps = eps;
  return r;
}

EpsilonRule EpsilonRule::automatic(std::int64_t m_min, double eps_cap) {
  if (m_min < 1) throw DomainError("m_min must be >= 1");
  if (!(eps_cap >= 0.0 && eps_cap < 1.0)) throw DomainError("eps_cap must lie in [0,1)");
  EpsilonRule r;
  r.mode = Mode::automatic;
  r.m_min = m_min;
  r.eps_cap = eps_cap;
  return r;
}

std::pair<std::int64_t, std::int64_t> band_bounds(std::int64_t k, double eps) noexcept {
  const double kd = static_cast<double>(k);
  const auto lo = static_cast<std::int64_t>(std::ceil(kd * (1.0 - eps) - 1e-9));
  const auto hi = static_cast<std::int64_t>(std::floor(kd * (1.0 + eps) + 1e-9));
  return {std::max<std::int64_t>(lo, 0), hi};
}

DegreeClassIndex::DegreeClassIndex(const SimpleGraph& g) {
  const auto sums = neighbor_degree_sums(g);
  const auto dmax = static_cast<std::size_t>(g.max_degree());
  count_prefix_.assign(dmax + 2, 0);
  sum_prefix_.assign(dmax + 2, 0);
  for (std::size_t i = 0; i < sums.size(); ++i) {
    const auto d = static_cast<std::size_t>(g.degree(static_cast<Vertex>(i)));
    ++count_prefix_[d + 1];
    sum_prefix_[d + 1] += sums[i];
  }
  for (std::size_t d = 1; d < count_prefix_.size(); ++d) {
    count_prefix_[d] += count_prefix_[d - 1];
    sum_prefix_[d] += sum_prefix_[d - 1];
  }
}

namespace {

template <class T>
T range_sum(const std::vector<T>& prefix, std::int64_t lo, std::int64_t hi) noexcept {
  const auto top = static_cast<std::int64_t>(prefix.size()) - 2;
  lo = std::max<std::int64_t>(lo, 0);
  hi = std::min(hi, top);
  if (lo > hi) return T{0};
  return prefix[static_cast<std::size_t>(hi + 1)] - prefix[static_cast<std::size_t>(lo)];
}

} // namespace

std::int64_t DegreeClassIndex::members(std::int64_t lo, std::int64_t hi) const noexcept {
  return range_sum(count_prefix_, lo, hi);
}

std::int64_t DegreeClassIndex::neighbor_degree_sum(std::int64_t lo, std::int64_t hi) const noexcept {
  return range_sum(sum_prefix_, lo, hi);
}

BandResult DegreeClassIndex::band(std::int64_t k, double eps) const {
  if (k < 1) throw DomainError("band statistic needs k >= 1");
  auto [lo, hi] = band_bounds(k, eps);
  BandResult r;
  r.eps = eps;
  r.members = members(lo, hi);
  if (r.members == 0) return r;
  r.empty = false;
  r.value = static_cast<double>(neighbor_degree_sum(lo, hi)) /
            (static_cast<double>(k) * static_cast<double>(r.members));
  return r;
}

double DegreeClassIndex::auto_epsilon(std::int64_t k, std::int64_t m_min, double eps_cap) const {
  const auto steps = static_cast<int>(std::floor(eps_cap * 100.0 + 1e-9));
  for (int j = 0; j <= steps; ++j) {
    const double eps = j / 100.0;
    auto [lo, hi] = band_bounds(k, eps);
    if (members(lo, hi) >= m_min) return eps;
  }
  return eps_cap;
}

BandResult DegreeClassIndex::band(std::int64_t k, const EpsilonRule& rule) const {
  if (rule.mode == EpsilonRule::Mode::fixed) return band(k, rule.eps);
  return band(k, auto_epsilon(k, rule.m_min, rule.eps_cap));
}

BandResult annd_band(const SimpleGraph& g, std::int64_t k, const EpsilonRule& rule) {
  if (k < 1) throw DomainError("band statistic needs k >= 1");
  return DegreeClassIndex(g).band(k, rule);
}

double epsilon_rule_auto(const SimpleGraph& g, std::int64_t k, std::int64_t m_min, double eps_cap) {
  if (m_min < 1) throw DomainError("m_min must be >= 1");
  return DegreeClassIndex(g).auto_epsilon(k, m_min, eps_cap);
}

std::vector<std::int64_t> triangles_per_vertex(const SimpleGraph& g) {
  std::vector<std::int64_t> t(g.num_vertices(), 0);
  for (std::size_t ui = 0; ui < g.num_vertices(); ++ui) {
    const auto u = static_cast<Vertex>(ui);
    auto nu = g.neighbors(u);
    for (Vertex v : nu) {
      if (v <= u) continue;
      // count w > v adjacent to both, so each triangle u < v < w is seen once
      auto nv = g.neighbors(v);
      auto a = std::upper_bound(nu.begin(), nu.end(), v);
      auto b = std::upper_bound(nv.begin(), nv.end(), v);
      while (a != nu.end() && b != nv.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++t[u];
          ++t[v];
          ++t[*a];
          ++a;
          ++b;
        }
      }
    }
  }
  return t;
}

ClusteringCurve clustering_curve(const SimpleGraph& g) {
  const auto tri = triangles_per_vertex(g);
  const auto dmax = static_cast<std::size_t>(g.max_degree());
  std::vector<std::int64_t> count(dmax + 1, 0);
  std::vector<double> total(dmax + 1, 0.0);
  for (std::size_t i = 0; i < tri.size(); ++i) {
    const auto d = g.degree(static_cast<Vertex>(i));
    if (d < 2) continue;
    ++count[static_cast<std::size_t>(d)];
    total[static_cast<std::size_t>(d)] += 2.0 * static_cast<double>(tri[i]) / static_cast<double>(d * (d - 1));
  }
  ClusteringCurve curve;
  for (std::size_t k = 2; k <= dmax; ++k) {
    if (count[k] == 0) continue;
    curve.rows.push_back({static_cast<std::int64_t>(k), count[k], total[k] / static_cast<double>(count[k])});
  }
  return curve;
}

double size_biased_mean(std::span<const std::int64_t> degrees, double L_n) {
  if (!(L_n > 0.0)) throw DomainError("size-biased mean needs L_n > 0");
  long double s = 0.0L;
  for (auto d : degrees) s += static_cast<long double>(d) * static_cast<long double>(d);
  return static_cast<double>(s / L_n);
}

double size_biased_mean(std::span<const double> weights, double L_n) {
  if (!(L_n > 0.0)) throw DomainError("size-biased mean needs L_n > 0");
  long double s = 0.0L;
  for (auto w : weights) s += static_cast<long double>(w) * w;
  return static_cast<double>(s / L_n);
}

std::vector<ContributionShare> contribution_profile(const SimpleGraph& g, std::int64_t k, const EpsilonRule& rule,
                                                    std::span<const double> delta_grid, double mu_n) {
  if (k < 1) throw DomainError("contribution profile needs k >= 1");
  if (!(mu_n > 0.0)) throw DomainError("mu_n must be positive");
  const DegreeClassIndex index(g);
  const double eps = rule.mode == EpsilonRule::Mode::fixed ? rule.eps : index.auto_epsilon(k, rule.m_min, rule.eps_cap);
  const auto [lo_deg, hi_deg] = band_bounds(k, eps);
  if (index.members(lo_deg, hi_deg) == 0) {
    throw DomainError("empty band at k=" + std::to_string(k));
  }

  const double kd = static_cast<double>(k);
  std::vector<ContributionShare> out;
  out.reserve(delta_grid.size());
  for (double delta : delta_grid) {
    if (!(delta > 0.0)) throw DomainError("delta must be positive");
    ContributionShare share{delta, delta * mu_n / kd, mu_n / (delta * kd), 0.0, 0.0};
    std::int64_t inside = 0, total = 0;
    for (std::size_t i = 0; i < g.num_vertices(); ++i) {
      const auto v = static_cast<Vertex>(i);
      const auto d = g.degree(v);
      if (d < lo_deg || d > hi_deg) continue;
      for (Vertex j : g.neighbors(v)) {
        const auto dj = g.degree(j);
        total += dj;
        const double x = static_cast<double>(dj);
        if (x >= share.lo && x <= share.hi) inside += dj;
      }
    }
    if (total > 0) {
      share.inside = static_cast<double>(inside) / static_cast<double>(total);
      share.outside = static_cast<double>(total - inside) / static_cast<double>(total);
    }
    out.push_back(share);
  }
  return out;
}

SlopeFit fit_loglog_slope(std::span<const std::pair<double, double>> curve, double k_lo, double k_hi) {
  std::vector<std::pair<double, double>> pts;
  for (auto [k, v] : curve) {
    if (k < k_lo || k > k_hi) continue;
    if (!(k > 0.0) || !(v > 0.0)) throw DomainError("log-log fit needs positive k and values");
    pts.emplace_back(std::log(k), std::log(v));
  }
  if (pts.size() < 3) {
    throw InsufficientData("log-log fit needs >= 3 points in window, got " + std::to_string(pts.size()));
  }
  const double m = static_cast<double>(pts.size());
  double sx = 0, sy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (auto [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0.0) throw InsufficientData("log-log fit needs distinct k values");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  fit.points = pts.size();
  return fit;
}

} // namespace nullmodel
