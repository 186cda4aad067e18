#include "oracle.hpp"

#include "nullmodel/errors.hpp"
#include "nullmodel/random.hpp"
#include "nullmodel/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

namespace nullmodel::oracle {

namespace {

void recurse(std::vector<Vertex>& owner, std::vector<bool>& used, EdgeList& current,
             const std::function<void(const EdgeList&)>& fn) {
  std::size_t first = 0;
  while (first < used.size() && used[first]) ++first;
  if (first == used.size()) {
    fn(current);
    return;
  }
  used[first] = true;
  for (std::size_t j = first + 1; j < used.size(); ++j) {
    if (used[j]) continue;
    used[j] = true;
    current.emplace_back(owner[first], owner[j]);
    recurse(owner, used, current, fn);
    current.pop_back();
    used[j] = false;
  }
  used[first] = false;
}

} // namespace

void for_each_matching(const std::vector<std::int64_t>& degrees, const std::function<void(const EdgeList&)>& fn) {
  const auto total = std::accumulate(degrees.begin(), degrees.end(), std::int64_t{0});
  if (total % 2 != 0) throw DomainError("odd half-edge total");
  if (total > 14) throw DomainError("enumeration limited to 14 half-edges");
  std::vector<Vertex> owner;
  for (std::size_t v = 0; v < degrees.size(); ++v) {
    for (std::int64_t j = 0; j < degrees[v]; ++j) owner.push_back(static_cast<Vertex>(v));
  }
  std::vector<bool> used(owner.size(), false);
  EdgeList current;
  recurse(owner, used, current, fn);
}

std::uint64_t double_factorial(std::uint64_t odd) {
  std::uint64_t r = 1;
  for (std::uint64_t k = odd; k > 1; k -= 2) r *= k;
  return r;
}

namespace {

// erased edge set of a matching, as a sorted unique list
EdgeList erase(const EdgeList& pairs) {
  EdgeList e;
  for (auto [a, b] : pairs) {
    if (a == b) continue;
    e.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  return e;
}

} // namespace

Fraction exact_cm_edge_probability(const std::vector<std::int64_t>& degrees, Vertex u, Vertex v) {
  Fraction f;
  const Edge target{std::min(u, v), std::max(u, v)};
  for_each_matching(degrees, [&](const EdgeList& m) {
    ++f.total;
    auto e = erase(m);
    if (std::find(e.begin(), e.end(), target) != e.end()) ++f.favorable;
  });
  return f;
}

double exact_cm_erased_degree_mean(const std::vector<std::int64_t>& degrees, Vertex u) {
  std::uint64_t total = 0, degree_sum = 0;
  for_each_matching(degrees, [&](const EdgeList& m) {
    ++total;
    for (auto [a, b] : erase(m)) degree_sum += (a == u) + (b == u);
  });
  return static_cast<double>(degree_sum) / static_cast<double>(total);
}

AnndCurve literal_annd(std::size_t n, const EdgeList& edges) {
  std::vector<std::int64_t> deg(n, 0);
  for (auto [a, b] : edges) {
    ++deg[a];
    ++deg[b];
  }
  std::map<std::int64_t, std::int64_t> count, total;
  for (std::size_t i = 0; i < n; ++i) {
    if (deg[i] > 0) ++count[deg[i]];
  }
  for (auto [a, b] : edges) {
    total[deg[a]] += deg[b];
    total[deg[b]] += deg[a];
  }
  AnndCurve c;
  for (auto [k, nk] : count) {
    c.rows.push_back({k, nk, 0.0, static_cast<double>(total[k]) / (static_cast<double>(k) * static_cast<double>(nk))});
  }
  return c;
}

std::optional<double> exact_cm_annd(const std::vector<std::int64_t>& degrees, std::int64_t k) {
  double sum = 0.0;
  std::uint64_t hits = 0;
  for_each_matching(degrees, [&](const EdgeList& m) {
    auto c = literal_annd(degrees.size(), erase(m));
    if (auto v = c.at(k)) {
      sum += *v;
      ++hits;
    }
  });
  if (hits == 0) return std::nullopt;
  return sum / static_cast<double>(hits);
}

namespace {

// cosh d by the textbook formula in extended precision
bool literal_hyperbolic_edge(const HrgPoint& a, const HrgPoint& b, double R) {
  const long double pi = std::numbers::pi_v<long double>;
  long double dphi = std::fabs(static_cast<long double>(a.phi) - b.phi);
  const long double theta = pi - std::fabs(pi - dphi);
  const long double ch = std::cosh(static_cast<long double>(a.r)) * std::cosh(static_cast<long double>(b.r)) -
                         std::sinh(static_cast<long double>(a.r)) * std::sinh(static_cast<long double>(b.r)) *
                             std::cos(theta);
  return ch <= std::cosh(static_cast<long double>(R));
}

} // namespace

NaiveResult naive_generate_and_stats(const ModelSpec& spec, const SeedSpec& seed) {
  if (spec.n > 5000) throw DomainError("naive reference path refuses n > 5000");
  const std::size_t n = spec.n;
  EdgeList edges;
  switch (spec.kind) {
  case ModelKind::irg: {
    const auto raw = sample_power_law(spec.law, n, seed, Purpose::weights);
    const double mu_n = spec.law.mu * static_cast<double>(n);
    const auto key = derive_key(seed, Purpose::irg_pairs);
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        const double p = static_cast<double>(raw[u]) * static_cast<double>(raw[v]) / mu_n;
        if (pair_uniform(key, u, v) < (p < 1.0 ? p : 1.0)) edges.emplace_back(u, v);
      }
    }
    break;
  }
  case ModelKind::hrg: {
    const auto params = HrgParams::make(n, spec.law.tau, spec.nu);
    const auto pts = sample_hrg_coordinates(params, seed);
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        if (literal_hyperbolic_edge(pts[u], pts[v], params.R)) edges.emplace_back(u, v);
      }
    }
    break;
  }
  case ModelKind::ecm: {
    const auto degrees = sample_degree_sequence(spec.law, n, seed);
    std::vector<Vertex> free_half;
    for (std::size_t v = 0; v < n; ++v) {
      for (std::int64_t j = 0; j < degrees[v]; ++j) free_half.push_back(static_cast<Vertex>(v));
    }
    KeyedStream stream(SeedSpec{seed.master_seed ^ 0x5eedULL, seed.stream_id}, Purpose::matching);
    // pair the last free half-edge with a uniformly chosen other free one
    while (free_half.size() >= 2) {
      const Vertex a = free_half.back();
      free_half.pop_back();
      const auto j = stream.below(free_half.size());
      const Vertex b = free_half[j];
      free_half[j] = free_half.back();
      free_half.pop_back();
      if (a != b) edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    break;
  }
  }
  NaiveResult r;
  r.curve = literal_annd(n, edges);
  r.graph = build_simple_graph(n, std::move(edges));
  return r;
}

} // namespace nullmodel::oracle
