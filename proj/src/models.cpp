#include "nullmodel/models.hpp"

#include "nullmodel/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace nullmodel {

ModelKind parse_model_kind(std::string_view name) {
  if (name == "ecm") return ModelKind::ecm;
  if (name == "irg") return ModelKind::irg;
  if (name == "hrg") return ModelKind::hrg;
  throw DomainError("unknown model '" + std::string(name) + "' (expected ecm, irg or hrg)");
}

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
  case ModelKind::ecm: return "ecm";
  case ModelKind::irg: return "irg";
  case ModelKind::hrg: return "hrg";
  }
  return "?";
}

IrgStrategy parse_irg_strategy(std::string_view name) {
  if (name == "naive") return IrgStrategy::naive;
  if (name == "pruned") return IrgStrategy::pruned;
  if (name == "skipping") return IrgStrategy::skipping;
  throw DomainError("unknown irg strategy '" + std::string(name) + "'");
}

HrgStrategy parse_hrg_strategy(std::string_view name) {
  if (name == "naive") return HrgStrategy::naive;
  if (name == "band") return HrgStrategy::band;
  throw DomainError("unknown hrg strategy '" + std::string(name) + "'");
}

std::string_view to_string(IrgStrategy s) noexcept {
  switch (s) {
  case IrgStrategy::naive: return "naive";
  case IrgStrategy::pruned: return "pruned";
  case IrgStrategy::skipping: return "skipping";
  }
  return "?";
}

std::string_view to_string(HrgStrategy s) noexcept {
  return s == HrgStrategy::naive ? "naive" : "band";
}

// ---------------------------------------------------------------- ECM

EdgeList pair_half_edges(const std::vector<std::int64_t>& degrees, const SeedSpec& seed) {
  std::int64_t total = 0;
  for (auto d : degrees) {
    if (d < 0) throw DomainError("negative degree");
    total += d;
  }
  if (total % 2 != 0) throw DomainError("degree sum must be even");
  if (total > (std::int64_t{1} << 32)) throw DomainError("half-edge count exceeds 2^32");
  if (degrees.size() > (std::size_t{1} << 32)) throw DomainError("vertex count exceeds 2^32");

  std::vector<Vertex> half(static_cast<std::size_t>(total));
  std::size_t pos = 0;
  for (std::size_t v = 0; v < degrees.size(); ++v) {
    for (std::int64_t j = 0; j < degrees[v]; ++j) half[pos++] = static_cast<Vertex>(v);
  }
  KeyedStream stream(seed, Purpose::matching);
  for (std::size_t i = half.size(); i > 1; --i) {
    std::swap(half[i - 1], half[stream.below(i)]);
  }
  EdgeList pairs(half.size() / 2);
  for (std::size_t j = 0; j < pairs.size(); ++j) pairs[j] = {half[2 * j], half[2 * j + 1]};
  return pairs;
}

EcmOutcome generate_ecm_from_degrees(std::vector<std::int64_t> degrees, const SeedSpec& seed) {
  EcmOutcome out;
  out.L_n = std::accumulate(degrees.begin(), degrees.end(), std::int64_t{0});
  out.graph = build_simple_graph(degrees.size(), pair_half_edges(degrees, seed));
  out.erased_degrees = out.graph.degrees();
  out.sampled_degrees = std::move(degrees);
  return out;
}

EcmOutcome generate_ecm(const PowerLawSpec& spec, std::size_t n, const SeedSpec& seed) {
  if (n < 2) throw DomainError("ecm needs n >= 2");
  return generate_ecm_from_degrees(sample_degree_sequence(spec, n, seed), seed);
}

// ---------------------------------------------------------------- IRG

double irg_connection_prob(double h, double h2, double mu_n) {
  if (!(mu_n > 0.0)) throw DomainError("mu_n must be positive");
  return std::min(h * h2 / mu_n, 1.0);
}

namespace {

// Vertex ids ordered by weight descending, ties by id.
std::vector<Vertex> weight_order(const std::vector<double>& w) {
  std::vector<Vertex> order(w.size());
  std::iota(order.begin(), order.end(), Vertex{0});
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return w[a] != w[b] ? w[a] > w[b] : a < b;
  });
  return order;
}

EdgeList irg_naive(const std::vector<double>& w, double mu_n, std::uint64_t key) {
  EdgeList edges;
  for (std::size_t u = 0; u < w.size(); ++u) {
    for (std::size_t v = u + 1; v < w.size(); ++v) {
      if (pair_uniform(key, u, v) < irg_connection_prob(w[u], w[v], mu_n)) {
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
      }
    }
  }
  return edges;
}

// Same draws as irg_naive; pairs with p = 1 are accepted without hashing.
// In weight order those pairs form a prefix of every row.
EdgeList irg_pruned(const std::vector<double>& w, double mu_n, std::uint64_t key) {
  const auto order = weight_order(w);
  EdgeList edges;
  for (std::size_t a = 0; a < order.size(); ++a) {
    const Vertex u = order[a];
    std::size_t b = a + 1;
    for (; b < order.size() && w[u] * w[order[b]] >= mu_n; ++b) edges.emplace_back(u, order[b]);
    for (; b < order.size(); ++b) {
      const Vertex v = order[b];
      if (pair_uniform(key, u, v) < irg_connection_prob(w[u], w[v], mu_n)) edges.emplace_back(u, v);
    }
  }
  return edges;
}

// Geometric skipping over weight-sorted candidates (Miller & Hagberg style).
EdgeList irg_skipping(const std::vector<double>& w, double mu_n, const SeedSpec& seed) {
  const auto order = weight_order(w);
  const std::size_t n = order.size();
  KeyedStream stream(seed, Purpose::irg_skip);
  EdgeList edges;
  for (std::size_t a = 0; a + 1 < n; ++a) {
    const double wu = w[order[a]];
    std::size_t b = a + 1;
    double p = std::min(wu * w[order[b]] / mu_n, 1.0);
    while (b < n && p > 0.0) {
      if (p < 1.0) {
        const double r = stream.uniform_open_low();
        const double jump = std::floor(std::log(r) / std::log1p(-p));
        if (jump >= static_cast<double>(n - b)) break;
        b += static_cast<std::size_t>(jump);
      }
      const double q = std::min(wu * w[order[b]] / mu_n, 1.0);
      if (stream.uniform() < q / p) edges.emplace_back(order[a], order[b]);
      p = q;
      ++b;
    }
  }
  return edges;
}

} // namespace

IrgOutcome generate_irg_from_weights(std::vector<double> weights, double mu_n, const SeedSpec& seed,
                                     IrgStrategy strategy) {
  if (!(mu_n > 0.0)) throw DomainError("mu_n must be positive");
  if (weights.size() > (std::size_t{1} << 32)) throw DomainError("vertex count exceeds 2^32");
  const auto key = derive_key(seed, Purpose::irg_pairs);
  EdgeList edges;
  switch (strategy) {
  case IrgStrategy::naive: edges = irg_naive(weights, mu_n, key); break;
  case IrgStrategy::pruned: edges = irg_pruned(weights, mu_n, key); break;
  case IrgStrategy::skipping: edges = irg_skipping(weights, mu_n, seed); break;
  }
  IrgOutcome out;
  out.graph = build_simple_graph(weights.size(), std::move(edges));
  out.weights = std::move(weights);
  out.mu_n = mu_n;
  return out;
}

IrgOutcome generate_irg(const PowerLawSpec& spec, std::size_t n, const SeedSpec& seed, IrgStrategy strategy) {
  if (n < 2) throw DomainError("irg needs n >= 2");
  auto raw = sample_power_law(spec, n, seed, Purpose::weights);
  std::vector<double> weights(raw.begin(), raw.end());
  return generate_irg_from_weights(std::move(weights), spec.mu * static_cast<double>(n), seed, strategy);
}

// ---------------------------------------------------------------- HRG

double relative_angle(double phi_u, double phi_v) noexcept {
  using std::numbers::pi;
  return pi - std::abs(pi - std::abs(phi_u - phi_v));
}

double hyperbolic_cosh_distance(double r_u, double phi_u, double r_v, double phi_v) noexcept {
  const double half = std::sin(relative_angle(phi_u, phi_v) / 2.0);
  return std::cosh(std::abs(r_u - r_v)) + 2.0 * half * half * (std::sinh(r_u) * std::sinh(r_v));
}

double hyperbolic_distance(double r_u, double phi_u, double r_v, double phi_v) noexcept {
  return std::acosh(std::max(1.0, hyperbolic_cosh_distance(r_u, phi_u, r_v, phi_v)));
}

bool hrg_connected(const HrgPoint& u, const HrgPoint& v, double cosh_R) noexcept {
  return hyperbolic_cosh_distance(u.r, u.phi, v.r, v.phi) <= cosh_R;
}

double hrg_max_angle(double r_u, double r_v, double R) noexcept {
  using std::numbers::pi;
  if (r_u + r_v <= R) return pi;
  // sin^2(theta*/2) = (cosh R - cosh(r_u - r_v)) / (2 sinh r_u sinh r_v)
  const double s2 = (std::cosh(R) - std::cosh(r_u - r_v)) / (2.0 * std::sinh(r_u) * std::sinh(r_v));
  if (s2 >= 1.0) return pi;
  if (s2 <= 0.0) return 0.0;
  return 2.0 * std::asin(std::sqrt(s2));
}

double hrg_connection_prob(double t_u, double t_v, double n, double nu) noexcept {
  const double x = nu * t_u * t_v / n;
  if (x >= 1.0) return 1.0;
  return std::min(std::acos(1.0 - 2.0 * x * x) / std::numbers::pi, 1.0);
}

namespace {

EdgeList hrg_naive(const std::vector<HrgPoint>& pts, double cosh_R) {
  EdgeList edges;
  for (std::size_t u = 0; u < pts.size(); ++u) {
    for (std::size_t v = u + 1; v < pts.size(); ++v) {
      if (hrg_connected(pts[u], pts[v], cosh_R)) {
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
      }
    }
  }
  return edges;
}

// Radial bands of fixed width, each sorted by angle. For a query point the
// admissible angle to a band is bounded by hrg_max_angle at the band's inner
// radius (the bound shrinks as the other radius grows), so only an angular
// window per band has to be tested with the exact rule.
EdgeList hrg_band(const std::vector<HrgPoint>& pts, double R, double cosh_R) {
  using std::numbers::pi;
  constexpr double band_width = 0.5;
  constexpr double angle_slack = 1e-9;
  const std::size_t num_bands = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(R / band_width)));

  struct Entry {
    double phi;
    Vertex id;
  };
  std::vector<std::vector<Entry>> bands(num_bands);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto b = std::min(num_bands - 1, static_cast<std::size_t>(pts[i].r / band_width));
    bands[b].push_back({pts[i].phi, static_cast<Vertex>(i)});
  }
  for (auto& band : bands) {
    std::sort(band.begin(), band.end(), [](const Entry& a, const Entry& b) {
      return a.phi != b.phi ? a.phi < b.phi : a.id < b.id;
    });
  }

  EdgeList edges;
  auto test_range = [&](Vertex u, const std::vector<Entry>& band, double lo, double hi) {
    auto first = std::lower_bound(band.begin(), band.end(), lo, [](const Entry& e, double x) { return e.phi < x; });
    for (auto it = first; it != band.end() && it->phi <= hi; ++it) {
      if (it->id > u && hrg_connected(pts[u], pts[it->id], cosh_R)) edges.emplace_back(u, it->id);
    }
  };

  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto u = static_cast<Vertex>(i);
    const HrgPoint& p = pts[u];
    for (std::size_t b = 0; b < num_bands; ++b) {
      const auto& band = bands[b];
      if (band.empty()) continue;
      const double inner = static_cast<double>(b) * band_width;
      const double theta = hrg_max_angle(p.r, inner, R) + angle_slack;
      if (theta >= pi) {
        test_range(u, band, -1.0, 4.0 * pi);
        continue;
      }
      const double lo = p.phi - theta;
      const double hi = p.phi + theta;
      if (lo < 0.0) {
        test_range(u, band, 0.0, hi);
        test_range(u, band, lo + 2.0 * pi, 4.0 * pi);
      } else if (hi >= 2.0 * pi) {
        test_range(u, band, lo, 4.0 * pi);
        test_range(u, band, 0.0, hi - 2.0 * pi);
      } else {
        test_range(u, band, lo, hi);
      }
    }
  }
  return edges;
}

} // namespace

HrgOutcome generate_hrg_from_points(const HrgParams& params, std::vector<HrgPoint> points, HrgStrategy strategy) {
  if (points.size() > (std::size_t{1} << 32)) throw DomainError("vertex count exceeds 2^32");
  const double cosh_R = std::cosh(params.R);
  EdgeList edges = strategy == HrgStrategy::naive ? hrg_naive(points, cosh_R) : hrg_band(points, params.R, cosh_R);
  HrgOutcome out;
  out.graph = build_simple_graph(points.size(), std::move(edges));
  out.points = std::move(points);
  out.params = params;
  return out;
}

HrgOutcome generate_hrg(const HrgParams& params, const SeedSpec& seed, HrgStrategy strategy) {
  return generate_hrg_from_points(params, sample_hrg_coordinates(params, seed), strategy);
}

// ---------------------------------------------------------------- front end

ModelOutcome generate(const ModelSpec& spec, const SeedSpec& seed) {
  switch (spec.kind) {
  case ModelKind::ecm: return generate_ecm(spec.law, spec.n, seed);
  case ModelKind::irg: return generate_irg(spec.law, spec.n, seed, spec.irg_strategy);
  case ModelKind::hrg:
    return generate_hrg(HrgParams::make(spec.n, spec.law.tau, spec.nu), seed, spec.hrg_strategy);
  }
  throw DomainError("unknown model kind");
}

const SimpleGraph& graph_of(const ModelOutcome& outcome) noexcept {
  return std::visit([](const auto& o) -> const SimpleGraph& { return o.graph; }, outcome);
}

} // namespace nullmodel
