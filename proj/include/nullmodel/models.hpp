#pragma once

#include "nullmodel/graph.hpp"
#include "nullmodel/random.hpp"
#include "nullmodel/sampling.hpp"

#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

namespace nullmodel {

enum class ModelKind { ecm, irg, hrg };
enum class IrgStrategy { naive, pruned, skipping };
enum class HrgStrategy { naive, band };

ModelKind parse_model_kind(std::string_view name);
std::string_view to_string(ModelKind kind) noexcept;
IrgStrategy parse_irg_strategy(std::string_view name);
HrgStrategy parse_hrg_strategy(std::string_view name);
std::string_view to_string(IrgStrategy s) noexcept;
std::string_view to_string(HrgStrategy s) noexcept;

// ---- erased configuration model ----

struct EcmOutcome {
  SimpleGraph graph;
  std::vector<std::int64_t> sampled_degrees;
  std::vector<std::int64_t> erased_degrees;
  std::int64_t L_n = 0;
};

// Uniform perfect matching of half-edges (Fisher-Yates shuffle, consecutive
// pairing), returned as the raw multigraph pairs including self-loops.
EdgeList pair_half_edges(const std::vector<std::int64_t>& degrees, const SeedSpec& seed);

EcmOutcome generate_ecm_from_degrees(std::vector<std::int64_t> degrees, const SeedSpec& seed);
EcmOutcome generate_ecm(const PowerLawSpec& spec, std::size_t n, const SeedSpec& seed);

// ---- rank-1 inhomogeneous random graph (Chung-Lu kernel) ----

struct IrgOutcome {
  SimpleGraph graph;
  std::vector<double> weights;
  double mu_n = 0.0;
};

// min(h h' / mu_n, 1). Throws DomainError if mu_n <= 0.
double irg_connection_prob(double h, double h2, double mu_n);

// naive and pruned read the same per-pair uniform keyed by (seed, u, v) and
// yield identical edge sets; skipping walks the weight-sorted pair list with
// geometric jumps and only matches them in distribution.
IrgOutcome generate_irg_from_weights(std::vector<double> weights, double mu_n, const SeedSpec& seed,
                                     IrgStrategy strategy);
IrgOutcome generate_irg(const PowerLawSpec& spec, std::size_t n, const SeedSpec& seed, IrgStrategy strategy);

// ---- threshold hyperbolic random graph ----

struct HrgOutcome {
  SimpleGraph graph;
  std::vector<HrgPoint> points;
  HrgParams params;
};

// Relative angle in [0, pi].
double relative_angle(double phi_u, double phi_v) noexcept;

// cosh d = cosh(r_u - r_v) + (1 - cos theta) sinh r_u sinh r_v, which equals
// cosh r_u cosh r_v - sinh r_u sinh r_v cos theta without the cancellation.
double hyperbolic_cosh_distance(double r_u, double phi_u, double r_v, double phi_v) noexcept;
double hyperbolic_distance(double r_u, double phi_u, double r_v, double phi_v) noexcept;
inline double hyperbolic_distance(const HrgPoint& u, const HrgPoint& v) noexcept {
  return hyperbolic_distance(u.r, u.phi, v.r, v.phi);
}

// Edge rule d(u,v) <= R, evaluated as cosh d <= cosh R.
bool hrg_connected(const HrgPoint& u, const HrgPoint& v, double cosh_R) noexcept;

// Largest relative angle at which points with radii r_u, r_v are still
// within distance R; pi when r_u + r_v <= R.
double hrg_max_angle(double r_u, double r_v, double R) noexcept;

// min(acos(1 - 2 (nu t_u t_v / n)^2) / pi, 1)
double hrg_connection_prob(double t_u, double t_v, double n, double nu) noexcept;

HrgOutcome generate_hrg_from_points(const HrgParams& params, std::vector<HrgPoint> points, HrgStrategy strategy);
HrgOutcome generate_hrg(const HrgParams& params, const SeedSpec& seed, HrgStrategy strategy);

// ---- uniform front end for ensembles and the CLI ----

struct ModelSpec {
  ModelKind kind = ModelKind::ecm;
  std::size_t n = 0;
  PowerLawSpec law;
  double nu = 1.0; // hrg only
  IrgStrategy irg_strategy = IrgStrategy::skipping;
  HrgStrategy hrg_strategy = HrgStrategy::band;
};

using ModelOutcome = std::variant<EcmOutcome, IrgOutcome, HrgOutcome>;

ModelOutcome generate(const ModelSpec& spec, const SeedSpec& seed);
const SimpleGraph& graph_of(const ModelOutcome& outcome) noexcept;

} // namespace nullmodel
