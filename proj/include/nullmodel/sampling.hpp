#pragma once

#include "nullmodel/random.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace nullmodel {

// Floor-Pareto law: D = floor(x_min * U^(-1/(tau-1))), so that
// P(D >= k) = (k/x_min)^(1-tau) for integer k >= x_min.
struct PowerLawSpec {
  double tau = 2.5;
  std::int64_t x_min = 1;
  // tail-density constant: P(D=k) ~ c k^-tau
  double c = 0.0;
  double mu = 0.0;

  // Validates 2 < tau < 3 and x_min >= 1, then fills c and mu.
  static PowerLawSpec make(double tau, std::int64_t x_min = 1);
};

struct LawConstants {
  double c;
  double mu;
};

// c = (tau-1) x_min^(tau-1); mu = E[D] summed exactly up to a cutoff with an
// Euler-Maclaurin remainder for the tail. Throws DomainError for tau not in (2,3).
LawConstants law_constants(double tau, std::int64_t x_min = 1);
inline LawConstants law_constants(const PowerLawSpec& spec) { return law_constants(spec.tau, spec.x_min); }

// Inverse CDF of the floor-Pareto law at u in (0,1].
std::int64_t floor_pareto(const PowerLawSpec& spec, double u) noexcept;

// i.i.d. draws, without parity correction. Draw i uses counter i of the stream.
std::vector<std::int64_t> sample_power_law(const PowerLawSpec& spec, std::size_t n, const SeedSpec& seed,
                                           Purpose purpose);

// Degree sequence: i.i.d. floor-Pareto, plus one half-edge on the last vertex
// if the total is odd.
std::vector<std::int64_t> sample_degree_sequence(const PowerLawSpec& spec, std::size_t n, const SeedSpec& seed);

struct HrgParams {
  std::size_t n = 0;
  double tau = 2.5;
  double nu = 1.0;
  double alpha = 0.75; // (tau-1)/2
  double R = 0.0;      // 2 ln(n/nu)

  static HrgParams make(std::size_t n, double tau, double nu);
};

struct HrgPoint {
  double r;
  double phi;
  // type t = exp((R - r)/2)
  double t;
};

// Inverse CDF of the radial density alpha sinh(alpha r)/(cosh(alpha R)-1).
double hrg_radius_from_uniform(const HrgParams& params, double u) noexcept;
inline double hrg_type(const HrgParams& params, double r) noexcept { return std::exp((params.R - r) / 2.0); }

std::vector<HrgPoint> sample_hrg_coordinates(const HrgParams& params, const SeedSpec& seed);

// Totally skewed stable law S_alpha(1, beta=1, 0) in the one-parametrization,
// via the Chambers-Mallows-Stuck transform. Throws DomainError unless 0 < alpha <= 2.
double stable_from_uniforms(double alpha, double u_angle, double u_exp);
std::vector<double> sample_stable(double alpha, const SeedSpec& seed, std::size_t count);

} // namespace nullmodel

