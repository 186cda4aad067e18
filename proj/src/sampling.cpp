#include "nullmodel/sampling.hpp"

#include "nullmodel/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace nullmodel {

namespace {

void check_tau(double tau) {
  if (!(tau > 2.0 && tau < 3.0)) {
    throw DomainError("tau must lie in (2,3), got " + std::to_string(tau));
  }
}

// sum_{k >= a} k^-s for s > 1, a >= 1.
double tail_zeta(double s, std::int64_t a) {
  const std::int64_t cutoff = std::max<std::int64_t>(a, 2000);
  double sum = 0.0;
  for (std::int64_t k = cutoff - 1; k >= a; --k) sum += std::pow(static_cast<double>(k), -s);
  // Euler-Maclaurin remainder from N = cutoff; truncation error far below 1e-12.
  const double N = static_cast<double>(cutoff);
  const double p = std::pow(N, -s);
  double rem = N * p / (s - 1.0) + 0.5 * p;
  rem += s * p / N / 12.0;
  rem -= s * (s + 1.0) * (s + 2.0) * p / (N * N * N) / 720.0;
  rem += s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * p / std::pow(N, 5) / 30240.0;
  return sum + rem;
}

} // namespace

LawConstants law_constants(double tau, std::int64_t x_min) {
  check_tau(tau);
  if (x_min < 1) throw DomainError("x_min must be >= 1");
  const double xm = static_cast<double>(x_min);
  const double scale = std::pow(xm, tau - 1.0);
  // E[D] = sum_{k>=1} P(D >= k) = (x_min - 1) + x_min^(tau-1) sum_{k>=x_min} k^(1-tau)
  const double mu = (xm - 1.0) + scale * tail_zeta(tau - 1.0, x_min);
  return {(tau - 1.0) * scale, mu};
}

PowerLawSpec PowerLawSpec::make(double tau, std::int64_t x_min) {
  auto k = law_constants(tau, x_min);
  return PowerLawSpec{tau, x_min, k.c, k.mu};
}

std::int64_t floor_pareto(const PowerLawSpec& spec, double u) noexcept {
  return static_cast<std::int64_t>(
      std::floor(static_cast<double>(spec.x_min) * std::pow(u, -1.0 / (spec.tau - 1.0))));
}

std::vector<std::int64_t> sample_power_law(const PowerLawSpec& spec, std::size_t n, const SeedSpec& seed,
                                           Purpose purpose) {
  KeyedStream stream(seed, purpose);
  std::vector<std::int64_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = floor_pareto(spec, to_unit_open_low(stream.at(i)));
  return out;
}

std::vector<std::int64_t> sample_degree_sequence(const PowerLawSpec& spec, std::size_t n, const SeedSpec& seed) {
  if (n == 0) throw DomainError("degree sequence needs n >= 1");
  auto d = sample_power_law(spec, n, seed, Purpose::degrees);
  std::int64_t total = 0;
  for (auto x : d) total += x;
  if (total % 2 != 0) ++d.back();
  return d;
}

HrgParams HrgParams::make(std::size_t n, double tau, double nu) {
  check_tau(tau);
  if (!(nu > 0.0)) throw DomainError("nu must be positive");
  if (!(static_cast<double>(n) > nu)) throw DomainError("hyperbolic model needs n > nu");
  HrgParams p;
  p.n = n;
  p.tau = tau;
  p.nu = nu;
  p.alpha = (tau - 1.0) / 2.0;
  p.R = 2.0 * std::log(static_cast<double>(n) / nu);
  return p;
}

double hrg_radius_from_uniform(const HrgParams& params, double u) noexcept {
  const double span = std::cosh(params.alpha * params.R) - 1.0;
  const double r = std::acosh(1.0 + u * span) / params.alpha;
  return std::min(r, params.R);
}

std::vector<HrgPoint> sample_hrg_coordinates(const HrgParams& params, const SeedSpec& seed) {
  KeyedStream radii(seed, Purpose::radii);
  KeyedStream angles(seed, Purpose::angles);
  std::vector<HrgPoint> pts(params.n);
  for (std::size_t i = 0; i < params.n; ++i) {
    const double r = hrg_radius_from_uniform(params, to_unit(radii.at(i)));
    const double phi = 2.0 * std::numbers::pi * to_unit(angles.at(i));
    pts[i] = {r, phi, hrg_type(params, r)};
  }
  return pts;
}

double stable_from_uniforms(double alpha, double u_angle, double u_exp) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw DomainError("stable index must lie in (0,2], got " + std::to_string(alpha));
  }
  using std::numbers::pi;
  const double v = pi * (u_angle - 0.5); // (-pi/2, pi/2)
  const double w = -std::log(u_exp);     // Exp(1)
  if (alpha == 1.0) {
    const double half_pi_v = pi / 2.0 + v;
    return (2.0 / pi) * (half_pi_v * std::tan(v) - std::log((pi / 2.0) * w * std::cos(v) / half_pi_v));
  }
  const double zeta = std::tan(pi * alpha / 2.0);
  const double b = std::atan(zeta) / alpha;
  const double s = std::pow(1.0 + zeta * zeta, 1.0 / (2.0 * alpha));
  const double arg = alpha * (v + b);
  return s * std::sin(arg) / std::pow(std::cos(v), 1.0 / alpha) *
         std::pow(std::cos(v - arg) / w, (1.0 - alpha) / alpha);
}

std::vector<double> sample_stable(double alpha, const SeedSpec& seed, std::size_t count) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw DomainError("stable index must lie in (0,2], got " + std::to_string(alpha));
  }
  KeyedStream stream(seed, Purpose::stable);
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    // u_angle strictly inside (0,1) keeps cos(v) > 0
    const double ua = (static_cast<double>(stream.at(2 * i) >> 11) + 0.5) * 0x1.0p-53;
    const double ue = to_unit_open_low(stream.at(2 * i + 1));
    out[i] = stable_from_uniforms(alpha, ua, ue);
  }
  return out;
}

} // namespace nullmodel
