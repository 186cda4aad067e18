#pragma once

#include "nullmodel/models.hpp"
#include "nullmodel/sampling.hpp"

#include <optional>
#include <span>
#include <vector>

namespace nullmodel::theory {

struct Thresholds {
  double threshold_k; // n^((tau-2)/(tau-1)): plateau ends
  double cutoff_k;    // n^(1/(tau-1)): natural maximum degree
};

// Throws DomainError unless tau in (2,3) and n >= 2. Results within 1e-12
// relative of an integer are returned as that integer.
Thresholds thresholds(double n, double tau);

// Gamma function with an explicit DomainError at the poles.
double gamma(double x);

// Large-k limit of a(k) / (n^(3-tau) k^(tau-3)):
//   ecm: -c mu^(2-tau) Gamma(2-tau)
//   irg: c mu^(2-tau) / ((3-tau)(tau-2))
//   hrg: nu (tau-1)^2 / ((tau-2) pi) * (pi/(2 nu))^(2-tau) * hrg_integral(tau)
// c and mu are ignored for hrg, nu for ecm/irg.
double tail_constant(ModelKind model, double tau, double c, double mu, double nu = 1.0);

struct Quadrature {
  double value;
  double error_estimate;
  double tolerance;
};

// int_0^inf x^(1-tau) min(acos(1 - 2x^2)/pi, 1) dx. The part above x = 1 is
// 1/(tau-2). Below 1 the integrand is (2/pi) x^(1-tau) asin x; its leading x^(2-tau)
// term is integrated exactly and the remainder is integrated in u = asin x by
// adaptive Simpson to absolute tolerance `tol`.
Quadrature hrg_integral(double tau, double tol = 1e-8);

// Prefactor of the stable plateau law a(k) ~ prefactor * n^((3-tau)/(tau-1)) * S_{(tau-1)/2}:
//   ecm/irg: (1/mu) (2 c Gamma(5/2 - tau/2) cos(pi (tau-1)/4) / ((tau-1)(3-tau)))^(2/(tau-1))
//   hrg:     (2 nu / pi) ((2/(3-tau)) Gamma(5/2 - tau/2) cos(pi (tau-1)/4))^(2/(tau-1))
double plateau_prefactor(ModelKind model, double tau, double c, double mu, double nu = 1.0);

double plateau_scale(double n, double tau);
// n^(3-tau) k^(tau-3)
double tail_scale(double n, double k, double tau);
inline double stable_index(double tau) { return (tau - 1.0) / 2.0; }

// Constant of E[a(k)] / (n/k)^(3-tau) in the erased configuration model, valid
// for all k; same value as tail_constant(ecm, ...).
double expected_ak_constant(double tau, double c, double mu);

// c(k) = a(k)^2 / (mu n)
double ck_relation(double a_k, double mu, double n);
// c(k) = c^2 Gamma(2-tau)^2 mu^(3-2tau) n^(5-2tau) k^(2tau-6), erased configuration model, k >> sqrt(n)
double ck_direct(double tau, double c, double mu, double n, double k);

struct TheoryPrediction {
  ModelKind model = ModelKind::ecm;
  double n = 0;
  double tau = 0;
  std::int64_t x_min = 1;
  double nu = 1.0;
  double c = 0;
  double mu = 0;
  Thresholds thresholds{};
  double plateau_prefactor = 0;
  double plateau_scale = 0;
  double stable_alpha = 0;
  double tail_constant = 0;
  double tail_exponent = 0; // tau - 3
  std::optional<Quadrature> integral; // hrg only
};

TheoryPrediction predict(ModelKind model, double n, const PowerLawSpec& law, double nu = 1.0,
                         double quadrature_tol = 1e-8);

struct CurvePoint {
  double k;
  bool plateau;
  // plateau: plateau_scale * prefactor (the stable multiplier is left out);
  // tail: tail_constant * n^(3-tau) k^(tau-3)
  double value;
};

// Piecewise skeleton, discontinuous at threshold_k. Every k must lie in
// [1, cutoff_k]; DomainError otherwise.
std::vector<CurvePoint> predicted_curve(const TheoryPrediction& p, std::span<const double> ks);

} // namespace nullmodel::theory
