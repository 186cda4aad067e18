#include "nullmodel/theory.hpp"

#include "nullmodel/errors.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <string>

namespace nullmodel::theory {

namespace {

using std::numbers::pi;

void check_tau(double tau) {
  if (!(tau > 2.0 && tau < 3.0)) throw DomainError("tau must lie in (2,3), got " + std::to_string(tau));
}

double snap_integer(double x) {
  const double r = std::round(x);
  return std::abs(x - r) <= 1e-12 * std::max(1.0, std::abs(x)) ? r : x;
}

struct SimpsonState {
  const std::function<double(double)>& f;
  double error = 0.0;
};

double simpson(double fa, double fm, double fb, double a, double b) { return (b - a) / 6.0 * (fa + 4.0 * fm + fb); }

double adaptive(SimpsonState& st, double a, double b, double fa, double fm, double fb, double whole, double tol,
                int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = st.f(lm), frm = st.f(rm);
  const double left = simpson(fa, flm, fm, a, m);
  const double right = simpson(fm, frm, fb, m, b);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) {
    st.error += std::abs(diff) / 15.0;
    return left + right + diff / 15.0;
  }
  return adaptive(st, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive(st, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

} // namespace

Thresholds thresholds(double n, double tau) {
  check_tau(tau);
  if (!(n >= 2.0)) throw DomainError("thresholds need n >= 2");
  return {snap_integer(std::pow(n, (tau - 2.0) / (tau - 1.0))), snap_integer(std::pow(n, 1.0 / (tau - 1.0)))};
}

double gamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) throw DomainError("Gamma has a pole at " + std::to_string(x));
  return std::tgamma(x);
}

double tail_constant(ModelKind model, double tau, double c, double mu, double nu) {
  check_tau(tau);
  switch (model) {
  case ModelKind::ecm: return -c * std::pow(mu, 2.0 - tau) * gamma(2.0 - tau);
  case ModelKind::irg: return c * std::pow(mu, 2.0 - tau) / ((3.0 - tau) * (tau - 2.0));
  case ModelKind::hrg:
    if (!(nu > 0.0)) throw DomainError("nu must be positive");
    return nu * (tau - 1.0) * (tau - 1.0) / ((tau - 2.0) * pi) * std::pow(pi / (2.0 * nu), 2.0 - tau) *
           hrg_integral(tau).value;
  }
  throw DomainError("unknown model");
}

Quadrature hrg_integral(double tau, double tol) {
  check_tau(tau);
  if (!(tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  // remainder after removing the x^(2-tau) term: sin(u)^(1-tau) (u - sin u) cos u
  const std::function<double(double)> f = [tau](double u) {
    if (u <= 0.0) return 0.0;
    const double s = std::sin(u);
    const double diff = u < 1e-3 ? u * u * u / 6.0 - std::pow(u, 5) / 120.0 : u - s;
    return std::pow(s, 1.0 - tau) * diff * std::cos(u);
  };
  SimpsonState st{f};
  const double a = 0.0, b = pi / 2.0;
  const double fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
  const double remainder = adaptive(st, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, 60);
  const double head = (2.0 / pi) * (remainder + 1.0 / (3.0 - tau));
  const double tail = 1.0 / (tau - 2.0);
  return {head + tail, (2.0 / pi) * st.error, tol};
}

double plateau_prefactor(ModelKind model, double tau, double c, double mu, double nu) {
  check_tau(tau);
  const double g = gamma(2.5 - tau / 2.0);
  const double cosine = std::cos(pi * (tau - 1.0) / 4.0);
  const double power = 2.0 / (tau - 1.0);
  if (model == ModelKind::hrg) {
    if (!(nu > 0.0)) throw DomainError("nu must be positive");
    return (2.0 * nu / pi) * std::pow(2.0 / (3.0 - tau) * g * cosine, power);
  }
  if (!(mu > 0.0)) throw DomainError("mu must be positive");
  return (1.0 / mu) * std::pow(2.0 * c * g * cosine / ((tau - 1.0) * (3.0 - tau)), power);
}

double plateau_scale(double n, double tau) {
  check_tau(tau);
  return std::pow(n, (3.0 - tau) / (tau - 1.0));
}

double tail_scale(double n, double k, double tau) { return std::pow(n, 3.0 - tau) * std::pow(k, tau - 3.0); }

double expected_ak_constant(double tau, double c, double mu) { return tail_constant(ModelKind::ecm, tau, c, mu); }

double ck_relation(double a_k, double mu, double n) {
  if (a_k < 0.0) throw DomainError("a(k) must be non-negative");
  return a_k * a_k / (mu * n);
}

double ck_direct(double tau, double c, double mu, double n, double k) {
  check_tau(tau);
  const double g = gamma(2.0 - tau);
  return c * c * g * g * std::pow(mu, 3.0 - 2.0 * tau) * std::pow(n, 5.0 - 2.0 * tau) * std::pow(k, 2.0 * tau - 6.0);
}

TheoryPrediction predict(ModelKind model, double n, const PowerLawSpec& law, double nu, double quadrature_tol) {
  TheoryPrediction p;
  p.model = model;
  p.n = n;
  p.tau = law.tau;
  p.x_min = law.x_min;
  p.nu = nu;
  p.c = law.c;
  p.mu = law.mu;
  p.thresholds = thresholds(n, law.tau);
  p.plateau_prefactor = plateau_prefactor(model, law.tau, law.c, law.mu, nu);
  p.plateau_scale = plateau_scale(n, law.tau);
  p.stable_alpha = stable_index(law.tau);
  p.tail_constant = tail_constant(model, law.tau, law.c, law.mu, nu);
  p.tail_exponent = law.tau - 3.0;
  if (model == ModelKind::hrg) p.integral = hrg_integral(law.tau, quadrature_tol);
  return p;
}

std::vector<CurvePoint> predicted_curve(const TheoryPrediction& p, std::span<const double> ks) {
  std::vector<CurvePoint> out;
  out.reserve(ks.size());
  for (double k : ks) {
    if (!(k >= 1.0 && k <= p.thresholds.cutoff_k)) {
      throw DomainError("prediction grid point " + std::to_string(k) + " outside [1, cutoff]");
    }
    if (k <= p.thresholds.threshold_k) {
      out.push_back({k, true, p.plateau_scale * p.plateau_prefactor});
    } else {
      out.push_back({k, false, p.tail_constant * tail_scale(p.n, k, p.tau)});
    }
  }
  return out;
}

} // namespace nullmodel::theory
