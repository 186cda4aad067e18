#include <doctest.h>

#include "nullmodel/errors.hpp"
#include "nullmodel/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

using namespace nullmodel;

namespace {

// Two-sample Kolmogorov-Smirnov statistic.
double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

} // namespace

TEST_CASE("floor-Pareto inverse CDF") {
  auto spec = PowerLawSpec::make(2.5);
  // 0.25^(-2/3) = 2.5198...
  CHECK(floor_pareto(spec, 0.25) == 2);
  CHECK(floor_pareto(spec, 1.0) == 1);
  CHECK(floor_pareto(spec, std::nextafter(1.0, 0.0)) == 1);
  auto spec2 = PowerLawSpec::make(2.5, 3);
  CHECK(floor_pareto(spec2, 1.0) == 3);
}

TEST_CASE("law constants") {
  auto k = law_constants(2.5, 1);
  CHECK(k.c == doctest::Approx(1.5).epsilon(1e-15));
  // zeta(1.5) = 2.612375348685488...
  CHECK(k.mu == doctest::Approx(2.612375348685488).epsilon(1e-12));
  CHECK(law_constants(2.5, 2).c == doctest::Approx(1.5 * std::pow(2.0, 1.5)).epsilon(1e-14));
  CHECK(law_constants(2.5, 2).c == doctest::Approx(4.2426406871).epsilon(1e-9));

  // brute-force E[D] for x_min=2: partial sums of P(D >= k) plus integral tail bound
  const double tau = 2.5;
  double partial = 2.0; // P(D>=1) + P(D>=2)
  const long K = 2000000;
  for (long j = 3; j <= K; ++j) partial += std::pow(j / 2.0, 1.0 - tau);
  // tail sum_{j>K} (j/2)^(1-tau) lies between int_{K+1}^inf and int_K^inf
  const double lo = partial + std::pow(2.0, tau - 1.0) * std::pow(K + 1.0, 2.0 - tau) / (tau - 2.0);
  const double hi = partial + std::pow(2.0, tau - 1.0) * std::pow(static_cast<double>(K), 2.0 - tau) / (tau - 2.0);
  const double mu2 = law_constants(2.5, 2).mu;
  CHECK(mu2 >= lo - 1e-9);
  CHECK(mu2 <= hi + 1e-9);

  CHECK_THROWS_AS(law_constants(3.2), DomainError);
  CHECK_THROWS_AS(law_constants(2.0), DomainError);
  CHECK_THROWS_AS(law_constants(2.5, 0), DomainError);
}

TEST_CASE("degree sequence evenization and determinism") {
  auto spec = PowerLawSpec::make(2.5);
  for (std::uint64_t s = 0; s < 40; ++s) {
    const SeedSpec seed{s, 3};
    auto raw = sample_power_law(spec, 101, seed, Purpose::degrees);
    auto d = sample_degree_sequence(spec, 101, seed);
    const auto raw_sum = std::accumulate(raw.begin(), raw.end(), std::int64_t{0});
    CHECK(std::accumulate(d.begin(), d.end(), std::int64_t{0}) % 2 == 0);
    int changed = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      CHECK(d[i] >= 1);
      if (d[i] != raw[i]) {
        ++changed;
        CHECK(i == d.size() - 1);
        CHECK(d[i] == raw[i] + 1);
      }
    }
    CHECK(changed == (raw_sum % 2 != 0 ? 1 : 0));
    CHECK(sample_degree_sequence(spec, 101, seed) == d);
  }
  CHECK(sample_degree_sequence(spec, 50, {1, 0}) != sample_degree_sequence(spec, 50, {1, 1}));
}

TEST_CASE("empirical CCDF within 3 binomial sigma") {
  auto spec = PowerLawSpec::make(2.5);
  const std::size_t n = 200000;
  auto d = sample_degree_sequence(spec, n, {11, 0});
  for (std::int64_t k : {1, 2, 4, 8, 16, 32, 64, 128}) {
    const double p = std::pow(static_cast<double>(k), 1.0 - spec.tau);
    const auto hits = std::count_if(d.begin(), d.end(), [k](auto x) { return x >= k; });
    const double sigma = std::sqrt(n * p * (1 - p));
    CHECK(std::abs(static_cast<double>(hits) - n * p) <= 3 * sigma + 1.0);
  }
  // P(D >= 10) = 10^-1.5
  const auto ge10 = std::count_if(d.begin(), d.end(), [](auto x) { return x >= 10; });
  CHECK(static_cast<double>(ge10) / n == doctest::Approx(0.0316227766).epsilon(0.05));
}

TEST_CASE("hyperbolic coordinates") {
  auto params = HrgParams::make(10000, 2.5, 1.0);
  CHECK(params.R == doctest::Approx(2 * std::log(10000.0)));
  CHECK(params.alpha == doctest::Approx(0.75));
  CHECK(hrg_radius_from_uniform(params, 0.0) == 0.0);
  CHECK(hrg_type(params, 0.0) == doctest::Approx(10000.0));
  CHECK(hrg_radius_from_uniform(params, 1.0) == doctest::Approx(params.R).epsilon(1e-12));
  CHECK(hrg_type(params, params.R) == doctest::Approx(1.0));
  CHECK_THROWS_AS(HrgParams::make(1, 2.5, 1.0), DomainError);
  CHECK_THROWS_AS(HrgParams::make(100, 3.5, 1.0), DomainError);

  auto pts = sample_hrg_coordinates(params, {5, 0});
  const double span = std::cosh(params.alpha * params.R) - 1.0;
  std::vector<double> radii;
  for (const auto& p : pts) {
    CHECK(p.r >= 0.0);
    CHECK(p.r <= params.R);
    CHECK(p.phi >= 0.0);
    CHECK(p.phi < 2 * std::numbers::pi);
    CHECK(p.t == doctest::Approx(std::exp((params.R - p.r) / 2)));
    radii.push_back(p.r);
  }
  // one-sample KS against (cosh(alpha r) - 1)/(cosh(alpha R) - 1); 1% critical value 1.628/sqrt(n)
  std::sort(radii.begin(), radii.end());
  double d = 0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double F = (std::cosh(params.alpha * radii[i]) - 1.0) / span;
    d = std::max({d, std::abs(F - static_cast<double>(i) / radii.size()),
                  std::abs(F - static_cast<double>(i + 1) / radii.size())});
  }
  CHECK(d < 1.628 / std::sqrt(static_cast<double>(radii.size())));
}

TEST_CASE("type tail follows x^(1-tau) in the intermediate range") {
  auto params = HrgParams::make(1000000, 2.5, 1.0);
  auto pts = sample_hrg_coordinates(params, {9, 0});
  for (double x : {4.0, 10.0, 30.0}) {
    const auto hits = std::count_if(pts.begin(), pts.end(), [x](const HrgPoint& p) { return p.t > x; });
    const double frac = static_cast<double>(hits) / pts.size();
    CHECK(frac == doctest::Approx(std::pow(x, -1.5)).epsilon(0.05));
  }
}

TEST_CASE("stable sampler") {
  CHECK_THROWS_AS(sample_stable(0.0, {1, 0}, 3), DomainError);
  CHECK_THROWS_AS(sample_stable(2.5, {1, 0}, 3), DomainError);

  const double alpha = 0.75;
  auto s = sample_stable(alpha, {1, 0}, 200000);
  CHECK(std::all_of(s.begin(), s.end(), [](double x) { return x >= 0.0; }));
  CHECK(sample_stable(alpha, {1, 0}, 10) == std::vector<double>(s.begin(), s.begin() + 10));

  // (S1 + S2) / 2^(1/alpha) has the law of S
  auto a = sample_stable(alpha, {2, 0}, 100000);
  auto b = sample_stable(alpha, {3, 0}, 100000);
  std::vector<double> sum(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) sum[i] = (a[i] + b[i]) / std::pow(2.0, 1.0 / alpha);
  std::vector<double> ref(s.begin(), s.begin() + 100000);
  // 1% two-sample KS critical value: 1.628 sqrt(2/m)
  CHECK(ks_two_sample(sum, ref) < 1.628 * std::sqrt(2.0 / 100000));

  // alpha = 2 reduces to N(0, 2)
  auto g = sample_stable(2.0, {4, 0}, 100000);
  double m = 0, v = 0;
  for (double x : g) m += x;
  m /= g.size();
  for (double x : g) v += (x - m) * (x - m);
  v /= g.size() - 1;
  CHECK(m == doctest::Approx(0.0).epsilon(0.02).scale(1.0));
  CHECK(v == doctest::Approx(2.0).epsilon(0.03));
}

TEST_CASE("stable CDF against numerical inversion of the transform") {
  // P(S <= x) is the measure of {(V, W) : X(V, W) <= x}; for fixed V the
  // transform is monotone decreasing in W, so the CDF is a 1-D integral over
  // V of exp(-w*(V)), which we evaluate by bisection on W and midpoint rule.
  const double alpha = 0.75;
  auto s = sample_stable(alpha, {21, 0}, 200000);
  std::sort(s.begin(), s.end());
  for (double x : {0.5, 1.0, 3.0, 10.0}) {
    const int M = 4000;
    double cdf = 0.0;
    for (int i = 0; i < M; ++i) {
      const double ua = (i + 0.5) / M;
      // find w* with X(ua, exp(-w*)) == x; X decreasing in w means X <= x iff w >= w*
      double lo = 1e-300, hi = 1e300;
      auto X = [&](double w) { return stable_from_uniforms(alpha, ua, std::exp(-w)); };
      if (X(hi) > x) continue;     // never below x
      if (X(lo) <= x) {            // always below x
        cdf += 1.0 / M;
        continue;
      }
      for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(lo * hi);
        (X(mid) <= x ? hi : lo) = mid;
      }
      cdf += std::exp(-hi) / M;
    }
    const double emp = static_cast<double>(std::upper_bound(s.begin(), s.end(), x) - s.begin()) / s.size();
    CHECK(emp == doctest::Approx(cdf).epsilon(0.01).scale(1.0));
  }
}
