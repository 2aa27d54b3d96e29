#include <doctest.h>

#include <cmath>
#include <numeric>

#include "baseline_dom.hpp"
#include "epochs.hpp"
#include "errors.hpp"
#include "qrng.hpp"

using namespace qrdom;

TEST_CASE("Gauss-Legendre rules") {
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre(1, x, w);
  CHECK(x == std::vector<double>{0.0});
  CHECK(w[0] == doctest::Approx(2.0));
  gauss_legendre(2, x, w);
  CHECK(x[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(x[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-15));
  gauss_legendre(3, x, w);
  CHECK(x[2] == doctest::Approx(std::sqrt(0.6)).epsilon(1e-15));
  CHECK(w[1] == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
  // An n-point rule integrates x^(2n-1) and x^(2n-2) exactly.
  for (int n : {4, 11, 22, 40}) {
    gauss_legendre(n, x, w);
    double even = 0.0;
    double odd = 0.0;
    for (int k = 0; k < n; ++k) {
      even += w[k] * std::pow(x[k], 2 * n - 2);
      odd += w[k] * std::pow(x[k], 2 * n - 1);
    }
    CHECK(even == doctest::Approx(2.0 / (2 * n - 1)).epsilon(1e-12));
    CHECK(std::abs(odd) < 1e-13);
  }
  CHECK_THROWS_AS(gauss_legendre(0, x, w), ConfigError);
}

TEST_CASE("product quadrature") {
  const auto one = product_quadrature(1, 1);
  REQUIRE(one.directions.size() == 1);
  CHECK(one.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  for (int np = 1; np <= 64; np += 9) {
    for (int na = 1; na <= 64; na += 7) {
      const auto q = product_quadrature(np, na);
      CHECK(q.directions.size() == static_cast<std::size_t>(np * na));
      CHECK(std::accumulate(q.weights.begin(), q.weights.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-13));
      for (const auto& d : q.directions) {
        CHECK(std::abs(d.mu * d.mu + d.eta * d.eta + d.xi * d.xi - 1.0) < 1e-12);
        CHECK(d.mu > 0.0);
        CHECK(d.eta > 0.0);
        CHECK(d.xi > 0.0);
      }
    }
  }
  CHECK(product_quadrature(22, 22).directions.size() == 484);
  // Mean of xi over the octant is 1/2.
  const auto q = product_quadrature(6, 5);
  double mean_xi = 0.0;
  for (std::size_t k = 0; k < q.weights.size(); ++k) mean_xi += q.weights[k] * q.directions[k].xi;
  CHECK(mean_xi == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(product_quadrature(0, 3), ConfigError);
}

TEST_CASE("DOM without scattering stops after one sweep") {
  ProblemSpec p;
  p.domain = {1.0, 1.0};
  p.source = ConstantField{1.0};
  const Grid g(10, 10, p.domain);
  const auto r = dom_solve(p, g, product_quadrature(3, 3), DomainAverage{});
  CHECK(r.iterations == 1);
  CHECK(r.goal_history.size() == 1);
  CHECK(r.goal_value == evaluate(DomainAverage{}, r.field, g));
}

TEST_CASE("DOM sweep with QRDOM directions matches an epoch") {
  const auto p = builtin_benchmark(2);
  const Grid g(12, 12, p.domain);
  const std::size_t m = 64;
  RunOptions o;
  o.batch_size = m;
  o.tol = 1e9;  // stop the first epoch at its minimum of two batches
  o.min_batches_first_epoch = 1;
  FluxField first_epoch;
  std::size_t seen = 0;
  o.on_epoch = [&](const EpochRecord& e, const FluxField& mean, const FunctionalHistory&) {
    if (e.epoch == 1) {
      seen = e.samples;
      first_epoch = mean;
    }
  };
  run(p, g, DomainAverage{}, {}, o);
  REQUIRE(seen == 2 * m);
  QuadratureSet q2;
  for (std::size_t i = 1; i <= 2 * m; ++i) {
    q2.directions.push_back(quasi_random_direction(i));
    q2.weights.push_back(1.0 / (2 * m));
  }
  const auto dom2 = dom_sweep(p, g, q2, FluxField(g));
  double worst = 0.0;
  for (std::size_t k = 0; k < dom2.size(); ++k) worst = std::max(worst, std::abs(dom2[k] - first_epoch[k]));
  CHECK(worst < 1e-12);
}

TEST_CASE("DOM source iteration on a reflective problem") {
  const auto p = builtin_benchmark(2);
  const Grid g(20, 20, p.domain);
  DomOptions o;
  o.tol = 1e-3;
  const auto r = dom_solve(p, g, product_quadrature(4, 4), PointValue{0.52, 0.52}, o);
  CHECK(r.iterations > 1);
  CHECK(r.iterations < 100);
  const auto n = r.goal_history.size();
  CHECK(std::abs(r.goal_history[n - 1] - r.goal_history[n - 2]) / r.goal_history[n - 1] < 1e-3);
  o.max_iterations = 2;
  CHECK_THROWS_AS(dom_solve(p, g, product_quadrature(4, 4), PointValue{0.52, 0.52}, o), DivergenceError);
}

TEST_CASE("DOM is mirror symmetric on symmetric problems") {
  ProblemSpec p;
  p.domain = {2.0, 1.0};
  p.sigma_t = ConstantField{1.0};
  p.sigma_s = ConstantField{0.5};
  p.source = PiecewiseField{0.0, {Region{0.75, 1.25, 0.0, 0.5, 1.0}}};
  p.wall(Wall::bottom).rho = 1.0;
  const Grid g(16, 8, p.domain);
  const auto r = dom_solve(p, g, product_quadrature(3, 4), DomainAverage{});
  double worst = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) worst = std::max(worst, std::abs(r.field(i, j) - r.field(g.nx - 1 - i, j)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("total variation") {
  CHECK(total_variation(std::vector<double>{2, 2, 2}) == 0.0);
  CHECK(total_variation(std::vector<double>{1, 2, 4, 7}) == 6.0);
  CHECK(total_variation(std::vector<double>{1, 3, 0}) == 5.0);
}
