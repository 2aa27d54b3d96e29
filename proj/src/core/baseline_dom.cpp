#include "baseline_dom.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "epochs.hpp"
#include "errors.hpp"
#include "sample_pool.hpp"
#include "sweep.hpp"

namespace qrdom {

namespace {

// P_n(x) and P_{n-1}(x) by the three-term recurrence (n >= 1).
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int m = 2; m <= n; ++m) {
    const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
    p0 = p1;
    p1 = p2;
  }
  return {p1, p0};
}

}  // namespace

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw ConfigError("Gauss-Legendre order must be >= 1");
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < (n + 1) / 2; ++k) {
    double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [pn, pm] = legendre(n, x);
      const double dx = pn / (n * (x * pn - pm) / (x * x - 1.0));
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const auto [pn, pm] = legendre(n, x);
    const double dp = n * (x * pn - pm) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(k);
    const auto hi = static_cast<std::size_t>(n - 1 - k);
    nodes[lo] = -x;
    nodes[hi] = x;
    weights[lo] = w;
    weights[hi] = w;
  }
  if (n % 2 == 1) nodes[static_cast<std::size_t>(n / 2)] = 0.0;
}

QuadratureSet product_quadrature(int n_polar, int n_azimuthal) {
  if (n_polar < 1 || n_azimuthal < 1) {
    throw ConfigError("quadrature sizes must be >= 1");
  }
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre(n_polar, x, w);
  QuadratureSet q;
  for (int p = 0; p < n_polar; ++p) {
    const double xi = 0.5 * (x[static_cast<std::size_t>(p)] + 1.0);
    const double st = std::sqrt(1.0 - xi * xi);
    for (int a = 0; a < n_azimuthal; ++a) {
      const double phi = (a + 0.5) * (std::numbers::pi / 2.0) / n_azimuthal;
      q.directions.push_back({st * std::cos(phi), st * std::sin(phi), xi});
      q.weights.push_back(0.5 * w[static_cast<std::size_t>(p)] / n_azimuthal);
    }
  }
  return q;
}

namespace {

void check_quadrature(const QuadratureSet& quad) {
  if (quad.directions.empty() || quad.directions.size() != quad.weights.size()) {
    throw ConfigError("quadrature needs matching, non-empty direction and weight lists");
  }
  for (double w : quad.weights) {
    if (!(w > 0.0)) throw ConfigError("quadrature weights must be positive");
  }
}

// Weighted sum of per-direction sample fluxes, accumulated in direction order.
FluxField sweep_with(SamplePool& pool, const Grid& g, const QuadratureSet& quad, const FluxField& source) {
  CompensatedFieldSum sum(g);
  std::vector<double> scaled(g.cells());
  pool.run_range(
      source.values(), quad.directions.size(),
      [&](std::uint64_t k) { return DirectionQuadruple(quad.directions[k]); },
      [&](std::uint64_t k, std::span<const double> scalar, std::span<const double>) {
        const double w = quad.weights[k];
        for (std::size_t c = 0; c < scaled.size(); ++c) scaled[c] = w * scalar[c];
        sum.add(scaled);
      });
  FluxField out(g);
  sum.scaled(1.0, out.values());
  return out;
}

}  // namespace

FluxField dom_sweep(const ProblemSpec& p, const Grid& g, const QuadratureSet& quad,
                    const FluxField& psi_prev, const DomOptions& options) {
  check_quadrature(quad);
  const SweepMaterial material = SweepMaterial::build(p, g);
  SamplePool pool(material, SweepOptions{.fixup = options.fixup}, {}, options.workers);
  return sweep_with(pool, g, quad, freeze_source(p, g, psi_prev));
}

DomResult dom_solve(const ProblemSpec& p, const Grid& g, const QuadratureSet& quad,
                    const FunctionalSpec& goal, const DomOptions& options) {
  check_quadrature(quad);
  validate(p);
  if (!(options.tol > 0.0)) throw ConfigError("tol must be > 0");
  const SweepMaterial material = SweepMaterial::build(p, g);
  SamplePool pool(material, SweepOptions{.fixup = options.fixup}, {}, options.workers);
  const CompiledFunctional goal_fn(goal, g);
  const bool scattering = !is_identically_zero(p.sigma_s);

  DomResult result;
  FluxField psi(g);
  double previous = 0.0;
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    psi = sweep_with(pool, g, quad, freeze_source(p, g, psi));
    if (!psi.all_finite()) throw NumericalError("non-finite scalar flux in DOM iteration " + std::to_string(it));
    const double value = goal_fn(psi.values());
    result.goal_history.push_back(value);
    result.iterations = it;
    const double change = value == 0.0 ? std::abs(value - previous) : std::abs(value - previous) / std::abs(value);
    if (!scattering || (it > 1 && change < options.tol)) {
      result.field = std::move(psi);
      result.goal_value = value;
      return result;
    }
    previous = value;
  }
  throw DivergenceError("DOM source iteration did not converge within " +
                        std::to_string(options.max_iterations) + " iterations");
}

double total_variation(std::span<const double> profile) {
  double tv = 0.0;
  for (std::size_t k = 1; k < profile.size(); ++k) tv += std::abs(profile[k] - profile[k - 1]);
  return tv;
}

}  // namespace qrdom
