// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero when any selected criterion fails.
//
//   qrdom_acceptance [--workers N] [criterion ...]

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "baseline_dom.hpp"
#include "epochs.hpp"
#include "errors.hpp"
#include "extrapolate.hpp"
#include "functionals.hpp"
#include "qrng.hpp"
#include "report.hpp"
#include "sweep.hpp"

using namespace qrdom;

namespace {

unsigned g_workers = 1;

// Collects the failed checks of one criterion.
class Verdict {
 public:
  void check(bool ok, const std::string& what) {
    std::printf("    %s %s\n", ok ? "ok  " : "FAIL", what.c_str());
    std::fflush(stdout);
    if (!ok) failures_.push_back(what);
  }
  bool passed() const { return failures_.empty(); }

 private:
  std::vector<std::string> failures_;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double rel_err(double value, double ref) { return std::abs(value - ref) / std::abs(ref); }

struct Solve {
  RunResult result;
  std::vector<double> trials;  // extrapolated, parallel to the requested trials
};

Solve solve(int benchmark, int n, const std::string& goal, const std::vector<std::string>& trials,
            double tol, std::uint64_t batch) {
  const auto p = builtin_benchmark(benchmark);
  const Grid g(n, n, p.domain);
  std::vector<FunctionalSpec> specs;
  for (const auto& t : trials) specs.push_back(parse_functional(t));
  RunOptions o;
  o.tol = tol;
  o.batch_size = batch;
  o.workers = g_workers;
  const auto t0 = std::chrono::steady_clock::now();
  Solve s{run(p, g, parse_functional(goal), specs, o), {}};
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (const auto& f : s.result.trial_fits) s.trials.push_back(f.gamma0);
  std::uint64_t total = 0;
  for (const auto& e : s.result.epochs) total += e.samples;
  std::printf("  benchmark %d %dx%d tol %g batch %llu: %zu epochs, %llu samples, %.1f s\n", benchmark, n,
              n, tol, static_cast<unsigned long long>(batch), s.result.epochs_run(),
              static_cast<unsigned long long>(total), secs);
  std::printf("    goal %s = %.8g\n", goal.c_str(), s.result.goal_estimate);
  for (std::size_t t = 0; t < trials.size(); ++t) {
    std::printf("    %s = %.8g\n", trials[t].c_str(), s.trials[t]);
  }
  std::fflush(stdout);
  return s;
}

// Benchmark references ------------------------------------------------------

bool benchmark1(Verdict& v) {
  const std::vector<std::string> points = {"point:0,2.5", "point:1.25,2.5", "point:2.5,2.5"};
  const std::array<double, 4> ref = {1.1623e-2, 8.9066e-3, 1.3427e-2, 7.5812e-3};
  const std::array<double, 4> band = {0.02, 0.02, 0.02, 0.02};
  std::vector<double> worst;
  for (int n : {64, 128, 256}) {
    const auto s = solve(1, n, "line:top", points, 1e-5, 1000);
    // The line integral is compared as a wall mean.
    std::array<double, 4> values = {s.result.goal_estimate / 2.5, s.trials[0], s.trials[1], s.trials[2]};
    double w = 0.0;
    for (int k = 0; k < 4; ++k) w = std::max(w, rel_err(values[k], ref[k]));
    worst.push_back(w);
    if (n == 256) {
      const char* names[] = {"F1/a", "psi(0,2.5)", "psi(1.25,2.5)", "psi(2.5,2.5)"};
      for (int k = 0; k < 4; ++k) {
        v.check(rel_err(values[k], ref[k]) <= band[k],
                fmt("%s = %.6g vs %.6g (rel %.3g <= %g)", names[k], values[k], ref[k],
                    rel_err(values[k], ref[k]), band[k]));
      }
    }
  }
  v.check(worst[0] > worst[1] && worst[1] > worst[2],
          fmt("max rel error 64/128/256: %.3g > %.3g > %.3g", worst[0], worst[1], worst[2]));
  return v.passed();
}

bool benchmark2(Verdict& v) {
  const std::vector<std::string> points = {"point:0.5,0.5", "point:0.7,0.7", "point:0.98,0.98"};
  const std::array<double, 3> ref = {0.687407, 0.344820, 0.1326418};
  const std::array<double, 3> band = {0.02, 0.02, 0.03};
  const auto s = solve(2, 200, "point:0.52,0.52", points, 1e-5, 1000);
  for (int k = 0; k < 3; ++k) {
    v.check(rel_err(s.trials[k], ref[k]) <= band[k],
            fmt("%s = %.6g vs %.6g (rel %.3g <= %g)", points[k].c_str(), s.trials[k], ref[k],
                rel_err(s.trials[k], ref[k]), band[k]));
  }
  return v.passed();
}

bool benchmark3(Verdict& v) {
  const std::vector<std::string> regions = {"region:0,10,0,10", "region:10,30,0,10",
                                            "region:0,10,10,30", "region:10,30,10,30"};
  const std::array<double, 4> ref = {1.8360, 1.0678e-2, 1.0678e-2, 1.1258e-4};
  const std::array<double, 4> band = {0.02, 0.05, 0.05, 0.10};
  std::vector<std::vector<double>> errors;
  for (int n : {96, 192, 384}) {
    const auto s = solve(3, n, "domain-average", regions, 1e-5, 1000);
    std::vector<double> e;
    for (int k = 0; k < 4; ++k) e.push_back(rel_err(s.trials[k], ref[k]));
    errors.push_back(e);
    if (n == 384) {
      for (int k = 0; k < 4; ++k) {
        v.check(e[k] <= band[k], fmt("%s = %.6g vs %.6g (rel %.3g <= %g)", regions[k].c_str(),
                                     s.trials[k], ref[k], e[k], band[k]));
      }
    }
  }
  for (int k = 0; k < 4; ++k) {
    v.check(errors[1][k] < errors[0][k] && errors[2][k] < errors[1][k],
            fmt("%s rel error 96/192/384: %.3g > %.3g > %.3g", regions[k].c_str(), errors[0][k],
                errors[1][k], errors[2][k]));
  }
  return v.passed();
}

// Epoch economics and ray effects share the tol 1e-3 runs.
constexpr std::uint64_t kEconomyBatch = 100;

std::map<int, Solve>& economy_runs() {
  static std::map<int, Solve> runs;
  if (runs.empty()) {
    runs.emplace(1, solve(1, 128, "line:top", {}, 1e-3, kEconomyBatch));
    runs.emplace(2, solve(2, 100, "point:0.52,0.52", {}, 1e-3, kEconomyBatch));
  }
  return runs;
}

bool epoch_economics(Verdict& v) {
  struct Band {
    int benchmark;
    std::size_t min_epochs, max_epochs;
    double min_mean, max_mean;
  };
  for (const Band& b : {Band{1, 8, 15, 200.0, 900.0}, Band{2, 8, 16, 100.0, 600.0}}) {
    const auto& r = economy_runs().at(b.benchmark).result;
    const std::size_t epochs = r.epochs_run();
    const double mean = r.mean_samples_per_epoch();
    v.check(epochs >= b.min_epochs && epochs <= b.max_epochs,
            fmt("benchmark %d epochs %zu in [%zu, %zu]", b.benchmark, epochs, b.min_epochs, b.max_epochs));
    v.check(mean >= b.min_mean && mean <= b.max_mean,
            fmt("benchmark %d mean samples/epoch %.1f in [%g, %g]", b.benchmark, mean, b.min_mean, b.max_mean));
  }
  return v.passed();
}

bool ray_effects(Verdict& v) {
  const auto quad = product_quadrature(22, 22);
  struct Case {
    int benchmark;
    int n;
    const char* goal;
    Wall wall;
  };
  for (const Case& c : {Case{1, 128, "line:top", Wall::top}, Case{2, 100, "point:0.52,0.52", Wall::right}}) {
    const auto& qr = economy_runs().at(c.benchmark).result;
    const auto p = builtin_benchmark(c.benchmark);
    const Grid g(c.n, c.n, p.domain);
    DomOptions o;
    o.tol = 1e-3;
    o.workers = g_workers;
    const auto dom = dom_solve(p, g, quad, parse_functional(c.goal), o);
    const double tv_qr = total_variation(wall_profile(qr.final_field, g, c.wall).value);
    const double tv_dom = total_variation(wall_profile(dom.field, g, c.wall).value);
    v.check(tv_qr < tv_dom, fmt("benchmark %d %s wall TV: QRDOM %.6g (%.0f dirs/epoch) < DOM %.6g (%zu dirs)",
                                c.benchmark, std::string(wall_name(c.wall)).c_str(), tv_qr,
                                qr.mean_samples_per_epoch(), tv_dom, quad.directions.size()));
  }
  return v.passed();
}

// Unit-level suites ---------------------------------------------------------

double phi(double n, double g0, double g1, double g2) {
  const double l = std::log(n);
  return g0 + g1 * l / n + g2 * l * l / n;
}

FunctionalHistory history_of(const std::vector<double>& values) {
  FunctionalHistory h;
  for (double x : values) h.push(x);
  return h;
}

bool extrapolation_suite(Verdict& v) {
  for (double c : {0.0, 1.0, -3.25, 1.1623e-2, 7.0e5}) {
    const auto fit = fit_phi(history_of(std::vector<double>(500, c)));
    v.check(std::abs(fit.gamma0 - c) <= 1e-12 * std::max(1.0, std::abs(c)),
            fmt("constant history %g: gamma0 = %.17g", c, fit.gamma0));
  }
  const std::vector<std::array<double, 3>> cases = {{1.0, 0.5, -0.25}, {0.3, -2.0, 1.5}, {-4.0, 10.0, 3.0}};
  for (const auto& [g0, g1, g2] : cases) {
    for (std::size_t count : {3u, 50u, 2000u}) {
      std::vector<double> samples;
      double previous = 0.0;
      for (std::size_t n = 1; n <= count; ++n) {
        const double total = n * phi(static_cast<double>(n), g0, g1, g2);
        samples.push_back(total - previous);
        previous = total;
      }
      const auto fit = fit_phi(history_of(samples));
      const double err = std::max({std::abs(fit.gamma0 - g0), std::abs(fit.gamma1 - g1), std::abs(fit.gamma2 - g2)});
      v.check(err < 1e-10 * std::max({1.0, std::abs(g0), std::abs(g1), std::abs(g2)}),
              fmt("in-span (%g, %g, %g) over %zu samples: coefficient error %.3g", g0, g1, g2, count, err));
    }
  }
  for (std::uint64_t n : {1u, 7u, 8u, 100u}) {
    const double l = std::log(static_cast<double>(n));
    const double expected = n < 8 ? 2.0 : static_cast<double>(n * n) / (l * l * l * l);
    v.check(std::abs(fit_weight(n) - expected) <= 1e-15 * expected,
            fmt("weight(%llu) = %.17g", static_cast<unsigned long long>(n), fit_weight(n)));
  }
  std::mt19937_64 rng(42);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> raw;
  for (int k = 1; k <= 3000; ++k) raw.push_back(0.3 + 0.5 / std::sqrt(k) * noise(rng));
  const auto base = fit_phi(history_of(raw));
  double shift_err = 0.0;
  double scale_err = 0.0;
  for (double c : {-2.0, 0.125, 40.0}) {
    std::vector<double> shifted = raw;
    for (double& x : shifted) x += c;
    const auto f = fit_phi(history_of(shifted));
    shift_err = std::max({shift_err, std::abs(f.gamma0 - (base.gamma0 + c)), std::abs(f.gamma1 - base.gamma1),
                          std::abs(f.gamma2 - base.gamma2)});
  }
  for (double s : {-1.5, 1e-3, 250.0}) {
    std::vector<double> scaled = raw;
    for (double& x : scaled) x *= s;
    const auto f = fit_phi(history_of(scaled));
    const double e = std::max({std::abs(f.gamma0 - s * base.gamma0), std::abs(f.gamma1 - s * base.gamma1),
                               std::abs(f.gamma2 - s * base.gamma2)});
    scale_err = std::max(scale_err, e / std::max(1.0, std::abs(s)));
  }
  v.check(shift_err < 1e-10, fmt("shift equivariance error %.3g", shift_err));
  v.check(scale_err < 1e-10, fmt("scale equivariance error %.3g", scale_err));
  return v.passed();
}

double brute_force_discrepancy(const std::vector<UnitSquarePoint>& pts) {
  std::vector<double> xs{1.0};
  std::vector<double> ys{1.0};
  for (const auto& p : pts) {
    xs.push_back(p.u1);
    ys.push_back(p.u2);
  }
  const double n = static_cast<double>(pts.size());
  double worst = 0.0;
  for (double x : xs) {
    for (double y : ys) {
      int open = 0;
      int closed = 0;
      for (const auto& p : pts) {
        if (p.u1 < x && p.u2 < y) ++open;
        if (p.u1 <= x && p.u2 <= y) ++closed;
      }
      worst = std::max(worst, x * y - open / n);
      worst = std::max(worst, closed / n - x * y);
    }
  }
  return worst;
}

bool qmc_suite(Verdict& v) {
  std::set<std::array<double, 3>> seen;
  double norm_err = 0.0;
  bool interior = true;
  for (std::uint64_t i = 1; i <= 100000; ++i) {
    const auto d = quasi_random_direction(i);
    norm_err = std::max(norm_err, std::abs(std::sqrt(d.mu * d.mu + d.eta * d.eta + d.xi * d.xi) - 1.0));
    interior = interior && d.mu > 0.0 && d.eta > 0.0 && d.xi > 0.0 && d.mu < 1.0 && d.eta < 1.0 && d.xi < 1.0;
    seen.insert({d.mu, d.eta, d.xi});
  }
  v.check(norm_err <= 1e-12, fmt("unit norm error over 1e5 directions %.3g", norm_err));
  v.check(interior, "directions strictly inside the octant");
  v.check(seen.size() == 100000, fmt("%zu distinct directions", seen.size()));

  // Exact rationals from tests/oracles/star_discrepancy.py.
  const std::map<std::uint64_t, std::pair<double, double>> rh = {
      {1, {0.5, 2.0 / 3.0}}, {2, {0.25, 1.0 / 3.0}}, {3, {0.75, 2.0 / 9.0}}, {5, {0.625, 5.0 / 9.0}}};
  for (const auto& [i, expected] : rh) {
    const auto p = reverse_halton(i);
    v.check(p.u1 == expected.first && p.u2 == expected.second,
            fmt("rh(%llu) = (%.17g, %.17g)", static_cast<unsigned long long>(i), p.u1, p.u2));
  }

  std::vector<UnitSquarePoint> pts;
  for (std::uint64_t i = 1; i <= 4096; ++i) pts.push_back(reverse_halton(i));
  const std::vector<std::pair<std::size_t, double>> frozen = {{64, 0.05150462962962965},
                                                              {256, 0.015866126543209957},
                                                              {1024, 0.005950467249657088},
                                                              {4096, 0.0018344594835962846}};
  double previous = 1.0;
  for (const auto& [n, expected] : frozen) {
    const double d = star_discrepancy(pts, n);
    v.check(std::abs(d - expected) <= 1e-14 && d < previous,
            fmt("D*(%zu) = %.17g, oracle %.17g", n, d, expected));
    previous = d;
    if (n <= 1024) {
      const double brute = brute_force_discrepancy({pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(n)});
      v.check(d == brute, fmt("D*(%zu) equals brute force %.17g", n, brute));
    }
  }
  return v.passed();
}

ProblemSpec uniform_problem(double a, double b, double sigma_t, double q) {
  ProblemSpec p;
  p.domain = {a, b};
  p.sigma_t = ConstantField{sigma_t};
  p.sigma_s = ConstantField{0.0};
  p.source = ConstantField{q};
  return p;
}

double max_abs(const FluxField& f) {
  double m = 0.0;
  for (double x : f.values()) m = std::max(m, std::abs(x));
  return m;
}

bool sweep_suite(Verdict& v) {
  {
    const double c = 1.7;
    const double q = 0.9;
    auto p = uniform_problem(2.0, 1.0, c, q);
    for (Wall w : kWalls) p.wall(w) = {0.0, q / c};
    p.wall(Wall::left) = {1.0, 0.0};
    p.wall(Wall::right) = {0.5, 0.5 * q / c};
    const Grid g(11, 6, p.domain);
    double worst = 0.0;
    for (std::uint64_t i : {1u, 17u, 400u}) {
      const auto sol = solve_quadruple(p, g, DirectionQuadruple(quasi_random_direction(i)), FluxField(g, q));
      for (int k = 0; k < kOrdinates; ++k) {
        for (double x : sol.psi[k].values()) worst = std::max(worst, std::abs(x - q / c));
      }
    }
    v.check(worst <= 1e-13, fmt("constant solution error %.3g", worst));
  }
  {
    auto p = uniform_problem(1.0, 1.0, 1.0, 0.0);
    p.wall(Wall::left).rho = 0.5;
    const Grid g(8, 8, p.domain);
    const auto sol = solve_quadruple(p, g, DirectionQuadruple(quasi_random_direction(3)), FluxField(g));
    double m = 0.0;
    for (int k = 0; k < kOrdinates; ++k) m = std::max(m, max_abs(sol.psi[k]));
    v.check(m == 0.0, "zero input gives zero output");
  }
  {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ProblemSpec p;
    p.domain = {2.0, 1.0};
    p.sigma_t = PiecewiseField{1.0, {Region{0.6, 1.4, 0.0, 0.5, 3.0}}};
    p.sigma_s = ConstantField{0.0};
    p.wall(Wall::left) = {0.4, 0.2};
    p.wall(Wall::right) = {0.4, 0.2};
    p.wall(Wall::bottom) = {1.0, 0.0};
    p.wall(Wall::top) = {0.0, 1.0};
    const Grid g(20, 12, p.domain);
    FluxField source(g);
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i < g.nx / 2; ++i) source(i, j) = source(g.nx - 1 - i, j) = u(rng);
    }
    double worst = 0.0;
    for (std::uint64_t idx : {1u, 9u, 123u}) {
      const auto s = sample_scalar_flux(solve_quadruple(p, g, DirectionQuadruple(quasi_random_direction(idx)), source));
      for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) worst = std::max(worst, std::abs(s(i, j) - s(g.nx - 1 - i, j)));
      }
    }
    v.check(worst <= 1e-12, fmt("mirror symmetry error %.3g", worst));
  }
  {
    // One cell, zero inflow except a lit bottom wall:
    // psi = (s + 2 mu in_x / h + 2 eta in_y / h) / (sigma_t + 2 mu / h + 2 eta / h).
    const double mu = 1.0 / std::sqrt(3.0);
    auto p = uniform_problem(1.0, 1.0, 1.0, 0.0);
    p.wall(Wall::bottom).qb = 1.0;
    const Grid g(1, 1, p.domain);
    const double s = 0.8;
    const double dark = s / (1.0 + 4.0 * mu);
    const double lit = (s + 2.0 * mu) / (1.0 + 4.0 * mu);
    const auto sol = solve_quadruple(p, g, DirectionQuadruple(mu, mu, mu), FluxField(g, s));
    const double err = std::max({std::abs(sol.psi[0](0, 0) - lit), std::abs(sol.psi[1](0, 0) - lit),
                                 std::abs(sol.psi[2](0, 0) - dark), std::abs(sol.psi[3](0, 0) - dark)});
    v.check(err <= 1e-14, fmt("one-cell closed form error %.3g", err));
  }
  {
    auto p = uniform_problem(1.0, 1.0, 1.0, 1.0);
    p.wall(Wall::left).rho = 0.9;
    p.wall(Wall::right).rho = 0.9;
    p.wall(Wall::bottom).qb = 0.5;
    const Grid g(24, 24, p.domain);
    const auto sol = solve_quadruple(p, g, DirectionQuadruple(quasi_random_direction(4)), FluxField(g, 1.0));
    const double last = sol.closure_residuals.empty() ? INFINITY : sol.closure_residuals.back();
    v.check(last < 1e-12, fmt("rho 0.9 closure residual %.3g after %d passes", last, sol.closure_iterations));
  }
  return v.passed();
}

bool linearity(Verdict& v) {
  const auto p = builtin_benchmark(2);
  const Grid g(50, 50, p.domain);
  const auto goal = parse_functional("point:0.52,0.52");
  RunOptions o;
  o.tol = 1e-3;
  o.batch_size = kEconomyBatch;
  o.workers = g_workers;
  double worst = 0.0;
  std::size_t epochs = 0;
  o.on_epoch = [&](const EpochRecord&, const FluxField& mean, const FunctionalHistory& h) {
    worst = std::max(worst, std::abs(evaluate(goal, mean, g) - h.mean()));
    ++epochs;
  };
  const auto r = run(p, g, goal, {}, o);
  v.check(epochs == r.epochs_run() && epochs > 1, fmt("%zu epochs observed", epochs));
  v.check(worst <= 1e-12, fmt("max |F(mean field) - mean F| = %.3g", worst));
  return v.passed();
}

bool determinism(Verdict& v) {
  const auto p = builtin_benchmark(2);
  const Grid g(50, 50, p.domain);
  const auto goal = parse_functional("point:0.52,0.52");
  const std::vector<FunctionalSpec> trials = {parse_functional("point:0.98,0.98"), DomainAverage{}};
  auto once = [&](unsigned workers, nlohmann::json& report) {
    RunOptions o;
    o.tol = 1e-3;
    o.batch_size = kEconomyBatch;
    o.workers = workers;
    o.keep_histories = true;
    auto r = run(p, g, goal, trials, o);
    report = nlohmann::json::parse(run_report_json(p, o, r, 0.0));
    report.erase("timing");
    report["options"].erase("workers");
    return r;
  };
  nlohmann::json report1;
  nlohmann::json report8;
  const auto r1 = once(1, report1);
  const auto r8 = once(8, report8);
  v.check(r1.samples_per_epoch() == r8.samples_per_epoch(), "per-epoch sample counts match");
  bool histories = r1.epochs.size() == r8.epochs.size();
  for (std::size_t e = 0; histories && e < r1.epochs.size(); ++e) {
    histories = r1.epochs[e].goal_history == r8.epochs[e].goal_history;
  }
  v.check(histories, "per-sample goal histories are bitwise equal");
  v.check(r1.final_field == r8.final_field, "final fields are bitwise equal");
  v.check(report1 == report8, "final reports match");
  return v.passed();
}

struct Criterion {
  int id;
  const char* name;
  std::function<bool(Verdict&)> body;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qrdom acceptance checks"};
  std::vector<int> selected;
  g_workers = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--workers", g_workers, "worker threads for solver runs")->check(CLI::PositiveNumber);
  app.add_option("criteria", selected, "criteria to run (default all)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "benchmark 1 top wall at 256x256", benchmark1},
      {2, "benchmark 2 point values at 200x200", benchmark2},
      {3, "benchmark 3 region averages at 384x384", benchmark3},
      {4, "epoch economics at tol 1e-3", epoch_economics},
      {5, "wall profile total variation against DOM", ray_effects},
      {6, "extrapolation suite", extrapolation_suite},
      {7, "quasi-random generator suite", qmc_suite},
      {8, "sweep kernel suite", sweep_suite},
      {9, "epoch mean linearity on benchmark 2", linearity},
      {10, "determinism across worker counts", determinism},
  };

  std::vector<std::pair<const Criterion*, bool>> outcomes;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    std::printf("[%d] %s\n", c.id, c.name);
    std::fflush(stdout);
    Verdict v;
    try {
      c.body(v);
    } catch (const std::exception& e) {
      v.check(false, std::string("exception: ") + e.what());
    }
    outcomes.emplace_back(&c, v.passed());
  }

  std::printf("\n");
  int failed = 0;
  for (const auto& [c, ok] : outcomes) {
    std::printf("%s %d %s\n", ok ? "PASS" : "FAIL", c->id, c->name);
    failed += ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
