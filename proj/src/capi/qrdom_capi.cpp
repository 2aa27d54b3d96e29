#include "qrdom/qrdom.h"

#include <chrono>
#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <algorithm>
#include <new>
#include <string>
#include <variant>
#include <vector>

#include "baseline_dom.hpp"
#include "epochs.hpp"
#include "errors.hpp"
#include "functionals.hpp"
#include "problem.hpp"
#include "qrng.hpp"
#include "report.hpp"

struct qrdom_problem {
  qrdom::ProblemSpec spec;
};

struct qrdom_result {
  struct Qrdom {
    qrdom::RunResult run;
  };
  struct Dom {
    qrdom::Grid grid;
    qrdom::DomResult dom;
  };
  std::variant<Qrdom, Dom> data;
  std::string report;

  const qrdom::Grid& grid() const {
    if (const auto* q = std::get_if<Qrdom>(&data)) return q->run.grid;
    return std::get<Dom>(data).grid;
  }
  const qrdom::FluxField& field() const {
    if (const auto* q = std::get_if<Qrdom>(&data)) return q->run.final_field;
    return std::get<Dom>(data).dom.field;
  }
};

namespace {

thread_local std::string g_last_error;

qrdom_status fail(qrdom_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating core exceptions into status codes.
template <typename F>
qrdom_status guarded(F&& body) {
  try {
    body();
    return QRDOM_OK;
  } catch (const qrdom::ConfigError& e) {
    return fail(QRDOM_ERR_CONFIG, e.what());
  } catch (const qrdom::NumericalError& e) {
    return fail(QRDOM_ERR_NUMERICAL, e.what());
  } catch (const qrdom::DivergenceError& e) {
    return fail(QRDOM_ERR_DIVERGENCE, e.what());
  } catch (const qrdom::ContractViolation& e) {
    return fail(QRDOM_ERR_CONTRACT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(QRDOM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(QRDOM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QRDOM_ERR_INTERNAL, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qrdom::Grid make_grid(int nx, int ny, double a, double b) { return qrdom::Grid(nx, ny, qrdom::Domain{a, b}); }

#define QRDOM_REQUIRE(cond, what) \
  do {                            \
    if (!(cond)) return fail(QRDOM_ERR_ARGUMENT, what); \
  } while (0)

}  // namespace

extern "C" {

const char* qrdom_version(void) { return "0.1.0"; }

const char* qrdom_last_error(void) { return g_last_error.c_str(); }

const char* qrdom_status_name(qrdom_status status) {
  switch (status) {
    case QRDOM_OK: return "ok";
    case QRDOM_ERR_CONFIG: return "configuration error";
    case QRDOM_ERR_NUMERICAL: return "numerical error";
    case QRDOM_ERR_DIVERGENCE: return "divergence";
    case QRDOM_ERR_CONTRACT: return "contract violation";
    case QRDOM_ERR_ARGUMENT: return "invalid argument";
    case QRDOM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void qrdom_string_free(char* text) { delete[] text; }

qrdom_status qrdom_problem_benchmark(int id, qrdom_problem** out) {
  QRDOM_REQUIRE(out != nullptr, "qrdom_problem_benchmark: null output");
  return guarded([&] { *out = new qrdom_problem{qrdom::builtin_benchmark(id)}; });
}

qrdom_status qrdom_problem_parse(const char* json_text, qrdom_problem** out) {
  QRDOM_REQUIRE(json_text != nullptr && out != nullptr, "qrdom_problem_parse: null argument");
  return guarded([&] { *out = new qrdom_problem{qrdom::parse_config(json_text)}; });
}

qrdom_status qrdom_problem_to_json(const qrdom_problem* problem, char** out) {
  QRDOM_REQUIRE(problem != nullptr && out != nullptr, "qrdom_problem_to_json: null argument");
  return guarded([&] { *out = copy_string(qrdom::serialize(problem->spec)); });
}

qrdom_status qrdom_problem_domain(const qrdom_problem* problem, double* a, double* b) {
  QRDOM_REQUIRE(problem != nullptr && a != nullptr && b != nullptr, "qrdom_problem_domain: null argument");
  *a = problem->spec.domain.a;
  *b = problem->spec.domain.b;
  return QRDOM_OK;
}

void qrdom_problem_free(qrdom_problem* problem) { delete problem; }

qrdom_status qrdom_reverse_halton(uint64_t index, double out[2]) {
  QRDOM_REQUIRE(out != nullptr, "qrdom_reverse_halton: null output");
  return guarded([&] {
    const auto p = qrdom::reverse_halton(index);
    out[0] = p.u1;
    out[1] = p.u2;
  });
}

qrdom_status qrdom_direction(uint64_t index, double out[3]) {
  QRDOM_REQUIRE(out != nullptr, "qrdom_direction: null output");
  return guarded([&] {
    const auto d = qrdom::quasi_random_direction(index);
    out[0] = d.mu;
    out[1] = d.eta;
    out[2] = d.xi;
  });
}

qrdom_status qrdom_star_discrepancy(size_t n, double* out) {
  QRDOM_REQUIRE(out != nullptr, "qrdom_star_discrepancy: null output");
  return guarded([&] {
    std::vector<qrdom::UnitSquarePoint> pts;
    pts.reserve(n);
    for (size_t i = 1; i <= n; ++i) pts.push_back(qrdom::reverse_halton(i));
    *out = qrdom::star_discrepancy(pts, n);
  });
}

qrdom_status qrdom_functional_evaluate(const char* functional, const double* field, int nx, int ny,
                                       double a, double b, double* out) {
  QRDOM_REQUIRE(functional != nullptr && field != nullptr && out != nullptr,
                "qrdom_functional_evaluate: null argument");
  return guarded([&] {
    const auto g = make_grid(nx, ny, a, b);
    const qrdom::CompiledFunctional f(qrdom::parse_functional(functional), g);
    *out = f(std::span<const double>(field, g.cells()));
  });
}

qrdom_status qrdom_field_wall_profile(const double* field, int nx, int ny, double a, double b,
                                      const char* wall, double* x, double* y, double* value,
                                      size_t capacity, size_t* count) {
  QRDOM_REQUIRE(field != nullptr && wall != nullptr && count != nullptr,
                "qrdom_field_wall_profile: null argument");
  return guarded([&] {
    const auto g = make_grid(nx, ny, a, b);
    qrdom::FluxField f(g);
    std::copy(field, field + g.cells(), f.values().begin());
    const auto p = qrdom::wall_profile(f, g, qrdom::parse_wall(wall));
    *count = p.value.size();
    if (capacity < p.value.size() || x == nullptr || y == nullptr || value == nullptr) {
      throw qrdom::ContractViolation("qrdom_field_wall_profile: output buffers hold fewer than " +
                                     std::to_string(p.value.size()) + " entries");
    }
    std::copy(p.x.begin(), p.x.end(), x);
    std::copy(p.y.begin(), p.y.end(), y);
    std::copy(p.value.begin(), p.value.end(), value);
  });
}

void qrdom_run_options_default(qrdom_run_options* options) {
  if (options == nullptr) return;
  const qrdom::RunOptions d;
  *options = qrdom_run_options{};
  options->tol = d.tol;
  options->batch_size = d.batch_size;
  options->max_samples_per_epoch = d.max_samples_per_epoch;
  options->min_batches_first_epoch = d.min_batches_first_epoch;
  options->max_epochs = d.max_epochs;
  options->fixup = d.fixup ? 1 : 0;
  options->initial_flux = d.initial_flux;
  options->workers = d.workers;
  options->seed_index = d.seed_index;
}

void qrdom_dom_options_default(qrdom_dom_options* options) {
  if (options == nullptr) return;
  const qrdom::DomOptions d;
  options->tol = d.tol;
  options->max_iterations = d.max_iterations;
  options->fixup = d.fixup ? 1 : 0;
  options->workers = d.workers;
  options->n_polar = 22;
  options->n_azimuthal = 22;
}

qrdom_status qrdom_run(const qrdom_problem* problem, int nx, int ny, const char* goal,
                       const char* const* trials, size_t n_trials, const qrdom_run_options* options,
                       qrdom_result** out) {
  QRDOM_REQUIRE(problem != nullptr && goal != nullptr && out != nullptr, "qrdom_run: null argument");
  QRDOM_REQUIRE(n_trials == 0 || trials != nullptr, "qrdom_run: null trial list");
  return guarded([&] {
    qrdom_run_options c;
    if (options != nullptr) {
      c = *options;
    } else {
      qrdom_run_options_default(&c);
    }
    qrdom::RunOptions o;
    o.tol = c.tol;
    o.batch_size = c.batch_size;
    o.max_samples_per_epoch = c.max_samples_per_epoch;
    o.min_batches_first_epoch = c.min_batches_first_epoch;
    o.max_epochs = c.max_epochs;
    o.fixup = c.fixup != 0;
    o.initial_flux = c.initial_flux;
    o.workers = c.workers;
    o.seed_index = c.seed_index;
    if (c.on_epoch != nullptr) {
      o.on_epoch = [cb = c.on_epoch, user = c.user](const qrdom::EpochRecord& e, const qrdom::FluxField&,
                                                     const qrdom::FunctionalHistory&) {
        qrdom_epoch_record r{};
        r.epoch = e.epoch;
        r.first_index = e.first_index;
        r.samples = e.samples;
        r.batches = e.batches;
        r.gamma0 = e.fit.gamma0;
        r.gamma1 = e.fit.gamma1;
        r.gamma2 = e.fit.gamma2;
        r.residual_norm = e.fit.residual_norm;
        r.batch_change = e.batch_change;
        r.epoch_change = e.epoch_change.value_or(std::numeric_limits<double>::quiet_NaN());
        cb(&r, user);
      };
    }

    const auto& spec = problem->spec;
    const qrdom::Grid g(nx, ny, spec.domain);
    const auto goal_spec = qrdom::parse_functional(goal);
    std::vector<qrdom::FunctionalSpec> trial_specs;
    for (size_t t = 0; t < n_trials; ++t) {
      if (trials[t] == nullptr) throw qrdom::ConfigError("null trial functional");
      trial_specs.push_back(qrdom::parse_functional(trials[t]));
    }

    const auto start = std::chrono::steady_clock::now();
    auto result = std::make_unique<qrdom_result>();
    auto run = qrdom::run(spec, g, goal_spec, trial_specs, o);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result->report = qrdom::run_report_json(spec, o, run, seconds);
    result->data = qrdom_result::Qrdom{std::move(run)};
    *out = result.release();
  });
}

qrdom_status qrdom_dom(const qrdom_problem* problem, int nx, int ny, const char* goal,
                       const qrdom_dom_options* options, qrdom_result** out) {
  QRDOM_REQUIRE(problem != nullptr && goal != nullptr && out != nullptr, "qrdom_dom: null argument");
  return guarded([&] {
    qrdom_dom_options c;
    if (options != nullptr) {
      c = *options;
    } else {
      qrdom_dom_options_default(&c);
    }
    qrdom::DomOptions o;
    o.tol = c.tol;
    o.max_iterations = c.max_iterations;
    o.fixup = c.fixup != 0;
    o.workers = c.workers;

    const auto& spec = problem->spec;
    const qrdom::Grid g(nx, ny, spec.domain);
    const auto goal_spec = qrdom::parse_functional(goal);
    const auto quad = qrdom::product_quadrature(c.n_polar, c.n_azimuthal);

    const auto start = std::chrono::steady_clock::now();
    auto dom = qrdom::dom_solve(spec, g, quad, goal_spec, o);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    auto result = std::make_unique<qrdom_result>();
    result->report = qrdom::dom_report_json(spec, g, goal_spec, c.n_polar, c.n_azimuthal, o, dom, seconds);
    result->data = qrdom_result::Dom{g, std::move(dom)};
    *out = result.release();
  });
}

void qrdom_result_free(qrdom_result* result) { delete result; }

qrdom_status qrdom_result_grid(const qrdom_result* result, int* nx, int* ny, double* a, double* b) {
  QRDOM_REQUIRE(result != nullptr && nx != nullptr && ny != nullptr && a != nullptr && b != nullptr,
                "qrdom_result_grid: null argument");
  const auto& g = result->grid();
  *nx = g.nx;
  *ny = g.ny;
  *a = g.a;
  *b = g.b;
  return QRDOM_OK;
}

qrdom_status qrdom_result_field(const qrdom_result* result, double* buffer, size_t capacity) {
  QRDOM_REQUIRE(result != nullptr && buffer != nullptr, "qrdom_result_field: null argument");
  const auto values = result->field().values();
  QRDOM_REQUIRE(capacity >= values.size(), "qrdom_result_field: buffer smaller than nx * ny");
  std::copy(values.begin(), values.end(), buffer);
  return QRDOM_OK;
}

qrdom_status qrdom_result_goal(const qrdom_result* result, double* out) {
  QRDOM_REQUIRE(result != nullptr && out != nullptr, "qrdom_result_goal: null argument");
  if (const auto* q = std::get_if<qrdom_result::Qrdom>(&result->data)) {
    *out = q->run.goal_estimate;
  } else {
    *out = std::get<qrdom_result::Dom>(result->data).dom.goal_value;
  }
  return QRDOM_OK;
}

qrdom_status qrdom_result_iterations(const qrdom_result* result, size_t* out) {
  QRDOM_REQUIRE(result != nullptr && out != nullptr, "qrdom_result_iterations: null argument");
  if (const auto* q = std::get_if<qrdom_result::Qrdom>(&result->data)) {
    *out = q->run.epochs_run();
  } else {
    *out = std::get<qrdom_result::Dom>(result->data).dom.iterations;
  }
  return QRDOM_OK;
}

qrdom_status qrdom_result_epoch(const qrdom_result* result, size_t epoch, qrdom_epoch_record* out) {
  QRDOM_REQUIRE(result != nullptr && out != nullptr, "qrdom_result_epoch: null argument");
  const auto* q = std::get_if<qrdom_result::Qrdom>(&result->data);
  if (q == nullptr) return fail(QRDOM_ERR_CONTRACT, "qrdom_result_epoch: not a QRDOM result");
  if (epoch < 1 || epoch > q->run.epochs.size()) {
    return fail(QRDOM_ERR_CONTRACT, "qrdom_result_epoch: epoch out of range");
  }
  const auto& e = q->run.epochs[epoch - 1];
  *out = qrdom_epoch_record{};
  out->epoch = e.epoch;
  out->first_index = e.first_index;
  out->samples = e.samples;
  out->batches = e.batches;
  out->gamma0 = e.fit.gamma0;
  out->gamma1 = e.fit.gamma1;
  out->gamma2 = e.fit.gamma2;
  out->residual_norm = e.fit.residual_norm;
  out->batch_change = e.batch_change;
  out->epoch_change = e.epoch_change.value_or(std::numeric_limits<double>::quiet_NaN());
  return QRDOM_OK;
}

qrdom_status qrdom_result_trial(const qrdom_result* result, const char* trial, double* out) {
  QRDOM_REQUIRE(result != nullptr && trial != nullptr && out != nullptr, "qrdom_result_trial: null argument");
  const auto* q = std::get_if<qrdom_result::Qrdom>(&result->data);
  if (q == nullptr) return fail(QRDOM_ERR_CONTRACT, "qrdom_result_trial: not a QRDOM result");
  return guarded([&] {
    const std::vector<qrdom::FunctionalSpec> wanted{qrdom::parse_functional(trial)};
    *out = qrdom::report_trials(q->run, wanted).begin()->second;
  });
}

qrdom_status qrdom_result_report_json(const qrdom_result* result, char** out) {
  QRDOM_REQUIRE(result != nullptr && out != nullptr, "qrdom_result_report_json: null argument");
  return guarded([&] { *out = copy_string(result->report); });
}

}  // extern "C"
