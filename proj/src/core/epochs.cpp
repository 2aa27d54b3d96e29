#include "epochs.hpp"

#include <cmath>
#include <numeric>

#include "errors.hpp"
#include "qrng.hpp"
#include "sample_pool.hpp"
#include "sweep.hpp"

namespace qrdom {

std::vector<std::uint64_t> RunResult::samples_per_epoch() const {
  std::vector<std::uint64_t> out;
  for (const auto& e : epochs) out.push_back(e.samples);
  return out;
}

double RunResult::mean_samples_per_epoch() const {
  if (epochs.empty()) return 0.0;
  const auto m = samples_per_epoch();
  return static_cast<double>(std::accumulate(m.begin(), m.end(), std::uint64_t{0})) /
         static_cast<double>(m.size());
}

std::map<std::string, double> RunResult::trial_estimates() const {
  std::map<std::string, double> out;
  for (std::size_t t = 0; t < trials.size(); ++t) out[to_string(trials[t])] = trial_fits[t].gamma0;
  return out;
}

FluxField freeze_source(const ProblemSpec& p, const Grid& g, const FluxField& psi_prev) {
  if (!psi_prev.matches(g)) throw ContractViolation("freeze_source: field does not match the grid");
  if (!psi_prev.all_finite()) throw ContractViolation("freeze_source: non-finite scalar flux");
  FluxField out(g);
  const Domain d{g.a, g.b};
  for (int j = 0; j < g.ny; ++j) {
    const double y = g.y_center(j);
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.x_center(i);
      out(i, j) = evaluate_field(p.sigma_s, d, x, y) * psi_prev(i, j) + evaluate_field(p.source, d, x, y);
    }
  }
  return out;
}

namespace {

void check_options(const RunOptions& o) {
  if (!(o.tol > 0.0)) throw ConfigError("tol must be > 0");
  if (o.batch_size < 1) throw ConfigError("batch size must be >= 1");
  if (o.max_samples_per_epoch < 3) throw ConfigError("max samples per epoch must be >= 3");
  if (o.max_epochs < 1) throw ConfigError("max epochs must be >= 1");
  if (o.seed_index < 1) throw ConfigError("seed index must be >= 1");
  if (!(std::isfinite(o.initial_flux) && o.initial_flux >= 0.0)) {
    throw ConfigError("initial flux must be finite and >= 0");
  }
}

}  // namespace

RunResult run(const ProblemSpec& p, const Grid& g, const FunctionalSpec& goal,
              std::span<const FunctionalSpec> trials, const RunOptions& options) {
  check_options(options);
  validate(p);
  if (g.a != p.domain.a || g.b != p.domain.b) {
    throw ContractViolation("run: grid extents differ from the problem domain");
  }
  if (!is_linear(goal)) throw ConfigError("goal functional must be linear");

  RunResult result;
  result.grid = g;
  result.goal = goal;
  result.trials.assign(trials.begin(), trials.end());

  const SweepMaterial material = SweepMaterial::build(p, g);
  std::vector<CompiledFunctional> compiled;
  compiled.emplace_back(goal, g);
  for (const auto& t : trials) compiled.emplace_back(t, g);
  const std::size_t n_functionals = compiled.size();
  SamplePool pool(material, SweepOptions{.fixup = options.fixup}, std::move(compiled), options.workers);

  FluxField psi_prev(g, options.initial_flux);
  std::uint64_t next_index = options.seed_index;
  std::optional<FitResult> previous_epoch_fit;

  for (std::size_t epoch = 1; epoch <= options.max_epochs; ++epoch) {
    const FluxField source = freeze_source(p, g, psi_prev);
    const std::uint64_t first = next_index;
    const SamplePool::DirectionFn direction = [first](std::uint64_t task) {
      return DirectionQuadruple(quasi_random_direction(first + task));
    };

    CompensatedFieldSum sum(g);
    std::vector<FunctionalHistory> histories(n_functionals);
    const auto consume = [&](std::uint64_t, std::span<const double> scalar, std::span<const double> values) {
      for (std::size_t f = 0; f < n_functionals; ++f) {
        if (!std::isfinite(values[f])) {
          throw NumericalError("non-finite functional value in epoch " + std::to_string(epoch));
        }
        histories[f].push(values[f]);
      }
      sum.add(scalar);
    };

    EpochRecord record;
    record.epoch = epoch;
    record.first_index = first;
    std::optional<FitResult> previous_batch_fit;
    const std::size_t min_batches = epoch == 1 ? std::max<std::size_t>(2, options.min_batches_first_epoch) : 2;
    std::uint64_t done = 0;
    for (;;) {
      if (done >= options.max_samples_per_epoch) {
        throw DivergenceError("epoch " + std::to_string(epoch) + " reached the cap of " +
                              std::to_string(options.max_samples_per_epoch) +
                              " samples without converging (last relative change " +
                              std::to_string(record.batch_change) + ")");
      }
      const std::uint64_t count = std::min(options.batch_size, options.max_samples_per_epoch - done);
      const std::uint64_t offset = done;
      pool.run_range(source.values(), count,
                     [&](std::uint64_t task) { return direction(offset + task); }, consume);
      done += count;
      ++record.batches;
      if (done < 3) continue;

      const FitResult fit = fit_phi(histories.front());
      record.fit = fit;
      if (previous_batch_fit) {
        const ConvergenceCheck check = epoch_converged(fit, *previous_batch_fit, options.tol);
        record.batch_change = check.change;
        record.absolute_fallback = check.absolute_fallback;
        if (check.converged && record.batches >= min_batches) break;
      }
      previous_batch_fit = fit;
    }

    record.samples = done;
    next_index += done;
    FluxField mean(g);
    sum.scaled(1.0 / static_cast<double>(done), mean.values());
    if (!mean.all_finite()) {
      throw NumericalError("non-finite scalar flux at the end of epoch " + std::to_string(epoch));
    }

    bool finished = false;
    if (previous_epoch_fit) {
      const ConvergenceCheck cross = epoch_converged(record.fit, *previous_epoch_fit, options.tol);
      record.epoch_change = cross.change;
      finished = cross.converged;
    }
    if (options.keep_histories) {
      const auto v = histories.front().values();
      record.goal_history.assign(v.begin(), v.end());
    }
    if (options.on_epoch) options.on_epoch(record, mean, histories.front());
    previous_epoch_fit = record.fit;
    result.epochs.push_back(std::move(record));

    if (finished) {
      result.final_field = std::move(mean);
      result.goal_estimate = result.epochs.back().fit.gamma0;
      for (std::size_t t = 1; t < n_functionals; ++t) result.trial_fits.push_back(fit_phi(histories[t]));
      return result;
    }
    psi_prev = std::move(mean);
  }
  throw DivergenceError("no convergence between consecutive epochs after " +
                        std::to_string(options.max_epochs) + " epochs");
}

std::map<std::string, double> report_trials(const RunResult& run, std::span<const FunctionalSpec> trials) {
  std::map<std::string, double> out;
  for (const auto& t : trials) {
    if (t == run.goal) {
      out[to_string(t)] = run.goal_estimate;
      continue;
    }
    bool found = false;
    for (std::size_t k = 0; k < run.trials.size(); ++k) {
      if (run.trials[k] == t) {
        out[to_string(t)] = run.trial_fits[k].gamma0;
        found = true;
        break;
      }
    }
    if (!found) {
      throw ConfigError("trial functional '" + to_string(t) + "' was not declared for this run");
    }
  }
  return out;
}

}  // namespace qrdom
