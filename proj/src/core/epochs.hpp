#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "extrapolate.hpp"
#include "field.hpp"
#include "functionals.hpp"
#include "problem.hpp"

namespace qrdom {

/// Summary of one finished epoch.
struct EpochRecord {
  std::size_t epoch = 0;            // 1-based
  std::uint64_t first_index = 0;    // first sequence index used by the epoch
  std::uint64_t samples = 0;        // M of this epoch
  std::size_t batches = 0;
  FitResult fit;                    // goal fit at the closing batch boundary
  double batch_change = 0.0;        // relative change against the previous batch fit
  bool absolute_fallback = false;
  std::optional<double> epoch_change;  // relative change against the previous epoch
  std::vector<double> goal_history;    // per-sample goal values (RunOptions::keep_histories)
};

struct RunOptions {
  double tol = 1e-3;
  std::uint64_t batch_size = 1000;
  std::uint64_t max_samples_per_epoch = 1'000'000;
  std::size_t min_batches_first_epoch = 2;
  std::size_t max_epochs = 1000;
  bool fixup = true;
  double initial_flux = 0.0;
  unsigned workers = 1;
  std::uint64_t seed_index = 1;
  bool keep_histories = false;

  /// Called on the coordinator after each epoch with the epoch mean field and
  /// the epoch's goal history.
  std::function<void(const EpochRecord&, const FluxField&, const FunctionalHistory&)> on_epoch;
};

struct RunResult {
  Grid grid;
  FunctionalSpec goal;
  std::vector<FunctionalSpec> trials;
  FluxField final_field;
  double goal_estimate = 0.0;
  std::vector<EpochRecord> epochs;
  std::vector<FitResult> trial_fits;  // last-epoch fits, parallel to `trials`

  std::size_t epochs_run() const { return epochs.size(); }
  std::vector<std::uint64_t> samples_per_epoch() const;
  double mean_samples_per_epoch() const;
  /// Extrapolated last-epoch estimates keyed by the functional's text form.
  std::map<std::string, double> trial_estimates() const;
};

/// sigma_s * psi_prev + Q at cell centers.
FluxField freeze_source(const ProblemSpec& p, const Grid& g, const FluxField& psi_prev);

/// Quasi-random source iteration. Each epoch streams consecutive sequence
/// indices against the frozen source of the previous epoch, fits the goal
/// history at every batch boundary, and closes once two successive batch fits
/// agree to `tol` (with at least `min_batches_first_epoch` batches in epoch 1).
/// The run stops when consecutive epoch estimates agree to `tol`.
/// Throws DivergenceError when an epoch exceeds its sample cap or the run
/// exceeds max_epochs, NumericalError on non-finite fluxes.
RunResult run(const ProblemSpec& p, const Grid& g, const FunctionalSpec& goal,
              std::span<const FunctionalSpec> trials, const RunOptions& options);

/// Extrapolated estimates for trials declared on the run. Throws ConfigError
/// for a trial the run did not record.
std::map<std::string, double> report_trials(const RunResult& run,
                                            std::span<const FunctionalSpec> trials);

}  // namespace qrdom
