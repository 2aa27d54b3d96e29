#include "report.hpp"

#include <json.hpp>

namespace qrdom {

using nlohmann::ordered_json;

namespace {

ordered_json grid_json(const Grid& g) {
  return {{"nx", g.nx}, {"ny", g.ny}, {"a", g.a}, {"b", g.b}};
}

ordered_json fit_json(const FitResult& f) {
  return {{"gamma0", f.gamma0},
          {"gamma1", f.gamma1},
          {"gamma2", f.gamma2},
          {"residual_norm", f.residual_norm},
          {"n_points", f.n_points}};
}

}  // namespace

std::string run_report_json(const ProblemSpec& p, const RunOptions& options, const RunResult& r,
                            double wall_seconds) {
  ordered_json doc;
  doc["method"] = "qrdom";
  doc["problem"] = ordered_json::parse(serialize(p));
  doc["grid"] = grid_json(r.grid);
  doc["options"] = {{"tol", options.tol},
                    {"batch_size", options.batch_size},
                    {"max_samples_per_epoch", options.max_samples_per_epoch},
                    {"min_batches_first_epoch", options.min_batches_first_epoch},
                    {"max_epochs", options.max_epochs},
                    {"fixup", options.fixup},
                    {"initial_flux", options.initial_flux},
                    {"seed_index", options.seed_index},
                    {"workers", options.workers}};
  doc["goal"] = to_string(r.goal);
  ordered_json trials = ordered_json::array();
  for (const auto& t : r.trials) trials.push_back(to_string(t));
  doc["trials"] = trials;

  ordered_json epochs = ordered_json::array();
  for (const auto& e : r.epochs) {
    ordered_json rec = {{"epoch", e.epoch},
                        {"first_index", e.first_index},
                        {"samples", e.samples},
                        {"batches", e.batches},
                        {"estimate", e.fit.gamma0},
                        {"fit", fit_json(e.fit)},
                        {"batch_change", e.batch_change},
                        {"absolute_fallback", e.absolute_fallback}};
    rec["epoch_change"] = e.epoch_change ? ordered_json(*e.epoch_change) : ordered_json(nullptr);
    epochs.push_back(rec);
  }
  doc["epochs"] = epochs;

  ordered_json results = {{"epochs_run", r.epochs_run()},
                          {"total_samples", 0},
                          {"mean_samples_per_epoch", r.mean_samples_per_epoch()},
                          {"goal_estimate", r.goal_estimate}};
  std::uint64_t total = 0;
  for (const auto& e : r.epochs) total += e.samples;
  results["total_samples"] = total;
  ordered_json trial_values = ordered_json::object();
  for (std::size_t t = 0; t < r.trials.size(); ++t) {
    trial_values[to_string(r.trials[t])] = {{"estimate", r.trial_fits[t].gamma0},
                                            {"fit", fit_json(r.trial_fits[t])}};
  }
  results["trials"] = trial_values;
  // Functionals of the final epoch field itself, before extrapolation.
  ordered_json field_values = ordered_json::object();
  field_values[to_string(r.goal)] = evaluate(r.goal, r.final_field, r.grid);
  for (const auto& t : r.trials) field_values[to_string(t)] = evaluate(t, r.final_field, r.grid);
  results["field_values"] = field_values;
  doc["results"] = results;
  doc["timing"] = {{"wall_seconds", wall_seconds}};
  return doc.dump(2);
}

std::string dom_report_json(const ProblemSpec& p, const Grid& g, const FunctionalSpec& goal,
                            int n_polar, int n_azimuthal, const DomOptions& options,
                            const DomResult& r, double wall_seconds) {
  ordered_json doc;
  doc["method"] = "dom";
  doc["problem"] = ordered_json::parse(serialize(p));
  doc["grid"] = grid_json(g);
  doc["options"] = {{"tol", options.tol},
                    {"max_iterations", options.max_iterations},
                    {"fixup", options.fixup},
                    {"workers", options.workers},
                    {"n_polar", n_polar},
                    {"n_azimuthal", n_azimuthal},
                    {"directions", n_polar * n_azimuthal}};
  doc["goal"] = to_string(goal);
  doc["results"] = {{"iterations", r.iterations},
                    {"goal_value", r.goal_value},
                    {"goal_history", r.goal_history}};
  doc["timing"] = {{"wall_seconds", wall_seconds}};
  return doc.dump(2);
}

}  // namespace qrdom
