#pragma once

#include <string>

#include "baseline_dom.hpp"
#include "epochs.hpp"
#include "problem.hpp"

namespace qrdom {

/// Run report as JSON text: problem echo, grid, options, per-epoch records,
/// goal and trial estimates. `wall_seconds` goes under "timing", the only
/// entry that differs between otherwise identical runs.
std::string run_report_json(const ProblemSpec& p, const RunOptions& options, const RunResult& r,
                            double wall_seconds);

std::string dom_report_json(const ProblemSpec& p, const Grid& g, const FunctionalSpec& goal,
                            int n_polar, int n_azimuthal, const DomOptions& options,
                            const DomResult& r, double wall_seconds);

}  // namespace qrdom
