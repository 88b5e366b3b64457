#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "finder/config.hpp"

namespace finder {

// The four subcommand bodies, kept in the library so tests can drive them
// without spawning a process.  All of them throw Usage/Data/NumericError;
// the executable maps those to exit codes.

// Full experiment: load, impute if needed, sweep m_res_list (optionally a
// small cost/gamma grid per point), write metrics.csv, sweep.csv, one
// rounds file per sweep point and grid.csv when the grid ran.  Progress
// goes to `log`.
void cmd_run(const RunConfig& config, std::ostream& log);

// Generate a labeled two-class CSV from a scenario file.
void cmd_synth(const std::string& spec_path, const std::string& out_csv,
               std::ostream& log);

// Standalone imputation; labels (any text) pass through untouched.
void cmd_impute(const std::string& input, const std::string& output, Index k,
                const std::string& label_column, std::ostream& log);

struct BoundsRequest {
    std::string input_path;
    std::string label_column;
    std::string positive_label = "B";
    std::string variant = "aca-s";
    std::string m_a = "5";
    Index m_res = 5;
    std::vector<double> epsilons = {1.0};
    Index impute_k = 5;
};

// Concentration-bound report over the whole dataset (no cross-validation;
// features are standardized over all rows first): the expected residual
// energy, the spectral tail, and one Markov right-hand side per epsilon.
void cmd_bounds(const BoundsRequest& request, std::ostream& out);

} // namespace finder
