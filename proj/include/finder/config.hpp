#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "finder/evaluation.hpp"
#include "finder/rng.hpp"
#include "finder/types.hpp"

namespace finder {

// Everything a `run` invocation needs, in the exact shape of the config
// file / flag surface.  String-typed fields ("m_a", "gamma", "variant",
// ...) stay strings here and are validated when translated into a
// PipelineConfig, so that echoing a config back out is lossless.
struct RunConfig {
    std::string input_path;   // required
    std::string label_column; // required
    std::string positive_label = "B";
    std::string variant = "aca-s"; // direct | mls | aca-s | aca-l
    std::string m_a = "5";         // count, or "energy:<fraction>"
    std::vector<Index> m_res_list = {5};
    std::string regime = "unbalanced"; // balanced | unbalanced
    std::string kernel = "rbf";        // linear | rbf
    double cost = 1.0;
    std::string gamma = "auto"; // "auto" or a positive real
    std::uint64_t seed = 0;
    Index impute_k = 5;
    std::string output_dir = "finder-out";
    bool grid = false;    // small cost/gamma grid per m_res
    bool shuffle = false; // seeded shuffle of class-A row order
    int threads = 0;      // 0 = all hardware threads
};

// One `key = value` assignment; unknown keys or unparseable values raise
// UsageError.
void apply_config_entry(RunConfig& config, const std::string& key,
                        const std::string& value);

// Flat key = value file; '#' comments and blank lines ignored.
RunConfig parse_config_file(const std::string& path);

// Canonical serialization: one `key = value` line per field, fixed order,
// lossless (parse(echo(c)) == c).
std::string echo_config(const RunConfig& config);

// Reads the `# key = value` preamble that every output file carries and
// reconstructs the RunConfig it was produced with.
RunConfig config_from_output_file(const std::string& path);

// Validated translation of the string-typed fields.  m_res and gamma are
// filled per sweep point by the runner.
Variant parse_variant(const std::string& name);
Regime parse_regime(const std::string& name);
Kernel::Type parse_kernel(const std::string& name);
MaPolicy parse_ma_policy(const std::string& text);

// Two-class scenario description, serializable as the same flat format,
// so synthetic experiments are reproducible from files.
struct ScenarioSpec {
    Index f = 40;
    double mean_value = 0.0; // broadcast when mean_list is empty
    std::vector<double> mean_list;
    std::vector<double> a_spectrum;
    std::vector<double> b_spectrum;
    Index overlap_dims = 0;
    std::string law = "gaussian"; // gaussian | rademacher | uniform
    std::uint64_t seed = 0;
    Index n_a = 60;
    Index n_b = 20;
};

ScenarioSpec parse_scenario_file(const std::string& path);
std::string echo_scenario(const ScenarioSpec& spec);
CoefficientLaw parse_law(const std::string& name);

// The labeled dataset the scenario produces: n_a class-A rows followed by
// n_b class-B rows.
Dataset generate_scenario(const ScenarioSpec& spec);

} // namespace finder
