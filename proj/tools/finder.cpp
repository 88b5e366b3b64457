#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "finder/config.hpp"
#include "finder/runner.hpp"

namespace {

// Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric failure.
constexpr int kUsage = 1;
constexpr int kData = 2;
constexpr int kNumeric = 3;

std::vector<double> parse_eps_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(std::stod(item));
    if (out.empty())
        throw finder::UsageError("--epsilon: expected a comma-separated list");
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "finder: residual-eigenspace features for two-class data.\n"
        "Builds a class-A Karhunen-Loeve expansion, projects samples onto a\n"
        "residual subspace (direct / mls / aca-s / aca-l) and evaluates an\n"
        "SVM by leave-pair-out cross-validation."};
    app.require_subcommand(1);

    // ---- run ------------------------------------------------------------
    auto* run = app.add_subcommand(
        "run", "Run an experiment and write metric/sweep/round files");
    std::string config_path;
    run->add_option("--config", config_path,
                    "Flat key = value config file; flags override it");
    // Every flag mirrors a config key and is validated by the same code.
    std::vector<std::pair<std::string, std::string>> run_keys = {
        {"--input", "input_path"},
        {"--label-column", "label_column"},
        {"--positive-label", "positive_label"},
        {"--variant", "variant"},
        {"--m-a", "m_a"},
        {"--m-res", "m_res_list"},
        {"--regime", "regime"},
        {"--kernel", "kernel"},
        {"--cost", "cost"},
        {"--gamma", "gamma"},
        {"--seed", "seed"},
        {"--impute-k", "impute_k"},
        {"--output-dir", "output_dir"},
        {"--threads", "threads"},
    };
    auto run_values =
        std::make_shared<std::vector<std::string>>(run_keys.size());
    for (size_t i = 0; i < run_keys.size(); ++i)
        run->add_option(run_keys[i].first, (*run_values)[i],
                        "sets " + run_keys[i].second);
    bool grid = false, shuffle = false;
    run->add_flag("--grid", grid, "Sweep a small cost/gamma grid per m_res");
    run->add_flag("--shuffle", shuffle,
                  "Shuffle class-A row order (seeded) before splitting");

    run->callback([&] {
        finder::RunConfig config;
        if (!config_path.empty())
            config = finder::parse_config_file(config_path);
        for (size_t i = 0; i < run_keys.size(); ++i)
            if (run->count(run_keys[i].first))
                finder::apply_config_entry(config, run_keys[i].second,
                                           (*run_values)[i]);
        if (run->count("--grid"))
            finder::apply_config_entry(config, "grid", grid ? "1" : "0");
        if (run->count("--shuffle"))
            finder::apply_config_entry(config, "shuffle", shuffle ? "1" : "0");
        finder::cmd_run(config, std::cout);
    });

    // ---- synth ----------------------------------------------------------
    auto* synth = app.add_subcommand(
        "synth", "Generate a two-class CSV from a scenario file");
    std::string synth_spec, synth_out;
    synth->add_option("--spec", synth_spec, "Scenario file (key = value)")
        ->required();
    synth->add_option("--out", synth_out, "Output CSV path")->required();
    synth->callback(
        [&] { finder::cmd_synth(synth_spec, synth_out, std::cout); });

    // ---- impute ---------------------------------------------------------
    auto* impute = app.add_subcommand(
        "impute", "Fill missing cells by k-nearest-neighbour means");
    std::string imp_in, imp_out, imp_label;
    long imp_k = 5;
    impute->add_option("--input", imp_in, "Input CSV")->required();
    impute->add_option("--output", imp_out, "Output CSV")->required();
    impute->add_option("--k", imp_k, "Neighbour count (default 5)");
    impute->add_option("--label-column", imp_label,
                       "Label column passed through untouched");
    impute->callback([&] {
        if (imp_k < 1) throw finder::UsageError("--k must be at least 1");
        finder::cmd_impute(imp_in, imp_out, imp_k, imp_label, std::cout);
    });

    // ---- bounds ---------------------------------------------------------
    auto* bounds = app.add_subcommand(
        "bounds", "Print concentration bounds for a dataset and basis");
    finder::BoundsRequest request;
    std::string eps_text = "1";
    long bounds_m_res = 5, bounds_k = 5;
    bounds->add_option("--input", request.input_path, "Input CSV")->required();
    bounds->add_option("--label-column", request.label_column)->required();
    bounds->add_option("--positive-label", request.positive_label,
                       "Class-B label (default B)");
    bounds->add_option("--variant", request.variant,
                       "direct | mls | aca-s | aca-l (default aca-s)");
    bounds->add_option("--m-a", request.m_a,
                       "Truncation order or energy:<fraction> (default 5)");
    bounds->add_option("--m-res", bounds_m_res,
                       "Residual dimension (default 5)");
    bounds->add_option("--epsilon", eps_text,
                       "Comma-separated thresholds (default 1)");
    bounds->add_option("--impute-k", bounds_k,
                       "Neighbour count if imputation is needed (default 5)");
    bounds->callback([&] {
        request.m_res = bounds_m_res;
        request.impute_k = bounds_k;
        request.epsilons = parse_eps_list(eps_text);
        finder::cmd_bounds(request, std::cout);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // prints help, exit 0
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const finder::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const finder::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kData;
    } catch (const finder::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumeric;
    }
    return 0;
}
