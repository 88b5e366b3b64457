#include "finder/runner.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "finder/bounds.hpp"
#include "finder/csv.hpp"
#include "finder/impute.hpp"
#include "finder/kle.hpp"

namespace finder {

namespace {

// Experiment outputs carry 6 significant digits.
std::string num6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Config preamble: one "# key = value" line per field.  Descriptive
// comments elsewhere use "##" so the preamble stays machine-parseable.
std::string preamble(const RunConfig& config) {
    std::istringstream in(echo_config(config));
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) out << "# " << line << '\n';
    return out.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << text;
    if (!out) throw DataError("write to '" + path + "' failed");
}

struct GridCombo {
    double cost;
    double gamma = 0.0;       // explicit gamma (0 = heuristic)
    double gamma_scale = 1.0; // multiplier on the heuristic
    std::string gamma_text;   // how the combo is reported
};

Dataset load_run_input(const RunConfig& config, std::ostream& log) {
    if (config.input_path.empty())
        throw UsageError("run: input_path is required");
    if (config.label_column.empty())
        throw UsageError("run: label_column is required");

    Dataset data =
        load_csv(config.input_path, config.label_column, config.positive_label);
    Index n_b = 0, holes = 0;
    for (ClassLabel l : data.labels)
        if (l == ClassLabel::B) ++n_b;
    if (data.has_mask()) holes = data.missing_mask.count();
    log << "loaded " << data.n_samples() << " samples x "
        << data.n_features() << " features ("
        << data.n_samples() - n_b << " class A, " << n_b << " class B, "
        << holes << " missing cells)\n";

    if (data.any_missing()) {
        data = knn_impute(data, config.impute_k);
        log << "imputed " << holes << " cells with k = " << config.impute_k
            << "\n";
    }
    return data;
}

} // namespace

void cmd_run(const RunConfig& config, std::ostream& log) {
    const Dataset data = load_run_input(config, log);
    const Index f = data.n_features();

    const Variant variant = parse_variant(config.variant);
    const MaPolicy ma = parse_ma_policy(config.m_a);
    const Regime regime = parse_regime(config.regime);
    const Kernel::Type kernel = parse_kernel(config.kernel);
    const double gamma_explicit =
        config.gamma == "auto" ? 0.0 : std::stod(config.gamma);

    // A fixed truncation order makes the residual dimension checkable up
    // front; the energy policy gets checked per round instead.
    if (!ma.use_energy && variant != Variant::Direct) {
        for (Index m_res : config.m_res_list) {
            if (m_res > f - ma.fixed) {
                std::ostringstream msg;
                msg << "m_res = " << m_res << " exceeds F - M_A = " << f
                    << " - " << ma.fixed << " = " << f - ma.fixed;
                throw UsageError(msg.str());
            }
        }
    }

    std::vector<GridCombo> combos;
    if (config.grid) {
        for (double cost : {0.1, 1.0, 10.0}) {
            if (kernel == Kernel::Type::Linear) {
                combos.push_back({cost, 0.0, 1.0, "n/a"});
                continue;
            }
            for (double scale : {0.5, 1.0, 2.0}) {
                GridCombo c;
                c.cost = cost;
                if (gamma_explicit > 0.0) {
                    c.gamma = gamma_explicit * scale;
                    c.gamma_text = num6(c.gamma);
                } else {
                    c.gamma_scale = scale;
                    c.gamma_text = "auto*" + num6(scale);
                }
                combos.push_back(std::move(c));
            }
        }
    } else {
        combos.push_back({config.cost, gamma_explicit, 1.0,
                          gamma_explicit > 0.0 ? num6(gamma_explicit)
                                               : "auto"});
    }

    std::filesystem::create_directories(config.output_dir);
    const std::string head = preamble(config);
    const auto out_path = [&](const std::string& name) {
        return (std::filesystem::path(config.output_dir) / name).string();
    };

    std::ostringstream metrics, sweep, gridout;
    metrics << head
            << "variant,regime,kernel,m_a,m_res,auc,accuracy,mean_round_ms\n";
    sweep << head << "m_res,auc,accuracy\n";
    gridout << head << "m_res,cost,gamma,auc,accuracy,mean_round_ms,selected\n";

    for (Index m_res : config.m_res_list) {
        CvReport best;
        size_t best_combo = 0;
        std::vector<CvReport> reports;
        reports.reserve(combos.size());
        for (const GridCombo& combo : combos) {
            PipelineConfig pc;
            pc.variant = variant;
            pc.m_a = ma;
            pc.m_res = m_res;
            pc.regime = regime;
            pc.kernel = kernel;
            pc.cost = combo.cost;
            pc.gamma = combo.gamma;
            pc.gamma_scale = combo.gamma_scale;
            pc.seed = config.seed;
            pc.shuffle = config.shuffle;
            pc.threads = config.threads;
            reports.push_back(run_lpocv(data, pc));
        }
        best_combo = 0;
        for (size_t i = 1; i < reports.size(); ++i)
            if (reports[i].auc > reports[best_combo].auc) best_combo = i;
        best = reports[best_combo];

        // The direct variant always spans the whole complement; report
        // the dimension it actually used.
        const Index eff_m_res =
            variant == Variant::Direct ? f - best.m_a_used : m_res;

        metrics << config.variant << ',' << config.regime << ','
                << config.kernel << ',' << best.m_a_used << ',' << eff_m_res
                << ',' << num6(best.auc) << ',' << num6(best.accuracy) << ','
                << num6(best.mean_round_ms) << '\n';
        sweep << eff_m_res << ',' << num6(best.auc) << ','
              << num6(best.accuracy) << '\n';

        if (config.grid) {
            for (size_t i = 0; i < reports.size(); ++i) {
                gridout << eff_m_res << ',' << num6(combos[i].cost) << ','
                        << combos[i].gamma_text << ',' << num6(reports[i].auc)
                        << ',' << num6(reports[i].accuracy) << ','
                        << num6(reports[i].mean_round_ms) << ','
                        << (i == best_combo ? 1 : 0) << '\n';
            }
        }

        std::ostringstream rounds;
        rounds << head << "## m_res = " << eff_m_res << '\n'
               << "round,test_a,test_b,score_a,score_b\n";
        for (const RoundResult& r : best.per_round)
            rounds << r.round << ',' << r.test_a << ',' << r.test_b << ','
                   << num6(r.score_a) << ',' << num6(r.score_b) << '\n';
        write_text(out_path("rounds_m" + std::to_string(m_res) + ".csv"),
                   rounds.str());

        log << "m_res = " << eff_m_res << ": auc = " << num6(best.auc)
            << ", accuracy = " << num6(best.accuracy) << ", mean round "
            << num6(best.mean_round_ms) << " ms";
        if (config.grid)
            log << " (best: cost = " << num6(combos[best_combo].cost)
                << ", gamma = " << combos[best_combo].gamma_text << ")";
        log << '\n';
    }

    write_text(out_path("metrics.csv"), metrics.str());
    write_text(out_path("sweep.csv"), sweep.str());
    if (config.grid) write_text(out_path("grid.csv"), gridout.str());
    log << "wrote " << out_path("metrics.csv") << '\n';
}

void cmd_synth(const std::string& spec_path, const std::string& out_csv,
               std::ostream& log) {
    const ScenarioSpec spec = parse_scenario_file(spec_path);
    const Dataset data = generate_scenario(spec);
    write_csv(out_csv, data);
    log << echo_scenario(spec);
    log << "wrote " << data.n_samples() << " rows x " << data.n_features()
        << " features to " << out_csv << '\n';
}

void cmd_impute(const std::string& input, const std::string& output, Index k,
                const std::string& label_column, std::ostream& log) {
    CsvTable table = load_csv_table(input, label_column);
    const Index holes =
        table.data.has_mask() ? table.data.missing_mask.count() : 0;
    const Dataset filled = knn_impute(table.data, k);
    write_csv_table(output, filled, label_column, table.row_labels);
    log << "imputed " << holes << " of "
        << table.data.n_samples() * table.data.n_features() << " cells (k = "
        << k << "), wrote " << output << '\n';
}

void cmd_bounds(const BoundsRequest& request, std::ostream& out) {
    if (request.input_path.empty() || request.label_column.empty())
        throw UsageError("bounds: input and label column are required");
    if (request.epsilons.empty())
        throw UsageError("bounds: need at least one epsilon");
    for (double e : request.epsilons)
        if (!(e > 0.0)) throw UsageError("bounds: epsilon must be positive");

    Dataset data = load_csv(request.input_path, request.label_column,
                            request.positive_label);
    if (data.any_missing()) data = knn_impute(data, request.impute_k);

    const Index f = data.n_features();
    const std::vector<Index> rows_a = data.rows_of(ClassLabel::A);
    const std::vector<Index> rows_b = data.rows_of(ClassLabel::B);
    if (rows_a.size() < 2)
        throw DataError("bounds: need at least two class-A samples");

    // Descriptive report over the full dataset: standardize everything,
    // expand class A around its own mean, build the requested basis.
    Eigen::RowVectorXd mu = data.values.colwise().mean();
    Eigen::RowVectorXd sd =
        ((data.values.rowwise() - mu).array().square().colwise().sum() /
         static_cast<double>(data.n_samples() - 1))
            .sqrt();
    for (Index j = 0; j < sd.size(); ++j)
        if (!(sd[j] > 0.0)) sd[j] = 1.0;
    const Eigen::MatrixXd z =
        (data.values.rowwise() - mu).array().rowwise() / sd.array();

    Eigen::MatrixXd xa(static_cast<Index>(rows_a.size()), f);
    for (Index i = 0; i < xa.rows(); ++i)
        xa.row(i) = z.row(rows_a[static_cast<size_t>(i)]);

    const Eigen::VectorXd mean_a = empirical_mean(xa);
    Eigensystem eig_a = xa.rows() < f
                            ? eigendecompose_dual(centered(xa, mean_a))
                            : eigendecompose(empirical_covariance(xa, mean_a));
    eig_a.mean = mean_a;

    const MaPolicy ma = parse_ma_policy(request.m_a);
    const Index m_a =
        ma.use_energy ? std::min(energy_truncation(eig_a, ma.fraction), f - 1)
                      : ma.fixed;

    const Variant variant = parse_variant(request.variant);
    SubspaceBasis basis;
    switch (variant) {
        case Variant::Direct:
            basis = complement_basis(eig_a, m_a);
            break;
        case Variant::Mls:
            basis = mls_basis(f, eig_a, m_a, request.m_res);
            break;
        case Variant::AcaS:
        case Variant::AcaL: {
            if (rows_b.size() < 2)
                throw DataError(
                    "bounds: the adapted variants need at least two class-B "
                    "samples");
            Eigen::MatrixXd xb(static_cast<Index>(rows_b.size()), f);
            for (Index i = 0; i < xb.rows(); ++i)
                xb.row(i) = z.row(rows_b[static_cast<size_t>(i)]);
            const Eigen::MatrixXd cov_b =
                empirical_covariance(xb, empirical_mean(xb));
            basis = aca_subspace(eig_a, cov_b, m_a, request.m_res,
                                 variant == Variant::AcaS ? AcaMode::Small
                                                          : AcaMode::Large)
                        .basis;
            break;
        }
        case Variant::Complement:
            throw UsageError("bounds: complement is not a runnable variant");
    }

    out << "## concentration bounds (" << request.input_path << ")\n"
        << "## variant = " << request.variant << ", m_a = " << m_a
        << ", m_res = " << basis.m_res() << ", class A rows = "
        << rows_a.size() << "\n"
        << "tail_bound = " << num6(tail_bound(eig_a, m_a)) << '\n';

    const MarkovBound first =
        markov_rhs(eig_a, basis, request.epsilons.front());
    out << "expected_energy = " << num6(first.expected_energy) << '\n'
        << "epsilon,markov_rhs\n";
    for (double eps : request.epsilons) {
        const MarkovBound b = markov_rhs(eig_a, basis, eps);
        out << num6(eps) << ',' << num6(b.rhs) << '\n';
    }
}

} // namespace finder
