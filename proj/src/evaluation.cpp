#include "finder/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <random>
#include <sstream>
#include <thread>

#include "finder/kle.hpp"

namespace finder {

const char* regime_name(Regime r) {
    return r == Regime::Balanced ? "balanced" : "unbalanced";
}

std::string MaPolicy::describe() const {
    std::ostringstream out;
    if (use_energy)
        out << "energy:" << fraction;
    else
        out << fixed;
    return out.str();
}

std::string PipelineConfig::describe() const {
    std::ostringstream out;
    out << "variant=" << variant_name(variant) << " m_a=" << m_a.describe()
        << " m_res=" << m_res << " regime=" << regime_name(regime)
        << " kernel=" << (kernel == Kernel::Type::Linear ? "linear" : "rbf")
        << " cost=" << cost << " gamma=";
    if (gamma > 0.0)
        out << gamma;
    else
        out << "auto";
    if (gamma_scale != 1.0) out << " gamma_scale=" << gamma_scale;
    out << " svm_tol=" << svm_tol << " seed=" << seed
        << " shuffle=" << (shuffle ? 1 : 0);
    return out.str();
}

std::vector<ClassSplit> make_splits(Index n_a, Index n_b, Regime regime) {
    if (n_a < 2 || n_b < 2)
        throw UsageError(
            "make_splits: need at least two samples per class so that a "
            "training row remains after holding one out");
    if (regime == Regime::Balanced && n_a < n_b + 1) {
        std::ostringstream msg;
        msg << "make_splits: balanced regime requires n_a >= n_b + 1 (got n_a="
            << n_a << ", n_b=" << n_b << ")";
        throw UsageError(msg.str());
    }

    std::vector<ClassSplit> out;
    out.reserve(static_cast<size_t>(n_a * n_b));
    for (Index ta = 0; ta < n_a; ++ta) {
        std::vector<Index> rest_a;
        rest_a.reserve(static_cast<size_t>(n_a - 1));
        for (Index i = 0; i < n_a; ++i)
            if (i != ta) rest_a.push_back(i);

        for (Index tb = 0; tb < n_b; ++tb) {
            ClassSplit s;
            s.test_a = ta;
            s.test_b = tb;
            s.regime = regime;
            for (Index i = 0; i < n_b; ++i)
                if (i != tb) s.b_train.push_back(i);
            if (regime == Regime::Unbalanced) {
                s.a_svm = rest_a;
                s.a_cov = rest_a;
            } else {
                s.a_svm.assign(rest_a.begin(), rest_a.begin() + (n_b - 1));
                s.a_cov.assign(rest_a.begin() + (n_b - 1), rest_a.end());
            }
            out.push_back(std::move(s));
        }
    }
    return out;
}

double auc(const std::vector<double>& scores_a,
           const std::vector<double>& scores_b) {
    if (scores_a.empty() || scores_b.empty())
        throw DataError("auc: both score lists must be non-empty");
    // 2 units per win, 1 per tie; exact in integers.
    std::uint64_t units = 0;
    for (double a : scores_a) {
        for (double b : scores_b) {
            if (b > a)
                units += 2;
            else if (b == a)
                units += 1;
        }
    }
    return static_cast<double>(units) /
           (2.0 * static_cast<double>(scores_a.size()) *
            static_cast<double>(scores_b.size()));
}

double accuracy(const std::vector<double>& scores_a,
                const std::vector<double>& scores_b, double threshold) {
    if (scores_a.empty() || scores_b.empty())
        throw DataError("accuracy: both score lists must be non-empty");
    std::uint64_t correct = 0;
    for (double a : scores_a)
        if (!(a > threshold)) ++correct; // ties resolve to class A
    for (double b : scores_b)
        if (b > threshold) ++correct;
    return static_cast<double>(correct) /
           static_cast<double>(scores_a.size() + scores_b.size());
}

namespace {

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& m,
                          const std::vector<Index>& idx) {
    Eigen::MatrixXd out(static_cast<Index>(idx.size()), m.cols());
    for (Index i = 0; i < out.rows(); ++i) out.row(i) = m.row(idx[i]);
    return out;
}

// Per-feature z-score statistics from the training rows; a constant
// feature keeps divisor 1 so it passes through unscaled.
void standardize_stats(const Eigen::MatrixXd& train, Eigen::RowVectorXd& mu,
                       Eigen::RowVectorXd& sd) {
    const Index n = train.rows();
    mu = train.colwise().mean();
    if (n < 2) {
        sd = Eigen::RowVectorXd::Ones(train.cols());
        return;
    }
    sd = ((train.rowwise() - mu).array().square().colwise().sum() /
          static_cast<double>(n - 1))
             .sqrt();
    for (Index f = 0; f < sd.size(); ++f)
        if (!(sd[f] > 0.0)) sd[f] = 1.0;
}

} // namespace

RoundOutput run_round(const Dataset& data, const ClassSplit& split,
                      const std::vector<Index>& rows_a,
                      const std::vector<Index>& rows_b,
                      const PipelineConfig& config) {
    const Index f = data.n_features();

    auto map_a = [&](const std::vector<Index>& pos) {
        std::vector<Index> rows;
        rows.reserve(pos.size());
        for (Index p : pos) rows.push_back(rows_a[static_cast<size_t>(p)]);
        return rows;
    };
    auto map_b = [&](const std::vector<Index>& pos) {
        std::vector<Index> rows;
        rows.reserve(pos.size());
        for (Index p : pos) rows.push_back(rows_b[static_cast<size_t>(p)]);
        return rows;
    };

    const std::vector<Index> cov_rows = map_a(split.a_cov);
    const std::vector<Index> svm_rows = map_a(split.a_svm);
    const std::vector<Index> b_rows = map_b(split.b_train);

    // Standardization statistics come from training rows only: the union
    // of the class-A subsets plus the class-B training rows.
    std::vector<Index> train_union = cov_rows;
    if (split.regime == Regime::Balanced)
        train_union.insert(train_union.end(), svm_rows.begin(),
                           svm_rows.end());
    train_union.insert(train_union.end(), b_rows.begin(), b_rows.end());

    Eigen::RowVectorXd mu, sd;
    standardize_stats(data.rows(train_union), mu, sd);
    auto z_rows = [&](const std::vector<Index>& rows) {
        Eigen::MatrixXd m = data.rows(rows);
        m = (m.rowwise() - mu).array().rowwise() / sd.array();
        return m;
    };
    auto z_row = [&](Index row) -> Eigen::RowVectorXd {
        Eigen::RowVectorXd r = data.values.row(row);
        return ((r - mu).array() / sd.array()).matrix();
    };

    const Eigen::MatrixXd x_cov = z_rows(cov_rows);
    const Eigen::MatrixXd x_svm_a = z_rows(svm_rows);
    const Eigen::MatrixXd x_b = z_rows(b_rows);

    const auto t_start = std::chrono::steady_clock::now();

    // Class-A expansion from the covariance subset, centered on its own
    // mean; the Gram route avoids the F x F matrix when rows are scarce.
    const Eigen::VectorXd mean_a = empirical_mean(x_cov);
    Eigensystem eig_a;
    if (x_cov.rows() < f) {
        eig_a = eigendecompose_dual(centered(x_cov, mean_a));
    } else {
        eig_a = eigendecompose(empirical_covariance(x_cov, mean_a));
    }
    eig_a.mean = mean_a;

    Index m_a = 0;
    if (config.m_a.use_energy) {
        m_a = std::min(energy_truncation(eig_a, config.m_a.fraction), f - 1);
    } else {
        m_a = config.m_a.fixed;
        if (m_a > eig_a.effective_rank || m_a >= f) {
            std::ostringstream msg;
            msg << "m_a = " << m_a << " exceeds the class-A rank "
                << eig_a.effective_rank << " (dimension " << f
                << ") available in this round";
            throw UsageError(msg.str());
        }
    }

    FeatureTransform transform;
    switch (config.variant) {
        case Variant::Direct:
            transform = direct_residual(eig_a, m_a);
            break;
        case Variant::Mls:
            transform = mls_residual(eig_a, m_a, config.m_res);
            break;
        case Variant::AcaS:
        case Variant::AcaL: {
            const Eigen::VectorXd mean_b = empirical_mean(x_b);
            const Eigen::MatrixXd cov_b = empirical_covariance(x_b, mean_b);
            transform = aca_subspace(eig_a, cov_b, m_a, config.m_res,
                                     config.variant == Variant::AcaS
                                         ? AcaMode::Small
                                         : AcaMode::Large);
            break;
        }
        case Variant::Complement:
            throw UsageError("run_round: complement is not a runnable variant");
    }

    const Eigen::MatrixXd feat_a = transform.apply_rows(x_svm_a);
    const Eigen::MatrixXd feat_b = transform.apply_rows(x_b);
    Eigen::MatrixXd train(feat_a.rows() + feat_b.rows(), feat_a.cols());
    train << feat_a, feat_b;
    Eigen::VectorXi labels(train.rows());
    labels.head(feat_a.rows()).setConstant(-1);
    labels.tail(feat_b.rows()).setConstant(1);

    Kernel kernel = Kernel::linear();
    if (config.kernel == Kernel::Type::Rbf)
        kernel = Kernel::rbf(config.gamma > 0.0
                                 ? config.gamma
                                 : config.gamma_scale * default_rbf_gamma(train));

    RoundOutput out;
    out.model = svm_train(train, labels, kernel, config.cost, config.svm_tol);
    out.m_a_used = m_a;

    const auto t_end = std::chrono::steady_clock::now();

    const Index row_a = rows_a[static_cast<size_t>(split.test_a)];
    const Index row_b = rows_b[static_cast<size_t>(split.test_b)];
    out.result.test_a = row_a;
    out.result.test_b = row_b;
    out.result.score_a =
        svm_score(out.model, transform.apply_rows(z_row(row_a)))[0];
    out.result.score_b =
        svm_score(out.model, transform.apply_rows(z_row(row_b)))[0];
    out.result.ms =
        std::chrono::duration<double, std::milli>(t_end - t_start).count();
    return out;
}

CvReport run_lpocv(const Dataset& data, const PipelineConfig& config) {
    data.validate();
    if (!data.has_labels())
        throw DataError("run_lpocv: dataset has no class labels");
    if (data.any_missing())
        throw DataError("run_lpocv: dataset has missing values; impute first");

    std::vector<Index> rows_a = data.rows_of(ClassLabel::A);
    std::vector<Index> rows_b = data.rows_of(ClassLabel::B);
    if (rows_a.empty() || rows_b.empty())
        throw DataError("run_lpocv: both classes must be present");

    if (config.shuffle) {
        // Deterministic Fisher-Yates over the class-A order; modulo bias
        // is irrelevant at these sizes and keeps the mapping portable.
        std::mt19937_64 engine(config.seed);
        for (size_t i = rows_a.size(); i > 1; --i)
            std::swap(rows_a[i - 1], rows_a[engine() % i]);
    }

    const Index n_a = static_cast<Index>(rows_a.size());
    const Index n_b = static_cast<Index>(rows_b.size());
    const std::vector<ClassSplit> splits =
        make_splits(n_a, n_b, config.regime);
    const size_t n_rounds = splits.size();

    std::vector<RoundOutput> outputs(n_rounds);
    std::vector<std::exception_ptr> errors(n_rounds);

    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    size_t n_threads = config.threads > 0
                           ? static_cast<size_t>(config.threads)
                           : static_cast<size_t>(hw);
    n_threads = std::min(n_threads, n_rounds);

    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const size_t r = next.fetch_add(1);
            if (r >= n_rounds) break;
            try {
                outputs[r] = run_round(data, splits[r], rows_a, rows_b, config);
                outputs[r].result.round = static_cast<Index>(r);
            } catch (const std::exception& e) {
                std::ostringstream msg;
                msg << e.what() << " [round " << r << ", test_a row "
                    << rows_a[static_cast<size_t>(splits[r].test_a)]
                    << ", test_b row "
                    << rows_b[static_cast<size_t>(splits[r].test_b)] << "]";
                try {
                    if (dynamic_cast<const UsageError*>(&e))
                        throw UsageError(msg.str());
                    if (dynamic_cast<const DataError*>(&e))
                        throw DataError(msg.str());
                    throw NumericError(msg.str());
                } catch (...) {
                    errors[r] = std::current_exception();
                }
            }
        }
    };

    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (const auto& err : errors)
        if (err) std::rethrow_exception(err); // first failing round wins

    CvReport report;
    report.per_round.reserve(n_rounds);
    std::vector<double> scores_a, scores_b;
    scores_a.reserve(n_rounds);
    scores_b.reserve(n_rounds);
    double ms_total = 0.0;
    for (const RoundOutput& o : outputs) {
        report.per_round.push_back(o.result);
        scores_a.push_back(o.result.score_a);
        scores_b.push_back(o.result.score_b);
        ms_total += o.result.ms;
    }
    report.auc = auc(scores_a, scores_b);
    report.accuracy = accuracy(scores_a, scores_b);
    report.mean_round_ms = ms_total / static_cast<double>(n_rounds);
    report.m_a_used = outputs.front().m_a_used;
    report.config_echo = config.describe();
    return report;
}

} // namespace finder
