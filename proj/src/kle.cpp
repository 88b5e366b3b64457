#include "finder/kle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace finder {

Eigen::VectorXd empirical_mean(const Eigen::MatrixXd& rows) {
    if (rows.rows() == 0)
        throw DataError("empirical_mean: no samples");
    return rows.colwise().mean();
}

Eigen::VectorXd empirical_mean(const Dataset& data) {
    return empirical_mean(data.values);
}

Eigen::MatrixXd empirical_covariance(const Eigen::MatrixXd& rows,
                                     const Eigen::VectorXd& mean) {
    if (rows.rows() < 2)
        throw DataError("empirical_covariance: need at least two samples");
    if (mean.size() != rows.cols())
        throw DataError("empirical_covariance: mean has wrong dimension");
    const Eigen::MatrixXd x = rows.rowwise() - mean.transpose();
    return (x.transpose() * x) / static_cast<double>(rows.rows() - 1);
}

Eigen::MatrixXd empirical_covariance(const Dataset& data,
                                     const Eigen::VectorXd& mean) {
    return empirical_covariance(data.values, mean);
}

Eigen::MatrixXd centered(const Eigen::MatrixXd& rows,
                         const Eigen::VectorXd& reference_mean) {
    if (reference_mean.size() != rows.cols())
        throw DataError("centered: mean has wrong dimension");
    return rows.rowwise() - reference_mean.transpose();
}

Dataset center(const Dataset& data, const Eigen::VectorXd& reference_mean) {
    Dataset out = data;
    out.values = centered(data.values, reference_mean);
    return out;
}

void apply_sign_convention(Eigen::Ref<Eigen::MatrixXd> vectors) {
    for (Index c = 0; c < vectors.cols(); ++c) {
        Index at = 0;
        vectors.col(c).cwiseAbs().maxCoeff(&at);
        if (vectors(at, c) < 0.0) vectors.col(c) = -vectors.col(c);
    }
}

namespace {

// Shared post-processing: sort descending, clamp tiny/negative values,
// apply the sign convention, count the effective rank.
Eigensystem finalize(Eigen::VectorXd values, Eigen::MatrixXd vectors,
                     double rank_tol, bool drop_below_tol) {
    const Index n = values.size();
    std::vector<Index> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return values[a] > values[b]; });

    Eigensystem out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(vectors.rows(), n);
    for (Index i = 0; i < n; ++i) {
        out.eigenvalues[i] = values[order[i]];
        out.eigenvectors.col(i) = vectors.col(order[i]);
    }

    const double lambda_max = n > 0 ? std::max(out.eigenvalues[0], 0.0) : 0.0;
    const double floor = rank_tol * lambda_max;
    const double neg_limit = -1e-8 * std::max(lambda_max, 1.0);

    Index rank = 0;
    for (Index i = 0; i < n; ++i) {
        double& v = out.eigenvalues[i];
        if (v < neg_limit) {
            std::ostringstream msg;
            msg << "eigendecompose: eigenvalue " << v
                << " is negative beyond tolerance; matrix is not PSD";
            throw NumericError(msg.str());
        }
        if (v < floor || v <= 0.0)
            v = 0.0;
        else
            ++rank;
    }
    out.effective_rank = rank;

    if (drop_below_tol && rank < n) {
        out.eigenvalues.conservativeResize(rank);
        out.eigenvectors.conservativeResize(Eigen::NoChange, rank);
    }

    apply_sign_convention(out.eigenvectors);
    out.mean = Eigen::VectorXd::Zero(out.eigenvectors.rows());
    return out;
}

void check_symmetric(const Eigen::MatrixXd& m, const char* who) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double skew = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (skew > 1e-10 * scale) {
        std::ostringstream msg;
        msg << who << ": input is not symmetric (max asymmetry " << skew << ")";
        throw NumericError(msg.str());
    }
}

} // namespace

Eigensystem eigendecompose(const Eigen::MatrixXd& cov, double rank_tol) {
    if (cov.rows() != cov.cols() || cov.rows() == 0)
        throw DataError("eigendecompose: matrix must be square and non-empty");
    check_symmetric(cov, "eigendecompose");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success)
        throw NumericError("eigendecompose: eigensolver failed to converge");
    return finalize(solver.eigenvalues(), solver.eigenvectors(), rank_tol,
                    /*drop_below_tol=*/false);
}

Eigensystem eigendecompose_dual(const Eigen::MatrixXd& centered_rows,
                                double rank_tol) {
    const Index n = centered_rows.rows();
    if (n < 2)
        throw DataError("eigendecompose_dual: need at least two samples");

    const Eigen::MatrixXd gram =
        (centered_rows * centered_rows.transpose()) /
        static_cast<double>(n - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    if (solver.info() != Eigen::Success)
        throw NumericError("eigendecompose_dual: eigensolver failed to converge");

    // Same nonzero spectrum as the F x F covariance; lift the Gram
    // eigenvectors u through X^T and renormalize.  Below-tolerance pairs
    // are dropped because their lifts carry no usable direction.
    Eigensystem gram_sys = finalize(solver.eigenvalues(), solver.eigenvectors(),
                                    rank_tol, /*drop_below_tol=*/true);

    Eigen::MatrixXd lifted(centered_rows.cols(), gram_sys.size());
    for (Index r = 0; r < gram_sys.size(); ++r) {
        Eigen::VectorXd phi =
            centered_rows.transpose() * gram_sys.eigenvectors.col(r);
        const double norm = phi.norm();
        if (norm <= 0.0)
            throw NumericError(
                "eigendecompose_dual: zero lift for a nonzero eigenvalue");
        lifted.col(r) = phi / norm;
    }
    apply_sign_convention(lifted);

    Eigensystem out;
    out.mean = Eigen::VectorXd::Zero(centered_rows.cols());
    out.eigenvalues = std::move(gram_sys.eigenvalues);
    out.eigenvectors = std::move(lifted);
    out.effective_rank = out.eigenvalues.size();
    return out;
}

double truncation_error(const Eigensystem& eig, Index m) {
    if (m < 0 || m > eig.size()) {
        std::ostringstream msg;
        msg << "truncation_error: M = " << m << " out of range [0, "
            << eig.size() << "]";
        throw UsageError(msg.str());
    }
    if (m == eig.size()) return 0.0;
    return eig.eigenvalues.tail(eig.size() - m).sum();
}

Index energy_truncation(const Eigensystem& eig, double fraction) {
    if (!(fraction > 0.0) || fraction > 1.0)
        throw UsageError("energy_truncation: fraction must be in (0, 1]");
    // Accumulate sequentially so that fraction = 1.0 lands exactly on the
    // effective rank: eigenvalues past it are clamped to exactly zero.
    double total = 0.0;
    for (Index m = 0; m < eig.size(); ++m) total += eig.eigenvalues[m];
    if (total <= 0.0)
        throw DataError("energy_truncation: spectrum is all zero");
    double acc = 0.0;
    for (Index m = 0; m < eig.size(); ++m) {
        acc += eig.eigenvalues[m];
        if (acc >= fraction * total) return m + 1;
    }
    return eig.effective_rank;
}

} // namespace finder
