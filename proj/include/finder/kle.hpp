#pragma once

#include <Eigen/Dense>

#include "finder/types.hpp"

namespace finder {

// Relative eigenvalue cutoff: anything below rank_tol * lambda_max counts
// as numerically zero rank.
inline constexpr double kDefaultRankTol = 1e-12;

// Spectral decomposition of an empirical covariance operator, i.e. the
// ingredients of a truncated Karhunen-Loeve expansion of the underlying
// random vector: v = mean + sum_r sqrt(lambda_r) Y_r phi_r with the Y_r
// zero-mean, unit-variance and uncorrelated.
struct Eigensystem {
    Eigen::VectorXd mean;         // F (zero unless the caller supplies one)
    Eigen::VectorXd eigenvalues;  // R, sorted descending, all >= 0
    Eigen::MatrixXd eigenvectors; // F x R, orthonormal columns
    Index effective_rank = 0;     // eigenvalues above rank_tol * lambda_max

    Index dim() const { return eigenvectors.rows(); }
    Index size() const { return eigenvalues.size(); }
};

// Column-wise sample mean of the rows.
Eigen::VectorXd empirical_mean(const Eigen::MatrixXd& rows);
Eigen::VectorXd empirical_mean(const Dataset& data);

// Unbiased empirical covariance around the given mean: the rows are
// shifted by `mean` and the outer-product sum is divided by N - 1.
// Requires at least two rows.
Eigen::MatrixXd empirical_covariance(const Eigen::MatrixXd& rows,
                                     const Eigen::VectorXd& mean);
Eigen::MatrixXd empirical_covariance(const Dataset& data,
                                     const Eigen::VectorXd& mean);

// Rows shifted by the reference mean (which need not be their own mean;
// the two-class construction centres both classes on the first class).
Eigen::MatrixXd centered(const Eigen::MatrixXd& rows,
                         const Eigen::VectorXd& reference_mean);
Dataset center(const Dataset& data, const Eigen::VectorXd& reference_mean);

// Deterministic sign convention: flip each column so that its entry of
// largest magnitude (first such entry on ties) is positive.
void apply_sign_convention(Eigen::Ref<Eigen::MatrixXd> vectors);

// Full eigendecomposition of a symmetric PSD matrix.  All dim(cov) pairs
// are returned, eigenvalues descending; values below rank_tol * lambda_max
// (including small negative noise) are clamped to exactly zero.  Throws
// NumericError if the input is materially non-symmetric or indefinite.
Eigensystem eigendecompose(const Eigen::MatrixXd& cov,
                           double rank_tol = kDefaultRankTol);

// Covariance eigenpairs computed through the N x N Gram matrix
// G = X X^T / (N - 1) of already-centered rows X, for the N < F regime.
// Only the pairs above the rank tolerance are returned (at most N - 1);
// eigenvectors are lifted back to feature space and re-normalized.
Eigensystem eigendecompose_dual(const Eigen::MatrixXd& centered_rows,
                                double rank_tol = kDefaultRankTol);

// Sum of the eigenvalues after the first m: the expected squared error of
// the rank-m truncation.
double truncation_error(const Eigensystem& eig, Index m);

// Smallest m whose leading eigenvalue sum reaches `fraction` of the total
// (fraction in (0, 1]).  Throws DataError when the spectrum is all zero.
Index energy_truncation(const Eigensystem& eig, double fraction);

} // namespace finder
