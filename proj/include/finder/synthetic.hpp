#pragma once

#include <cstdint>
#include <utility>

#include "finder/rng.hpp"
#include "finder/types.hpp"

namespace finder {

// Ground-truth description of a random vector given directly by its
// expansion: v = mean + sum_r sqrt(eigenvalues[r]) * y_r * eigenvectors[:,r]
// with the coefficients y_r drawn independently from `law` (independent =>
// uncorrelated, which is all the expansion requires).
struct SynthSpec {
    Eigen::VectorXd mean;         // F
    Eigen::VectorXd eigenvalues;  // R, positive, descending
    Eigen::MatrixXd eigenvectors; // F x R, orthonormal columns
    CoefficientLaw law = CoefficientLaw::StandardGaussian;
    std::uint64_t seed = 0;

    Index dim() const { return mean.size(); }
    Index rank() const { return eigenvalues.size(); }

    // Throws DataError when shapes disagree, eigenvalues are not positive
    // descending, or the eigenvectors fail orthonormality at 1e-10.
    void validate() const;

    // The covariance this spec realizes: sum_r lambda_r phi_r phi_r^T.
    Eigen::MatrixXd covariance() const;
};

// Draw n rows.  Deterministic per (spec.seed, n): row i uses coefficients
// r = 0..R-1 in order, one law draw each.
Dataset sample(const SynthSpec& spec, Index n);

// Two classes sharing a mean but not a distribution: class A occupies the
// leading coordinate axes e_0..e_{R_A-1} with a_spectrum, class B shares
// the first overlap_dims of them and spends the rest of its spectrum on
// axes disjoint from A's span.  Class B's stream is seeded with seed + 1
// so the two classes never share coefficient draws.
std::pair<SynthSpec, SynthSpec> two_class_scenario(
    Index f, const Eigen::VectorXd& shared_mean,
    const Eigen::VectorXd& a_spectrum, const Eigen::VectorXd& b_spectrum,
    Index overlap_dims, std::uint64_t seed);

} // namespace finder
