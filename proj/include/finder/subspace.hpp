#pragma once

#include <optional>

#include "finder/kle.hpp"
#include "finder/types.hpp"

namespace finder {

// How a residual subspace was produced.
enum class Variant { Direct, Mls, AcaS, AcaL, Complement };

const char* variant_name(Variant v);

// Orthonormal set of directions, every one of them orthogonal to the
// leading m_a eigenvectors of class A that it was built against.
struct SubspaceBasis {
    Eigen::MatrixXd vectors; // F x M, orthonormal columns
    Variant variant = Variant::Complement;
    Index parent_m_a = 0;    // truncation order of the class-A expansion

    Index dim() const { return vectors.rows(); }
    Index m_res() const { return vectors.cols(); }
};

// A trained feature map: subtract the class-A mean, then project onto the
// residual directions.  `objective` carries the optimizer value (sum of
// the selected compressed-covariance eigenvalues) when the basis came from
// the adapted construction, and is empty otherwise.
struct FeatureTransform {
    Eigen::VectorXd class_a_mean;
    SubspaceBasis basis;
    std::optional<double> objective;

    Index input_dim() const { return basis.dim(); }
    Index output_dim() const { return basis.m_res(); }

    Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
    // One transformed sample per row: (N x F) -> (N x M_res).
    Eigen::MatrixXd apply_rows(const Eigen::MatrixXd& rows) const;
};

// Orthonormal basis of the orthogonal complement of the first m_a
// eigenvectors (dimension F - m_a; the identity basis when m_a = 0).
// Built by Householder QR completion, which is deterministic.
// Requires m_a <= effective rank and m_a < F.
SubspaceBasis complement_basis(const Eigensystem& eig_a, Index m_a);

// Variant "direct": the whole complement is the feature space.
FeatureTransform direct_residual(const Eigensystem& eig_a, Index m_a);

// Variant "mls": first m_res vectors of a Haar-like multilevel basis of
// the complement.  Dyadic mean/difference candidates over the coordinate
// axis {0..f-1} are orthogonalized (modified Gram-Schmidt with one
// re-orthogonalization pass) against the class-A directions and against
// each other, coarse to fine, ties by left endpoint; candidates whose
// residual norm falls below 1e-8 are dropped as dependent.  Throws
// NumericError when fewer than m_res independent candidates survive,
// reporting how many were achievable.
SubspaceBasis mls_basis(Index f, const Eigensystem& eig_a, Index m_a,
                        Index m_res);
FeatureTransform mls_residual(const Eigensystem& eig_a, Index m_a,
                              Index m_res);

// Which end of the compressed spectrum the adapted construction keeps.
enum class AcaMode { Small, Large };

// Variants "aca-s" / "aca-l": compress the class-B covariance into the
// complement, G = V^T C_B V, take the eigenvectors t_m of its m_res
// smallest (S) or largest (L) eigenvalues, and map them back as
// s_m = V t_m.  Columns come out ascending by eigenvalue in small mode
// and descending in large mode; ties keep the eigensolver's stored order.
FeatureTransform aca_subspace(const Eigensystem& eig_a,
                              const Eigen::MatrixXd& cov_b, Index m_a,
                              Index m_res, AcaMode mode);

} // namespace finder
