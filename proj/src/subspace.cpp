#include "finder/subspace.hpp"

#include <Eigen/QR>
#include <numeric>
#include <sstream>
#include <vector>

namespace finder {

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::Direct: return "direct";
        case Variant::Mls: return "mls";
        case Variant::AcaS: return "aca-s";
        case Variant::AcaL: return "aca-l";
        case Variant::Complement: return "complement";
    }
    return "?";
}

Eigen::VectorXd FeatureTransform::apply(const Eigen::VectorXd& v) const {
    if (v.size() != basis.dim())
        throw DataError("FeatureTransform: sample has wrong dimension");
    return basis.vectors.transpose() * (v - class_a_mean);
}

Eigen::MatrixXd FeatureTransform::apply_rows(const Eigen::MatrixXd& rows) const {
    if (rows.cols() != basis.dim())
        throw DataError("FeatureTransform: samples have wrong dimension");
    return (rows.rowwise() - class_a_mean.transpose()) * basis.vectors;
}

namespace {

void check_m_a(const Eigensystem& eig_a, Index m_a) {
    if (m_a < 0 || m_a > eig_a.effective_rank || m_a >= eig_a.dim()) {
        std::ostringstream msg;
        msg << "m_a = " << m_a << " out of range: need 0 <= m_a <= "
            << eig_a.effective_rank << " (effective rank) and m_a < "
            << eig_a.dim() << " (dimension)";
        throw UsageError(msg.str());
    }
}

void check_m_res(Index m_res, Index avail) {
    if (m_res < 1 || m_res > avail) {
        std::ostringstream msg;
        msg << "m_res = " << m_res << " out of range [1, " << avail
            << "] (residual space has dimension " << avail << ")";
        throw UsageError(msg.str());
    }
}

} // namespace

SubspaceBasis complement_basis(const Eigensystem& eig_a, Index m_a) {
    check_m_a(eig_a, m_a);
    const Index f = eig_a.dim();

    SubspaceBasis out;
    out.variant = Variant::Complement;
    out.parent_m_a = m_a;

    if (m_a == 0) {
        out.vectors = Eigen::MatrixXd::Identity(f, f);
        return out;
    }

    // Householder QR of the kept eigenvectors: the trailing F - m_a
    // columns of Q span the orthogonal complement exactly.
    const Eigen::MatrixXd kept = eig_a.eigenvectors.leftCols(m_a);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(kept);
    const Eigen::MatrixXd q = qr.householderQ();
    out.vectors = q.rightCols(f - m_a);
    apply_sign_convention(out.vectors);
    return out;
}

FeatureTransform direct_residual(const Eigensystem& eig_a, Index m_a) {
    FeatureTransform out;
    out.class_a_mean = eig_a.mean;
    out.basis = complement_basis(eig_a, m_a);
    out.basis.variant = Variant::Direct;
    return out;
}

SubspaceBasis mls_basis(Index f, const Eigensystem& eig_a, Index m_a,
                        Index m_res) {
    if (f < 1) throw UsageError("mls_basis: dimension must be positive");
    if (m_a > 0 && eig_a.dim() != f)
        throw DataError("mls_basis: eigensystem dimension differs from F");
    if (m_a > 0) check_m_a(eig_a, m_a);
    check_m_res(m_res, f - m_a);

    // Candidate list, coarse to fine: the constant vector first, then one
    // mean-difference vector per dyadic index interval of length >= 2.
    // Intervals are visited breadth-first, so within a level they appear
    // left to right.
    std::vector<Eigen::VectorXd> candidates;
    candidates.emplace_back(
        Eigen::VectorXd::Constant(f, 1.0 / std::sqrt(static_cast<double>(f))));
    std::vector<std::pair<Index, Index>> intervals{{0, f}};
    for (size_t head = 0; head < intervals.size(); ++head) {
        const auto [a, b] = intervals[head];
        if (b - a < 2) continue;
        const Index mid = a + (b - a + 1) / 2;
        Eigen::VectorXd c = Eigen::VectorXd::Zero(f);
        c.segment(a, mid - a).setConstant(1.0);
        c.segment(mid, b - mid).setConstant(-1.0);
        candidates.push_back(c / c.norm());
        intervals.emplace_back(a, mid);
        intervals.emplace_back(mid, b);
    }

    const Eigen::MatrixXd kept =
        m_a > 0 ? Eigen::MatrixXd(eig_a.eigenvectors.leftCols(m_a))
                : Eigen::MatrixXd(f, 0);
    Eigen::MatrixXd accepted(f, m_res);
    Index n_accepted = 0;

    for (const Eigen::VectorXd& c : candidates) {
        if (n_accepted == m_res) break;
        Eigen::VectorXd r = c;
        // Modified Gram-Schmidt, run twice: the second pass removes the
        // rounding the first one leaves behind.
        for (int pass = 0; pass < 2; ++pass) {
            for (Index j = 0; j < m_a; ++j)
                r -= kept.col(j).dot(r) * kept.col(j);
            for (Index j = 0; j < n_accepted; ++j)
                r -= accepted.col(j).dot(r) * accepted.col(j);
        }
        const double norm = r.norm();
        if (norm < 1e-8) continue; // lies in the span already
        accepted.col(n_accepted++) = r / norm;
    }

    if (n_accepted < m_res) {
        std::ostringstream msg;
        msg << "multilevel basis: only " << n_accepted << " of " << m_res
            << " requested directions are achievable for dimension " << f
            << " with m_a = " << m_a;
        throw NumericError(msg.str());
    }

    SubspaceBasis out;
    out.vectors = std::move(accepted);
    out.variant = Variant::Mls;
    out.parent_m_a = m_a;
    return out;
}

FeatureTransform mls_residual(const Eigensystem& eig_a, Index m_a,
                              Index m_res) {
    FeatureTransform out;
    out.class_a_mean = eig_a.mean;
    out.basis = mls_basis(eig_a.dim(), eig_a, m_a, m_res);
    return out;
}

FeatureTransform aca_subspace(const Eigensystem& eig_a,
                              const Eigen::MatrixXd& cov_b, Index m_a,
                              Index m_res, AcaMode mode) {
    check_m_a(eig_a, m_a);
    const Index f = eig_a.dim();
    if (cov_b.rows() != f || cov_b.cols() != f)
        throw DataError("aca_subspace: class-B covariance has wrong shape");
    check_m_res(m_res, f - m_a);

    const SubspaceBasis comp = complement_basis(eig_a, m_a);
    const Eigen::MatrixXd& v = comp.vectors;

    // Class-B covariance compressed into the residual space.  Symmetrize
    // explicitly; the congruence picks up asymmetry at round-off level.
    Eigen::MatrixXd g = v.transpose() * cov_b * v;
    g = 0.5 * (g + g.transpose());
    const Eigensystem gsys = eigendecompose(g); // descending

    // Select m_res indices from the requested end of the spectrum, ties
    // resolved by stored position (stable sort), so a degenerate spectrum
    // yields the first stored eigenvectors in either mode.
    const Index total = gsys.size();
    std::vector<Index> order(static_cast<size_t>(total));
    std::iota(order.begin(), order.end(), Index{0});
    if (mode == AcaMode::Small)
        std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
            return gsys.eigenvalues[a] < gsys.eigenvalues[b];
        });
    // Large mode keeps the descending stored order as is.

    Eigen::MatrixXd selected(v.cols(), m_res);
    double objective = 0.0;
    for (Index i = 0; i < m_res; ++i) {
        selected.col(i) = gsys.eigenvectors.col(order[static_cast<size_t>(i)]);
        objective += gsys.eigenvalues[order[static_cast<size_t>(i)]];
    }

    FeatureTransform out;
    out.class_a_mean = eig_a.mean;
    out.basis.vectors = v * selected;
    apply_sign_convention(out.basis.vectors);
    out.basis.variant = (mode == AcaMode::Small) ? Variant::AcaS : Variant::AcaL;
    out.basis.parent_m_a = m_a;
    out.objective = objective;
    return out;
}

} // namespace finder
