#include "finder/synthetic.hpp"

#include <sstream>

namespace finder {

void SynthSpec::validate() const {
    const Index f = dim();
    const Index r = rank();
    if (f < 1) throw DataError("SynthSpec: dimension must be at least 1");
    if (eigenvectors.rows() != f || eigenvectors.cols() != r)
        throw DataError("SynthSpec: eigenvector shape does not match");
    for (Index i = 0; i < r; ++i) {
        if (!(eigenvalues[i] > 0.0))
            throw DataError("SynthSpec: eigenvalues must be positive");
        if (i + 1 < r && eigenvalues[i] < eigenvalues[i + 1])
            throw DataError("SynthSpec: eigenvalues must be non-increasing");
    }
    if (r > 0) {
        const Eigen::MatrixXd gram =
            eigenvectors.transpose() * eigenvectors;
        const double err =
            (gram - Eigen::MatrixXd::Identity(r, r)).cwiseAbs().maxCoeff();
        if (err > 1e-10) {
            std::ostringstream msg;
            msg << "SynthSpec: eigenvectors not orthonormal (deviation "
                << err << ")";
            throw DataError(msg.str());
        }
    }
}

Eigen::MatrixXd SynthSpec::covariance() const {
    return eigenvectors * eigenvalues.asDiagonal() *
           eigenvectors.transpose();
}

Dataset sample(const SynthSpec& spec, Index n) {
    if (n < 1) throw UsageError("sample: n must be at least 1");
    spec.validate();

    const Index f = spec.dim();
    const Index r = spec.rank();
    const Eigen::VectorXd scale = spec.eigenvalues.cwiseSqrt();

    SeedStream stream(spec.seed);
    Dataset out;
    out.values.resize(n, f);
    for (Index i = 0; i < n; ++i) {
        Eigen::VectorXd row = spec.mean;
        for (Index k = 0; k < r; ++k)
            row += scale[k] * stream.draw(spec.law) * spec.eigenvectors.col(k);
        out.values.row(i) = row;
    }
    return out;
}

std::pair<SynthSpec, SynthSpec> two_class_scenario(
    Index f, const Eigen::VectorXd& shared_mean,
    const Eigen::VectorXd& a_spectrum, const Eigen::VectorXd& b_spectrum,
    Index overlap_dims, std::uint64_t seed) {
    const Index r_a = a_spectrum.size();
    const Index r_b = b_spectrum.size();
    if (shared_mean.size() != f)
        throw DataError("two_class_scenario: mean length differs from F");
    if (overlap_dims < 0 || overlap_dims > std::min(r_a, r_b))
        throw UsageError("two_class_scenario: overlap_dims exceeds a spectrum");
    // Class B needs overlap_dims shared axes plus r_b - overlap_dims fresh
    // ones placed after class A's block.
    if (r_a + (r_b - overlap_dims) > f) {
        std::ostringstream msg;
        msg << "two_class_scenario: " << r_a << " + (" << r_b << " - "
            << overlap_dims << ") directions exceed dimension " << f;
        throw UsageError(msg.str());
    }

    SynthSpec a;
    a.mean = shared_mean;
    a.eigenvalues = a_spectrum;
    a.eigenvectors = Eigen::MatrixXd::Zero(f, r_a);
    for (Index k = 0; k < r_a; ++k) a.eigenvectors(k, k) = 1.0;
    a.seed = seed;

    SynthSpec b;
    b.mean = shared_mean;
    b.eigenvalues = b_spectrum;
    b.eigenvectors = Eigen::MatrixXd::Zero(f, r_b);
    for (Index k = 0; k < r_b; ++k) {
        const Index axis = k < overlap_dims ? k : r_a + (k - overlap_dims);
        b.eigenvectors(axis, k) = 1.0;
    }
    b.seed = seed + 1;

    a.validate();
    b.validate();
    return {std::move(a), std::move(b)};
}

} // namespace finder
