#include <doctest.h>

#include <Eigen/Dense>

#include "finder/bounds.hpp"
#include "finder/subspace.hpp"
#include "oracles.hpp"

using namespace finder;

namespace {

SubspaceBasis basis_of(const Eigen::MatrixXd& columns) {
    SubspaceBasis b;
    b.vectors = columns;
    return b;
}

} // namespace

TEST_SUITE("bounds") {

TEST_CASE("markov_rhs collapses correctly in the aligned cases") {
    Eigensystem eig;
    eig.mean = Eigen::VectorXd::Zero(3);
    eig.eigenvalues = Eigen::Vector2d(2, 1);
    eig.eigenvectors = Eigen::MatrixXd::Identity(3, 2);
    eig.effective_rank = 2;

    // Basis orthogonal to every mode: zero bound.
    const MarkovBound off =
        markov_rhs(eig, basis_of(Eigen::Vector3d::UnitZ()), 0.5);
    CHECK(off.rhs == 0.0);
    CHECK(off.expected_energy == 0.0);

    // s_1 = phi_1 at epsilon 1: the bound is exactly lambda_1.
    const MarkovBound aligned =
        markov_rhs(eig, basis_of(Eigen::Vector3d::UnitX()), 1.0);
    CHECK(aligned.rhs == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(aligned.per_term.rows() == 1);
    CHECK(aligned.per_term.cols() == 2);
}

TEST_CASE("markov_rhs equals the brute-force double sum") {
    oracle::TestRng rng(31);
    const Eigensystem eig = eigendecompose(oracle::random_spd(rng, 7));
    const Eigen::MatrixXd s = oracle::random_orthonormal(rng, 7, 3);

    for (double eps : {0.5, 1.0, 2.0}) {
        const MarkovBound bound = markov_rhs(eig, basis_of(s), eps);
        const double want = oracle::brute_markov_rhs(
            eig.eigenvalues, eig.eigenvectors, s, eps);
        CHECK(bound.rhs == doctest::Approx(want).epsilon(1e-12));
        CHECK(bound.rhs ==
              doctest::Approx(bound.per_term.sum() / (eps * eps))
                  .epsilon(1e-12));
        CHECK(bound.epsilon == eps);
    }

    // Monotone non-increasing in epsilon.
    const double r1 = markov_rhs(eig, basis_of(s), 1.0).rhs;
    const double r2 = markov_rhs(eig, basis_of(s), 2.0).rhs;
    CHECK(r1 >= r2);

    CHECK_THROWS_AS(markov_rhs(eig, basis_of(s), 0.0), UsageError);
    CHECK_THROWS_AS(markov_rhs(eig, basis_of(s), -1.0), UsageError);
    CHECK_THROWS_AS(
        markov_rhs(eig, basis_of(Eigen::MatrixXd::Identity(5, 2)), 1.0),
        DataError);
}

TEST_CASE("vacuous bounds are reported, not clamped") {
    Eigensystem eig;
    eig.mean = Eigen::VectorXd::Zero(2);
    eig.eigenvalues = Eigen::VectorXd::Constant(1, 4.0);
    eig.eigenvectors = Eigen::MatrixXd::Identity(2, 1);
    eig.effective_rank = 1;
    const MarkovBound loose =
        markov_rhs(eig, basis_of(Eigen::Vector2d::UnitX()), 0.5);
    CHECK(loose.rhs == doctest::Approx(16.0).epsilon(1e-12));
}

TEST_CASE("tail_bound sums the trailing eigenvalues") {
    Eigensystem eig;
    eig.eigenvalues.resize(4);
    eig.eigenvalues << 4, 3, 2, 1;
    eig.eigenvectors = Eigen::Matrix4d::Identity();
    eig.effective_rank = 4;

    CHECK(tail_bound(eig, 2) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(tail_bound(eig, 4) == 0.0);
    CHECK_THROWS_AS(tail_bound(eig, 5), UsageError);

    oracle::TestRng rng(32);
    const Eigensystem r = eigendecompose(oracle::random_spd(rng, 9));
    double want = 0.0;
    for (Index i = 3; i < r.size(); ++i) want += r.eigenvalues[i];
    CHECK(tail_bound(r, 3) == doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("any basis inside H_A-perp is dominated by the tail") {
    oracle::TestRng rng(33);
    const Eigensystem eig = eigendecompose(oracle::random_spd(rng, 12));
    const Eigen::MatrixXd cov_b = oracle::random_spd(rng, 12);
    const Index m_a = 4;
    const double eps = 0.8;
    const double cap = tail_bound(eig, m_a) / (eps * eps) + 1e-9;

    CHECK(markov_rhs(eig, complement_basis(eig, m_a), eps).rhs <= cap);
    CHECK(markov_rhs(eig, mls_basis(12, eig, m_a, 5), eps).rhs <= cap);
    for (AcaMode mode : {AcaMode::Small, AcaMode::Large})
        CHECK(markov_rhs(eig, aca_subspace(eig, cov_b, m_a, 5, mode).basis,
                         eps)
                  .rhs <= cap);
}

TEST_CASE("the ACA-S residual bounds class B tighter than ACA-L") {
    oracle::TestRng rng(34);
    const Eigensystem eig_a = eigendecompose(oracle::random_spd(rng, 10));
    const Eigen::MatrixXd cov_b = oracle::random_spd(rng, 10);
    const Eigensystem eig_b = eigendecompose(cov_b);

    const FeatureTransform s = aca_subspace(eig_a, cov_b, 3, 4, AcaMode::Small);
    const FeatureTransform l = aca_subspace(eig_a, cov_b, 3, 4, AcaMode::Large);
    const double rhs_s = markov_rhs(eig_b, s.basis, 1.0).rhs;
    const double rhs_l = markov_rhs(eig_b, l.basis, 1.0).rhs;
    CHECK(rhs_s <= rhs_l + 1e-9);

    // The double sum against eig_B is exactly the captured-B-energy
    // objective each mode optimizes.
    CHECK(rhs_s == doctest::Approx(*s.objective).epsilon(1e-9));
    CHECK(rhs_l == doctest::Approx(*l.objective).epsilon(1e-9));
}

} // TEST_SUITE
