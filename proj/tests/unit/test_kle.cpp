#include <doctest.h>

#include <Eigen/Dense>

#include "finder/kle.hpp"
#include "oracles.hpp"

using namespace finder;

TEST_SUITE("kle") {

TEST_CASE("center subtracts the reference mean and keeps labels") {
    Dataset d;
    d.values.resize(2, 2);
    d.values << 1, 2, 3, 4;
    d.labels = {ClassLabel::A, ClassLabel::B};
    Eigen::VectorXd mean(2);
    mean << 1, 2;

    const Dataset c = center(d, mean);
    Eigen::MatrixXd want(2, 2);
    want << 0, 0, 2, 2;
    CHECK((c.values - want).cwiseAbs().maxCoeff() == 0.0);
    CHECK(c.labels == d.labels);

    const Dataset same = center(d, Eigen::VectorXd::Zero(2));
    CHECK((same.values - d.values).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(center(d, Eigen::VectorXd::Zero(3)), DataError);
}

TEST_CASE("centering on the column mean zeroes the column sums") {
    oracle::TestRng rng(11);
    const Eigen::MatrixXd rows = oracle::random_matrix(rng, 5, 7);
    const Eigen::MatrixXd c = centered(rows, empirical_mean(rows));
    CHECK(c.colwise().sum().cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("empirical_mean matches hand cases and the brute-force oracle") {
    Eigen::MatrixXd two(2, 2);
    two << 0, 0, 2, 2;
    CHECK(empirical_mean(two).isApprox(Eigen::Vector2d(1, 1), 0.0));

    Eigen::MatrixXd one(1, 3);
    one << 4, 5, 6;
    CHECK((empirical_mean(one) - one.row(0).transpose()).norm() == 0.0);

    oracle::TestRng rng(12);
    const Eigen::MatrixXd rows = oracle::random_matrix(rng, 20, 5);
    CHECK((empirical_mean(rows) - oracle::brute_mean(rows))
              .cwiseAbs()
              .maxCoeff() < 1e-13);

    CHECK_THROWS_AS(empirical_mean(Eigen::MatrixXd(0, 3)), DataError);
}

TEST_CASE("empirical_covariance: divisor N-1, hand case, brute oracle") {
    Eigen::MatrixXd rows(2, 2);
    rows << 1, 0, -1, 0;
    const Eigen::MatrixXd c =
        empirical_covariance(rows, Eigen::Vector2d::Zero());
    Eigen::MatrixXd want(2, 2);
    want << 2, 0, 0, 0;
    CHECK((c - want).cwiseAbs().maxCoeff() == 0.0);

    // Identical rows equal to the mean: exactly zero.
    Eigen::MatrixXd flat = Eigen::MatrixXd::Constant(4, 3, 2.5);
    const Eigen::MatrixXd z =
        empirical_covariance(flat, Eigen::Vector3d::Constant(2.5));
    CHECK(z.cwiseAbs().maxCoeff() == 0.0);

    oracle::TestRng rng(13);
    const Eigen::MatrixXd r = oracle::random_matrix(rng, 6, 4);
    const Eigen::VectorXd mean = empirical_mean(r);
    CHECK((empirical_covariance(r, mean) - oracle::brute_covariance(r, mean))
              .cwiseAbs()
              .maxCoeff() < 1e-12);

    CHECK_THROWS_AS(empirical_covariance(Eigen::MatrixXd::Zero(1, 2),
                                         Eigen::Vector2d::Zero()),
                    DataError);
}

TEST_CASE("eigendecompose: diagonal case sorts and signs deterministically") {
    Eigen::Matrix3d cov = Eigen::Vector3d(3, 1, 2).asDiagonal();
    const Eigensystem eig = eigendecompose(cov);

    REQUIRE(eig.size() == 3);
    CHECK(eig.eigenvalues[0] == doctest::Approx(3).epsilon(1e-12));
    CHECK(eig.eigenvalues[1] == doctest::Approx(2).epsilon(1e-12));
    CHECK(eig.eigenvalues[2] == doctest::Approx(1).epsilon(1e-12));
    CHECK(eig.effective_rank == 3);

    // Permuted identity columns, each with its largest entry positive.
    Eigen::Matrix3d want;
    want << 1, 0, 0, 0, 0, 1, 0, 1, 0;
    CHECK((eig.eigenvectors - want).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("eigendecompose: degenerate spectrum keeps postconditions") {
    const Eigensystem eig = eigendecompose(Eigen::Matrix4d::Identity());
    REQUIRE(eig.size() == 4);
    for (Index r = 0; r < 4; ++r)
        CHECK(eig.eigenvalues[r] == doctest::Approx(1).epsilon(1e-12));
    const Eigen::MatrixXd gram =
        eig.eigenvectors.transpose() * eig.eigenvectors;
    CHECK((gram - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("eigendecompose matches the characteristic-polynomial oracle") {
    oracle::TestRng rng(14);
    for (int rep = 0; rep < 5; ++rep) {
        const Eigen::Matrix3d cov = oracle::random_spd(rng, 3);
        const Eigen::Vector3d want = oracle::charpoly_eigs_3x3(cov);
        const Eigensystem eig = eigendecompose(cov);
        REQUIRE(eig.size() == 3);
        for (int r = 0; r < 3; ++r)
            CHECK(std::abs(eig.eigenvalues[r] - want[r]) < 1e-9);
    }
}

TEST_CASE("eigendecompose rejects asymmetry and indefiniteness") {
    Eigen::Matrix2d bad;
    bad << 1, 0.5, 0.4, 1;
    CHECK_THROWS_AS(eigendecompose(bad), NumericError);

    Eigen::Matrix2d indef;
    indef << 1, 0, 0, -0.5;
    CHECK_THROWS_AS(eigendecompose(indef), NumericError);
}

TEST_CASE("eigendecompose clamps below-tolerance eigenvalues to zero") {
    Eigen::Matrix3d cov = Eigen::Vector3d(4, 1e-20, 0).asDiagonal();
    const Eigensystem eig = eigendecompose(cov);
    REQUIRE(eig.size() == 3);
    CHECK(eig.effective_rank == 1);
    CHECK(eig.eigenvalues[1] == 0.0);
    CHECK(eig.eigenvalues[2] == 0.0);
}

TEST_CASE("eigendecompose is bitwise deterministic") {
    oracle::TestRng rng(15);
    const Eigen::MatrixXd cov = oracle::random_spd(rng, 8);
    const Eigensystem a = eigendecompose(cov);
    const Eigensystem b = eigendecompose(cov);
    CHECK((a.eigenvalues.array() == b.eigenvalues.array()).all());
    CHECK((a.eigenvectors.array() == b.eigenvectors.array()).all());
}

TEST_CASE("dual route agrees with the direct route for N < F") {
    oracle::TestRng rng(16);
    const Eigen::MatrixXd rows = oracle::random_matrix(rng, 3, 50);
    const Eigen::MatrixXd c = centered(rows, empirical_mean(rows));

    const Eigensystem dual = eigendecompose_dual(c);
    const Eigensystem direct =
        eigendecompose(empirical_covariance(rows, empirical_mean(rows)));

    REQUIRE(dual.size() == dual.effective_rank); // zero pairs dropped
    REQUIRE(dual.size() <= 2);                   // at most N - 1
    for (Index r = 0; r < dual.size(); ++r) {
        const double rel = std::abs(dual.eigenvalues[r] -
                                    direct.eigenvalues[r]) /
                           direct.eigenvalues[r];
        CHECK(rel < 1e-8);
        // Sign convention pins the vectors, not just the spans.
        CHECK((dual.eigenvectors.col(r) - direct.eigenvectors.col(r))
                  .cwiseAbs()
                  .maxCoeff() < 1e-7);
    }
}

TEST_CASE("dual route: rank-1 data and the antipodal hand case") {
    Eigen::VectorXd w(5);
    w << 3, 0, 4, 0, 0;

    Eigen::MatrixXd rank1(4, 5);
    for (Index i = 0; i < 4; ++i)
        rank1.row(i) = (static_cast<double>(i) - 1.5) * w.transpose();
    const Eigensystem one =
        eigendecompose_dual(centered(rank1, empirical_mean(rank1)));
    CHECK(one.effective_rank == 1);
    CHECK(one.size() == 1);

    // Two rows +w, -w are already centered: C = 2 w w^T / (2 - 1).
    Eigen::MatrixXd antipodal(2, 5);
    antipodal.row(0) = w;
    antipodal.row(1) = -w;
    const Eigensystem eig = eigendecompose_dual(antipodal);
    REQUIRE(eig.size() == 1);
    CHECK(eig.eigenvalues[0] == doctest::Approx(2 * w.squaredNorm())
                                    .epsilon(1e-12));
    CHECK((eig.eigenvectors.col(0) - w / w.norm()).cwiseAbs().maxCoeff() <
          1e-12);

    CHECK_THROWS_AS(eigendecompose_dual(Eigen::MatrixXd::Zero(1, 5)),
                    DataError);
}

TEST_CASE("truncation_error sums the tail") {
    Eigensystem eig;
    eig.eigenvalues.resize(3);
    eig.eigenvalues << 3, 2, 1;
    eig.eigenvectors = Eigen::Matrix3d::Identity();
    eig.effective_rank = 3;

    CHECK(truncation_error(eig, 1) == doctest::Approx(3).epsilon(1e-15));
    CHECK(truncation_error(eig, 3) == 0.0);
    CHECK_THROWS_AS(truncation_error(eig, 4), UsageError);
    CHECK_THROWS_AS(truncation_error(eig, -1), UsageError);

    oracle::TestRng rng(17);
    const Eigensystem r = eigendecompose(oracle::random_spd(rng, 6));
    double tail = 0.0;
    for (Index i = 2; i < r.size(); ++i) tail += r.eigenvalues[i];
    CHECK(truncation_error(r, 2) == doctest::Approx(tail).epsilon(1e-14));
}

TEST_CASE("energy_truncation finds the smallest covering count") {
    Eigensystem eig;
    eig.eigenvalues.resize(2);
    eig.eigenvalues << 9, 1;
    eig.eigenvectors = Eigen::Matrix2d::Identity();
    eig.effective_rank = 2;

    CHECK(energy_truncation(eig, 0.9) == 1);
    CHECK(energy_truncation(eig, 1.0) == eig.effective_rank);
    CHECK_THROWS_AS(energy_truncation(eig, 0.0), UsageError);
    CHECK_THROWS_AS(energy_truncation(eig, 1.5), UsageError);

    Eigensystem zero;
    zero.eigenvalues = Eigen::VectorXd::Zero(3);
    zero.eigenvectors = Eigen::Matrix3d::Identity();
    zero.effective_rank = 0;
    CHECK_THROWS_AS(energy_truncation(zero, 0.5), DataError);

    oracle::TestRng rng(18);
    const Eigensystem r = eigendecompose(oracle::random_spd(rng, 7));
    const double total = r.eigenvalues.sum();
    double acc = 0.0;
    Index want = 0;
    for (Index i = 0; i < r.size(); ++i) {
        acc += r.eigenvalues[i];
        if (acc >= 0.95 * total) {
            want = i + 1;
            break;
        }
    }
    CHECK(energy_truncation(r, 0.95) == want);
}

TEST_CASE("random SPD spectra: orthonormal, reconstructive, descending") {
    oracle::TestRng rng(19);
    for (int rep = 0; rep < 10; ++rep) {
        const Index f = 3 + static_cast<Index>(rng.uniform() * 28);
        const Eigen::MatrixXd cov = oracle::random_spd(rng, f);
        const Eigensystem eig = eigendecompose(cov);

        const Eigen::MatrixXd gram =
            eig.eigenvectors.transpose() * eig.eigenvectors;
        CHECK((gram - Eigen::MatrixXd::Identity(f, f)).cwiseAbs().maxCoeff() <
              1e-10);

        const Eigen::MatrixXd recon = eig.eigenvectors *
                                      eig.eigenvalues.asDiagonal() *
                                      eig.eigenvectors.transpose();
        CHECK((recon - cov).norm() / cov.norm() < 1e-8);

        for (Index r = 0; r + 1 < eig.size(); ++r)
            CHECK(eig.eigenvalues[r] >= eig.eigenvalues[r + 1]);
        CHECK(eig.eigenvalues[eig.size() - 1] >= 0.0);
    }
}

TEST_CASE("top-M truncation captures more energy than random subspaces") {
    oracle::TestRng rng(20);
    for (int rep = 0; rep < 3; ++rep) {
        const Eigen::MatrixXd cov = oracle::random_spd(rng, 6);
        const Eigensystem eig = eigendecompose(cov);
        for (Index m : {Index{1}, Index{2}, Index{3}}) {
            double best = 0.0;
            for (Index r = 0; r < m; ++r) best += eig.eigenvalues[r];
            for (int cand = 0; cand < 200; ++cand) {
                const Eigen::MatrixXd s =
                    oracle::random_orthonormal(rng, 6, m);
                const double captured = (s.transpose() * cov * s).trace();
                CHECK(best >= captured - 1e-9);
            }
        }
    }
}

} // TEST_SUITE
