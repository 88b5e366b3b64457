"""End-to-end smoke tests for the python bindings.

The numerics are covered in depth by the C++ suites; here we only check
that the module imports, the core operations round-trip numpy arrays, and
errors surface as the right python exceptions.
"""

import numpy as np
import pytest

import finder


def planted_dataset(n_a=8, n_b=4, f=6, seed=3):
    a, b = finder.two_class_scenario(
        f,
        np.zeros(f),
        np.array([4.0, 2.0]),
        np.array([3.0, 1.5]),
        0,
        seed,
    )
    rows_a = finder.sample(a, n_a)
    rows_b = finder.sample(b, n_b)
    values = np.vstack([rows_a.values, rows_b.values])
    labels = ["A"] * n_a + ["B"] * n_b
    return finder.Dataset(values, labels)


def test_eigendecompose_postconditions():
    rng = np.random.default_rng(5)
    a = rng.standard_normal((6, 6))
    cov = a @ a.T + 0.5 * np.eye(6)

    eig = finder.eigendecompose(cov)
    assert np.all(np.diff(eig.eigenvalues) <= 0)
    v = eig.eigenvectors
    assert np.abs(v.T @ v - np.eye(6)).max() < 1e-10
    recon = v @ np.diag(eig.eigenvalues) @ v.T
    assert np.abs(recon - cov).max() < 1e-8
    assert eig.effective_rank == 6


def test_dual_route_matches_direct():
    rng = np.random.default_rng(7)
    x = rng.standard_normal((4, 20))  # wide: fewer samples than features
    mean = finder.empirical_mean(x)
    direct = finder.eigendecompose(finder.empirical_covariance(x, mean))
    dual = finder.eigendecompose_dual(x - mean)
    k = dual.eigenvalues.shape[0]
    assert k == dual.effective_rank <= 3
    assert np.abs(dual.eigenvalues - direct.eigenvalues[:k]).max() < 1e-8


def test_residual_transforms_and_markov_bound():
    eig = finder.eigendecompose(np.diag([4.0, 1.0, 0.25]))
    basis = finder.complement_basis(eig, 1)
    assert basis.m_res == 2

    bound = finder.markov_rhs(eig, basis, 1.0)
    assert bound.rhs == pytest.approx(1.25)  # trailing eigenvalue mass
    assert finder.markov_rhs(eig, basis, 2.0).rhs == pytest.approx(1.25 / 4)
    assert finder.tail_bound(eig, 1) == pytest.approx(1.25)

    transform = finder.aca_subspace(eig, np.eye(3), 1, 2, finder.AcaMode.SMALL)
    assert transform.objective == pytest.approx(2.0)  # isotropic class B
    projected = transform.apply_rows(np.eye(3))
    assert projected.shape == (3, 2)


def test_svm_separates_xor_with_rbf():
    x = np.array([[0.0, 0.0], [1.0, 1.0], [0.0, 1.0], [1.0, 0.0]])
    y = np.array([-1, -1, 1, 1], dtype=np.int32)
    model = finder.svm_train(x, y, finder.Kernel.rbf(1.0), cost=10.0)
    scores = finder.svm_score(model, x)
    assert np.all(np.sign(scores) == y)
    assert abs(model.dual_coefficients.sum()) < 1e-6


def test_lpocv_runs_and_is_deterministic():
    data = planted_dataset()
    config = finder.PipelineConfig()
    config.variant = finder.Variant.ACA_L
    config.m_a = finder.MaPolicy.count(2)
    config.m_res = 2
    config.kernel = finder.KernelType.RBF
    config.threads = 1

    report = finder.run_lpocv(data, config)
    assert len(report.per_round) == 8 * 4
    assert 0.0 <= report.auc <= 1.0
    assert report.m_a_used == 2
    assert finder.run_lpocv(data, config).auc == report.auc


def test_auc_and_accuracy_corner_cases():
    assert finder.auc([0.1, 0.4], [0.35, 0.8]) == 0.75
    assert finder.auc([1.0], [1.0]) == 0.5
    assert finder.accuracy([-1.0, 0.0], [0.5, 2.0]) == 1.0


def test_csv_roundtrip_and_imputation(tmp_path):
    path = str(tmp_path / "data.csv")
    with open(path, "w") as out:
        out.write("x,y,group\n1,2,ctrl\n3,,case\n5,6,ctrl\n")

    data = finder.load_csv(path, "group", "case")
    assert data.labels == ["A", "B", "A"]
    assert data.any_missing()

    filled = finder.knn_impute(data, 2)
    assert not filled.any_missing()
    assert filled.values[1, 1] == pytest.approx(4.0)  # mean of 2 and 6

    out_path = str(tmp_path / "out.csv")
    finder.write_csv(out_path, filled)
    back = finder.load_csv(out_path, "label", "B")
    assert np.array_equal(back.values, filled.values)
    assert back.labels == filled.labels


def test_run_experiment_writes_outputs(tmp_path):
    data = planted_dataset(n_a=6, n_b=3, f=5, seed=9)
    csv_path = str(tmp_path / "input.csv")
    finder.write_csv(csv_path, data)

    config_path = tmp_path / "run.cfg"
    out_dir = tmp_path / "out"
    config_path.write_text(
        f"input_path = {csv_path}\n"
        "label_column = label\n"
        "positive_label = B\n"
        "variant = direct\n"
        "m_a = 1\n"
        "kernel = linear\n"
        "threads = 1\n"
        f"output_dir = {out_dir}\n"
    )
    log = finder.run_experiment(str(config_path))
    assert "auc" in log
    assert (out_dir / "metrics.csv").exists()
    assert (out_dir / "sweep.csv").exists()


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        finder.load_csv("/nonexistent/finder.csv")  # DataError
    with pytest.raises(ValueError):
        finder.make_splits(1, 5, finder.Regime.UNBALANCED)  # UsageError
    with pytest.raises(ArithmeticError):
        finder.eigendecompose(np.array([[0.0, 1.0], [0.0, 0.0]]))
    eig = finder.eigendecompose(np.eye(2))
    with pytest.raises(ValueError):
        finder.truncation_error(eig, 5)
    with pytest.raises(ValueError):
        finder.Dataset(np.zeros((2, 2)), ["A", "x"])
