import numpy as np
import pytest

from quadconv import (
    ActivationParams,
    ConvSpec,
    Dataset,
    DimensionMismatch,
    NegativeRegularizer,
    NonFiniteInput,
    RegressorMatrix,
    SolveStrategy,
    WeightVector,
    build_regressor,
    solve_ls,
    solve_ridge,
)

_PARAMS = ActivationParams(1.0, 1.0, 1.0)


def _random_system(rng, n, f, n_samples=None):
    spec = ConvSpec(n, f)
    N = n_samples if n_samples is not None else 2 * spec.n_weights + 5
    data = Dataset(rng.uniform(-1, 1, size=(N, n)), rng.uniform(-1, 1, size=N))
    H = build_regressor(data, spec, ActivationParams(0.0937, 0.5, 0.4688))
    return H, data.labels


def test_identity_system_returns_labels():
    spec = ConvSpec(2, 2)  # q + n = 5
    H = RegressorMatrix(np.eye(5), spec, _PARAMS)
    y = np.array([3.0, -1.0, 0.5, 2.0, 4.0])
    rep = solve_ls(H, y)
    np.testing.assert_allclose(rep.theta.theta, y, rtol=1e-12)
    assert rep.solve_strategy == SolveStrategy.CHOLESKY
    assert not rep.rank_deficient
    assert rep.residual_norm < 1e-12


def test_rank_deficient_minimum_norm_solution():
    # features x in {-1, 0, 1} with a = c = 1, b = 0: the linear column is
    # zero, so the quadratic column [2, 1, 2] alone fits y = [1, 0, 1];
    # the stationary point of 2*(2t - 1)^2 + t^2 is t = 4/9
    H = RegressorMatrix(np.array([[2.0, 0.0], [1.0, 0.0], [2.0, 0.0]]), ConvSpec(1, 1), _PARAMS)
    y = np.array([1.0, 0.0, 1.0])
    rep = solve_ls(H, y)
    np.testing.assert_allclose(rep.theta.theta, [4.0 / 9.0, 0.0], rtol=1e-12, atol=1e-15)
    assert rep.rank_deficient
    assert rep.solve_strategy == SolveStrategy.PSEUDOINVERSE


def test_zero_labels_give_zero_weights():
    rng = np.random.default_rng(0)
    H, _ = _random_system(rng, 3, 2)
    rep = solve_ls(H, np.zeros(H.n_rows))
    np.testing.assert_array_equal(rep.theta.theta, np.zeros(H.n_cols))
    assert rep.residual_norm == 0.0


def test_ridge_scalar_closed_form():
    # one active column: theta_1 = (2 + beta)^-1 * 2 = 0.5 at beta = 2
    H = RegressorMatrix(np.array([[1.0, 0.0], [1.0, 0.0]]), ConvSpec(1, 1), _PARAMS)
    rep = solve_ridge(H, np.array([1.0, 1.0]), 2.0)
    np.testing.assert_allclose(rep.theta.theta, [0.5, 0.0], rtol=1e-14, atol=1e-15)


def test_ridge_zero_equals_plain_ls():
    rng = np.random.default_rng(1)
    H, y = _random_system(rng, 4, 2)
    a = solve_ls(H, y).theta.theta
    b = solve_ridge(H, y, 0.0).theta.theta
    np.testing.assert_allclose(a, b, rtol=1e-10)


def test_ridge_huge_beta_shrinkage_bound():
    rng = np.random.default_rng(2)
    H, y = _random_system(rng, 4, 3)
    beta = 1e12
    rep = solve_ridge(H, y, beta)
    bound = np.linalg.norm(H.matrix.T @ y) / beta
    assert np.linalg.norm(rep.theta.theta) <= bound * (1 + 1e-12)


def test_ridge_rejects_negative_beta():
    H = RegressorMatrix(np.eye(5), ConvSpec(2, 2), _PARAMS)
    with pytest.raises(NegativeRegularizer):
        solve_ridge(H, np.zeros(5), -0.5)


def test_non_finite_inputs_rejected():
    H = RegressorMatrix(np.eye(5), ConvSpec(2, 2), _PARAMS)
    y = np.zeros(5)
    with pytest.raises(NonFiniteInput):
        solve_ls(H, np.array([1.0, np.nan, 0, 0, 0]))
    bad = np.eye(5)
    bad[3, 3] = np.inf
    with pytest.raises(NonFiniteInput):
        solve_ls(RegressorMatrix(bad, ConvSpec(2, 2), _PARAMS), y)


def test_label_length_mismatch():
    H = RegressorMatrix(np.eye(5), ConvSpec(2, 2), _PARAMS)
    with pytest.raises(DimensionMismatch):
        solve_ls(H, np.zeros(4))


def test_normal_equation_stationarity_full_rank():
    rng = np.random.default_rng(5)
    for _ in range(10):
        n = int(rng.integers(2, 9))
        f = int(rng.integers(1, n + 1))
        H, y = _random_system(rng, n, f)
        rep = solve_ls(H, y)
        g = H.matrix.T @ (y - H.matrix @ rep.theta.theta)
        assert np.linalg.norm(g) <= 1e-8 * max(1.0, np.linalg.norm(H.matrix.T @ y))
        assert not rep.rank_deficient


def test_perturbations_never_decrease_loss():
    rng = np.random.default_rng(6)
    H, y = _random_system(rng, 5, 3)
    rep = solve_ls(H, y)
    theta = rep.theta.theta
    loss0 = np.sum((H.matrix @ theta - y) ** 2)
    for _ in range(100):
        d = rng.standard_normal(theta.size)
        d /= np.linalg.norm(d)
        loss1 = np.sum((H.matrix @ (theta + 1e-3 * d) - y) ** 2)
        assert loss1 >= loss0 - 1e-12


def test_ridge_norm_monotone_in_beta():
    rng = np.random.default_rng(7)
    H, y = _random_system(rng, 5, 2)
    norms = [
        np.linalg.norm(solve_ridge(H, y, beta).theta.theta)
        for beta in (0.0, 0.1, 1.0, 10.0, 100.0)
    ]
    for lo, hi in zip(norms, norms[1:]):
        assert hi <= lo + 1e-10


def test_ridge_normal_equations_residual():
    rng = np.random.default_rng(8)
    H, y = _random_system(rng, 4, 4)
    M = H.matrix
    for beta in (0.0, 0.1, 1.0, 10.0, 100.0):
        rep = solve_ridge(H, y, beta)
        lhs = (M.T @ M + beta * np.eye(M.shape[1])) @ rep.theta.theta - M.T @ y
        assert np.linalg.norm(lhs) <= 1e-8 * max(1.0, np.linalg.norm(M.T @ y))
        assert rep.normal_residual_norm == pytest.approx(np.linalg.norm(lhs), abs=1e-12)


def test_underdetermined_system_flags_rank_deficiency():
    rng = np.random.default_rng(9)
    spec = ConvSpec(4, 2)
    data = Dataset(rng.uniform(-1, 1, size=(3, 4)), rng.uniform(-1, 1, size=3))
    H = build_regressor(data, spec, ActivationParams(0.0937, 0.5, 0.4688))
    rep = solve_ls(H, data.labels)
    assert rep.rank_deficient
    assert rep.solve_strategy == SolveStrategy.PSEUDOINVERSE
    # exact interpolation is possible with more weights than samples
    assert rep.residual_norm <= 1e-10


def test_factorizable_singular_system_still_gets_minimum_norm():
    # windowed noiseless recursive data hides exact column dependencies in
    # the quadratic features; the normal matrix then factorizes numerically
    # even though it is singular, and the result must still be the flagged
    # minimum-norm solution rather than one polluted by null-space junk
    from quadconv import ConvSpec as CS, narx_window, synth_narx

    ts = synth_narx(600, seed=9)
    data = narx_window(ts, "u", "y", 5)
    H = build_regressor(data, CS(10, 3), ActivationParams(0.0937, 0.5, 0.4688))
    rep = solve_ls(H, data.labels)
    assert rep.rank_deficient
    assert rep.solve_strategy == SolveStrategy.PSEUDOINVERSE
    reference, _, rank, _ = np.linalg.lstsq(
        H.matrix, data.labels, rcond=np.finfo(float).eps * max(H.matrix.shape)
    )
    assert rank < H.n_cols
    np.testing.assert_allclose(rep.theta.theta, reference, rtol=1e-8, atol=1e-10)


def test_weight_vector_validates_length():
    with pytest.raises(DimensionMismatch):
        WeightVector(np.zeros(4), ConvSpec(2, 2))
