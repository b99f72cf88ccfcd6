import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from oracles import random_rank, random_symmetric_rank
from sparseginv.estimators import (
    AhSymmetricSparseInverse,
    SparseInverseRegression,
    SymmetricSparseInverse,
)
from sparseginv.linalg import mp_residuals


def test_get_params_and_clone():
    est = SymmetricSparseInverse(step_lambda=0.02, max_iter=123)
    params = est.get_params()
    assert params["step_lambda"] == 0.02
    assert params["max_iter"] == 123
    cloned = clone(est)
    assert cloned.get_params() == params
    est.set_params(eps_abs=1e-6)
    assert est.eps_abs == 1e-6


def test_symmetric_inverse_fit_attributes():
    rng = np.random.default_rng(60)
    A = random_symmetric_rank(rng, 12, 4)
    est = SymmetricSparseInverse().fit(A)
    assert est.converged_
    assert est.inverse_.shape == (12, 12)
    assert np.array_equal(est.inverse_, est.inverse_.T)
    assert est.residuals_.p1_rel <= 1e-6
    assert est.objective_ > 0
    assert est.nnz_ >= 0
    assert est.n_iter_ >= 1


def test_symmetric_inverse_transform_rows():
    rng = np.random.default_rng(61)
    A = random_symmetric_rank(rng, 6, 3)
    est = SymmetricSparseInverse().fit(A)
    B = rng.normal(size=(4, 6))
    out = est.transform(B)
    assert out.shape == (4, 6)
    assert np.allclose(out, B @ est.inverse_.T)
    v = rng.normal(size=6)
    assert np.allclose(est.transform(v), est.inverse_ @ v)


def test_transform_before_fit_raises():
    with pytest.raises(NotFittedError):
        SymmetricSparseInverse().transform(np.eye(2))


def test_ah_symmetric_inverse_solves_least_squares():
    rng = np.random.default_rng(62)
    A = random_rank(rng, 15, 6, 4)
    est = AhSymmetricSparseInverse().fit(A)
    res = mp_residuals(A, est.inverse_)
    assert res.p1_rel <= 1e-6 and res.p3_rel <= 1e-6
    b = rng.normal(size=15)
    theta = est.transform(b)
    # normal equations hold at the transformed point
    assert np.allclose(A.T @ A @ theta, A.T @ b, atol=1e-8)


def test_regression_via_hhat_matches_lstsq():
    rng = np.random.default_rng(63)
    X = rng.normal(size=(20, 5))
    y = rng.normal(size=20)
    est = SparseInverseRegression(strategy="via_hhat").fit(X, y)
    expected, *_ = np.linalg.lstsq(X, y, rcond=None)
    assert np.allclose(est.coef_, expected, atol=1e-6)
    assert np.allclose(est.predict(X), X @ est.coef_)
    assert est.mult_count_ > 0


def test_regression_via_h_rank_deficient():
    rng = np.random.default_rng(64)
    X = random_rank(rng, 25, 8, 5)
    y = rng.normal(size=25)
    est = SparseInverseRegression(strategy="via_h").fit(X, y)
    assert np.allclose(X.T @ X @ est.coef_, X.T @ y, atol=1e-7)


def test_regression_ridge_shrinks():
    rng = np.random.default_rng(65)
    X = rng.normal(size=(30, 4))
    y = rng.normal(size=30)
    plain = SparseInverseRegression().fit(X, y)
    ridged = SparseInverseRegression(ridge_lambda=10.0).fit(X, y)
    assert np.linalg.norm(ridged.coef_) < np.linalg.norm(plain.coef_)
    # stationarity of the regularized objective
    ahat = X.T @ X + 10.0 * np.eye(4)
    assert np.allclose(ahat @ ridged.coef_, X.T @ y, atol=1e-7)


def test_regression_via_h_rejects_ridge():
    X = np.eye(3)
    with pytest.raises(ValueError):
        SparseInverseRegression(strategy="via_h", ridge_lambda=1.0).fit(X, np.ones(3))


def test_regression_unknown_strategy():
    with pytest.raises(ValueError):
        SparseInverseRegression(strategy="nope").fit(np.eye(2), np.ones(2))


def test_regression_score_perfect_fit():
    rng = np.random.default_rng(66)
    X = rng.normal(size=(10, 3))
    theta = np.array([1.0, -2.0, 0.5])
    y = X @ theta
    est = SparseInverseRegression().fit(X, y)
    assert est.score(X, y) >= 1.0 - 1e-9
