"""Scikit-learn compatible wrappers around the sparse-inverse solvers.

The inverse estimators are fit on a matrix and expose the computed sparse
generalized inverse as `inverse_`; `transform` applies it to right-hand
sides given as rows, following the usual (n_samples, n_features) layout.
All estimators are clonable and work with get_params/set_params.
"""

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .drs import DrsConfig, solve_ahref_ginv, solve_symmetric_ginv
from .linalg import norm0
from .lstsq import LsqInstance, build_ahat, solve_via_h, solve_via_hhat
from .validation import as_matrix


class _SparseInverseBase(BaseEstimator):
    def __init__(self, step_lambda=1e-2, eps_abs=1e-5, eps_rel=1e-3,
                 max_iter=50_000, rank_tol=1e-8, zero_tol=1e-5):
        self.step_lambda = step_lambda
        self.eps_abs = eps_abs
        self.eps_rel = eps_rel
        self.max_iter = max_iter
        self.rank_tol = rank_tol
        self.zero_tol = zero_tol

    def _drs_config(self):
        return DrsConfig(step_lambda=self.step_lambda, eps_abs=self.eps_abs,
                         eps_rel=self.eps_rel, max_iter=self.max_iter)

    def _store(self, result):
        self.inverse_ = result.H
        self.objective_ = result.objective
        self.n_iter_ = result.iterations
        self.converged_ = result.converged
        self.residuals_ = result.residuals
        self.nnz_ = norm0(result.H, self.zero_tol)
        return self

    def transform(self, X):
        """Apply the fitted inverse to right-hand sides stacked as rows."""
        check_is_fitted(self, "inverse_")
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            return self.inverse_ @ X
        return X @ self.inverse_.T


class SymmetricSparseInverse(TransformerMixin, _SparseInverseBase):
    """Sparse symmetric generalized inverse of a symmetric matrix by
    entrywise 1-norm minimization.

    Parameters
    ----------
    step_lambda : float, proximal step (soft-threshold level).
    eps_abs, eps_rel : floats, stopping tolerances.
    max_iter : int, iteration cap.
    rank_tol : float, relative singular value cutoff for the pseudoinverse.
    zero_tol : float, |entry| threshold used for the reported nonzero count.

    Attributes
    ----------
    inverse_ : ndarray, the computed inverse (symmetric, feasible).
    objective_ : float, its entrywise 1-norm.
    n_iter_, converged_, residuals_, nnz_ : solve diagnostics.
    """

    def fit(self, X, y=None):
        A = as_matrix(X)
        return self._store(solve_symmetric_ginv(A, self._drs_config(),
                                                rank_tol=self.rank_tol))


class AhSymmetricSparseInverse(TransformerMixin, _SparseInverseBase):
    """Sparse generalized inverse satisfying the first three pseudoinverse
    properties, for an arbitrary rectangular matrix.

    Applying the fitted inverse to any right-hand side yields a
    least-squares solution, so `transform(B)` solves min ||A x - b||_2 for
    every row b of B.
    """

    def fit(self, X, y=None):
        A = as_matrix(X)
        return self._store(solve_ahref_ginv(A, self._drs_config(),
                                            rank_tol=self.rank_tol))


class SparseInverseRegression(RegressorMixin, _SparseInverseBase):
    """Linear regression solved in closed form through a sparse generalized
    inverse, with optional generalized ridge regularization.

    strategy='via_hhat' computes a sparse symmetric inverse Hhat of
    X^T X + ridge_lambda L^T L and sets coef_ = Hhat X^T y; it supports any
    ridge_lambda >= 0 (L defaults to the identity when regularizing).
    strategy='via_h' computes a sparse inverse H of X itself and sets
    coef_ = H y; it requires ridge_lambda = 0. There is no intercept: the
    model is y ~ X @ coef_.
    """

    def __init__(self, strategy="via_hhat", ridge_lambda=0.0, L=None,
                 step_lambda=1e-2, eps_abs=1e-5, eps_rel=1e-3,
                 max_iter=50_000, rank_tol=1e-8, zero_tol=1e-5):
        super().__init__(step_lambda=step_lambda, eps_abs=eps_abs,
                         eps_rel=eps_rel, max_iter=max_iter,
                         rank_tol=rank_tol, zero_tol=zero_tol)
        self.strategy = strategy
        self.ridge_lambda = ridge_lambda
        self.L = L

    def fit(self, X, y):
        X = as_matrix(X, "X")
        if self.strategy not in ("via_hhat", "via_h"):
            raise ValueError(f"unknown strategy {self.strategy!r}")
        ridge = float(self.ridge_lambda)
        L = self.L
        if ridge > 0 and L is None:
            L = np.eye(X.shape[1])
        inst = LsqInstance(A=X, b=y, L=L, ridge_lambda=ridge)
        if self.strategy == "via_h":
            result = solve_ahref_ginv(X, self._drs_config(), rank_tol=self.rank_tol)
            self._store(result)
            solution = solve_via_h(inst, result.H, self.zero_tol)
        else:
            ahat = build_ahat(X, L, ridge)
            result = solve_symmetric_ginv(ahat, self._drs_config(),
                                          rank_tol=self.rank_tol)
            self._store(result)
            solution = solve_via_hhat(inst, result.H, self.zero_tol)
        self.coef_ = solution.theta
        self.solution_ = solution
        self.mult_count_ = solution.mult_count
        return self

    def predict(self, X):
        check_is_fitted(self, "coef_")
        return np.asarray(X, dtype=float) @ self.coef_
