"""Closed-form least-squares and generalized-ridge solvers built on
generalized inverses, plus the two-strategy comparison for repeated solves.

For min ||A theta - b||_2^2 + ridge_lambda ||L theta||_2^2 the stationarity
system is (A^T A + ridge_lambda L^T L) theta = A^T b, which is solvable for
every right-hand side. Two closed forms are supported:

* via_hhat: theta = Hhat A^T b, where Hhat is any generalized inverse of
  Ahat = A^T A + ridge_lambda L^T L (works for every ridge_lambda >= 0);
* via_h: theta = H b, where H satisfies the first and third pseudoinverse
  properties of A (plain least squares only, ridge_lambda = 0).

The per-solve arithmetic cost is measured by the nonzero counts of the
applied operators: ||H||_0 versus ||Hhat||_0 + ||A^T||_0.
"""

from dataclasses import dataclass, field

import numpy as np

from .drs import DrsConfig, solve_ahref_ginv, solve_symmetric_ginv
from .linalg import (
    DEFAULT_RANK_TOL,
    DEFAULT_ZERO_TOL,
    mp_residuals,
    norm0,
    norm1,
    numeric_rank,
    pseudoinverse,
    svd_full,
)
from .validation import as_matrix, as_vector

_P_TOL = 1e-6  # relative residual allowed when verifying inverse properties


@dataclass(eq=False)
class LsqInstance:
    """A least-squares problem min ||A theta - b||^2 + ridge_lambda ||L theta||^2.

    ridge_lambda is the regularization weight (unrelated to the solver's
    proximal step); L must be given whenever ridge_lambda > 0 (L = I is a
    valid choice).
    """

    A: np.ndarray
    b: np.ndarray
    L: np.ndarray | None = None
    ridge_lambda: float = 0.0

    def __post_init__(self):
        self.A = as_matrix(self.A)
        self.b = as_vector(self.b)
        if self.b.shape[0] != self.A.shape[0]:
            raise ValueError(
                f"b has length {self.b.shape[0]}, expected {self.A.shape[0]}")
        if self.ridge_lambda < 0:
            raise ValueError("ridge_lambda must be nonnegative")
        if self.L is not None:
            self.L = as_matrix(self.L, "L")
            if self.L.shape[1] != self.A.shape[1]:
                raise ValueError(
                    f"L has {self.L.shape[1]} columns, expected {self.A.shape[1]}")
        elif self.ridge_lambda > 0:
            raise ValueError("L is required when ridge_lambda > 0 (L = I is allowed)")


@dataclass
class LsqSolution:
    theta: np.ndarray
    strategy: str  # "via_hhat" | "via_h"
    normal_residual: float  # ||(A^T A + ridge_lambda L^T L) theta - A^T b||_inf
    objective: float  # ||A theta - b||_2^2 + ridge_lambda ||L theta||_2^2
    mult_count: int  # nonzero scalar products used by the applied operators


def build_ahat(A, L=None, ridge_lambda=0.0):
    """Ahat = A^T A + ridge_lambda L^T L, exactly symmetric by construction."""
    A = as_matrix(A)
    if ridge_lambda < 0:
        raise ValueError("ridge_lambda must be nonnegative")
    M = A.T @ A
    if ridge_lambda > 0:
        if L is None:
            raise ValueError("L is required when ridge_lambda > 0")
        L = as_matrix(L, "L")
        if L.shape[1] != A.shape[1]:
            raise ValueError(f"L has {L.shape[1]} columns, expected {A.shape[1]}")
        M = M + ridge_lambda * (L.T @ L)
    return 0.5 * (M + M.T)


def _objective(inst, theta):
    val = float(np.sum((inst.A @ theta - inst.b) ** 2))
    if inst.ridge_lambda > 0:
        val += inst.ridge_lambda * float(np.sum((inst.L @ theta) ** 2))
    return val


def _normal_residual(inst, theta, atb):
    ahat = build_ahat(inst.A, inst.L, inst.ridge_lambda)
    return float(np.max(np.abs(ahat @ theta - atb)))


def solve_via_hhat(inst, Hhat, zero_tol=DEFAULT_ZERO_TOL):
    """theta = Hhat A^T b, for Hhat a generalized inverse of
    Ahat = A^T A + ridge_lambda L^T L."""
    Hhat = as_matrix(Hhat, "Hhat")
    ahat = build_ahat(inst.A, inst.L, inst.ridge_lambda)
    if mp_residuals(ahat, Hhat).p1_rel > _P_TOL:
        raise ValueError("Hhat is not a generalized inverse of A^T A "
                         "+ ridge_lambda L^T L (first-property residual too large)")
    atb = inst.A.T @ inst.b
    theta = Hhat @ atb
    return LsqSolution(
        theta=theta, strategy="via_hhat",
        normal_residual=_normal_residual(inst, theta, atb),
        objective=_objective(inst, theta),
        mult_count=norm0(Hhat, zero_tol) + norm0(inst.A.T, zero_tol),
    )


def solve_via_h(inst, H, zero_tol=DEFAULT_ZERO_TOL):
    """theta = H b, for H satisfying the first and third pseudoinverse
    properties of A. Only valid for ridge_lambda = 0."""
    if inst.ridge_lambda > 0:
        raise ValueError("strategy via_h only solves the unregularized problem "
                         "(ridge_lambda = 0)")
    H = as_matrix(H, "H")
    res = mp_residuals(inst.A, H)
    if res.p1_rel > _P_TOL or res.p3_rel > _P_TOL:
        raise ValueError("H must satisfy the first and third pseudoinverse "
                         "properties of A")
    atb = inst.A.T @ inst.b
    theta = H @ inst.b
    return LsqSolution(
        theta=theta, strategy="via_h",
        normal_residual=_normal_residual(inst, theta, atb),
        objective=_objective(inst, theta),
        mult_count=norm0(H, zero_tol),
    )


@dataclass
class SolvabilityCertificate:
    solvable: bool
    theta: np.ndarray
    residual: float  # relative inf-norm residual of the stationarity system


def check_solvability(A, L=None, ridge_lambda=0.0, b=None, rank_tol=DEFAULT_RANK_TOL):
    """Certify that (A^T A + ridge_lambda L^T L) theta = A^T b is solvable by
    producing theta from the pseudoinverse of Ahat and measuring its residual.
    The system is solvable for every input; this exists to verify that."""
    A = as_matrix(A)
    b = as_vector(b)
    ahat = build_ahat(A, L, ridge_lambda)
    atb = A.T @ b
    theta = pseudoinverse(svd_full(ahat, rank_tol)) @ atb
    scale = 1.0 + float(np.max(np.abs(atb), initial=0.0))
    residual = float(np.max(np.abs(ahat @ theta - atb))) / scale
    return SolvabilityCertificate(solvable=True, theta=theta, residual=residual)


@dataclass
class StrategySample:
    """Both strategies applied to one right-hand side."""

    residual_norm_via_h: float  # ||A theta - b||_2
    residual_norm_via_hhat: float
    normal_residual_via_h: float
    normal_residual_via_hhat: float

    def to_dict(self):
        return dict(self.__dict__)


@dataclass
class StrategyReport:
    """Cost and quality comparison of theta = H b versus theta = Hhat A^T b
    with sparse inverses computed for A and A^T A respectively."""

    m: int
    n: int
    r: int
    norm0_h: int
    norm1_h: float
    norm0_hhat: int
    norm1_hhat: float
    norm0_at: int
    mult_count_via_h: int
    mult_count_via_hhat: int
    converged_h: bool
    converged_hhat: bool
    iterations_h: int
    iterations_hhat: int
    samples: list = field(default_factory=list)

    @property
    def max_objective_gap(self):
        """Largest relative disagreement of ||A theta - b||_2 across samples."""
        gap = 0.0
        for s in self.samples:
            scale = max(s.residual_norm_via_h, s.residual_norm_via_hhat, 1e-300)
            gap = max(gap, abs(s.residual_norm_via_h - s.residual_norm_via_hhat) / scale)
        return gap

    def to_dict(self):
        d = {k: v for k, v in self.__dict__.items() if k != "samples"}
        d["samples"] = [s.to_dict() for s in self.samples]
        d["max_objective_gap"] = self.max_objective_gap
        return d


def compare_strategies(A, cfg=None, b_samples=(), rank_tol=DEFAULT_RANK_TOL,
                       zero_tol=DEFAULT_ZERO_TOL, time_limit=None):
    """Solve min ||A theta - b||_2 for each b by both closed forms and
    report per-strategy cost (nonzero counts) and solution quality.

    H comes from the 1-norm solver over the three-property family of A;
    Hhat from the symmetric-inverse solver applied to A^T A. Both residual
    norms must agree: each theta solves the same least-squares problem.
    """
    A = as_matrix(A)
    cfg = cfg or DrsConfig()
    res_h = solve_ahref_ginv(A, cfg, rank_tol, time_limit)
    ahat = build_ahat(A)
    res_hhat = solve_symmetric_ginv(ahat, cfg, rank_tol, time_limit)
    H, Hhat = res_h.H, res_hhat.H
    report = StrategyReport(
        m=A.shape[0], n=A.shape[1], r=numeric_rank(A, rank_tol),
        norm0_h=norm0(H, zero_tol), norm1_h=norm1(H),
        norm0_hhat=norm0(Hhat, zero_tol), norm1_hhat=norm1(Hhat),
        norm0_at=norm0(A.T, zero_tol),
        mult_count_via_h=norm0(H, zero_tol),
        mult_count_via_hhat=norm0(Hhat, zero_tol) + norm0(A.T, zero_tol),
        converged_h=res_h.converged, converged_hhat=res_hhat.converged,
        iterations_h=res_h.iterations, iterations_hhat=res_hhat.iterations,
    )
    for b in b_samples:
        inst = LsqInstance(A=A, b=b)
        sol_h = solve_via_h(inst, H, zero_tol)
        sol_hhat = solve_via_hhat(inst, Hhat, zero_tol)
        report.samples.append(StrategySample(
            residual_norm_via_h=float(np.linalg.norm(A @ sol_h.theta - inst.b)),
            residual_norm_via_hhat=float(np.linalg.norm(A @ sol_hhat.theta - inst.b)),
            normal_residual_via_h=sol_h.normal_residual,
            normal_residual_via_hhat=sol_hhat.normal_residual,
        ))
    return report
