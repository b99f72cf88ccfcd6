"""Douglas-Rachford splitting for entrywise-1-norm minimization over a
closed convex set with an inexpensive projection:

    min ||H||_1   s.t.   H in C.

With f = ||.||_1 and g the indicator of C, the splitting iterates

    H^{k+1/2} = S_lambda(V^k)            (soft threshold, prox of lambda*f)
    V^{k+1/2} = 2 H^{k+1/2} - V^k
    H^{k+1}   = Proj_C(V^{k+1/2})        (prox of lambda*g)
    V^{k+1}   = V^k + H^{k+1} - H^{k+1/2}

and stops once ||tau^k||_F <= eps_abs + eps_rel * ||V^1 - V^0||_F with
tau^k = H^{k+1} - H^{k+1/2} = V^{k+1} - V^k, checked for k > 0 only.
Every H^{k+1} is a projection output, so the last iterate is feasible.

Two concrete feasible sets are provided, each with a closed-form projection:

* symmetric generalized inverses of a symmetric A,
  C = {H : AHA = A, H^T = H}, projected by
  Proj(V) = (V + V^T)/2 - P (V + V^T)/2 P + pinv(A),  P = A pinv(A);

* the affine family {G + V2 Z U1^T : Z free} of inverses satisfying the
  first three pseudoinverse properties, G = V1 D^{-1} U1^T, projected by
  Proj(M) = G + V2 V2^T (M - G) U1 U1^T
  (orthonormal columns of V2 and U1 make this the Frobenius-orthogonal
  projection onto the affine set; see README for the derivation).
"""

from dataclasses import dataclass
from time import perf_counter

import numpy as np

from .linalg import (
    DEFAULT_RANK_TOL,
    MpResiduals,
    frobenius,
    mp_residuals,
    norm1,
    pseudoinverse,
    svd_full,
)
from .validation import as_matrix, check_symmetric


@dataclass
class DrsConfig:
    """Solver parameters.

    step_lambda is the proximal step (soft-threshold level); eps_abs and
    eps_rel define the stopping test; max_iter caps the iteration count;
    record_history keeps (objective, tau_norm) per iteration.
    """

    step_lambda: float = 1e-2
    eps_abs: float = 1e-5
    eps_rel: float = 1e-3
    max_iter: int = 50_000
    record_history: bool = False

    def __post_init__(self):
        if self.step_lambda <= 0:
            raise ValueError("step_lambda must be positive")
        if self.eps_abs <= 0 or self.eps_rel <= 0:
            raise ValueError("eps_abs and eps_rel must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


@dataclass(eq=False)
class DrsState:
    """One iteration of the splitting scheme.

    V_k is the governing sequence after the update, H_half the threshold
    output, H_next the projection output (always feasible), tau_norm the
    Frobenius norm of H_next - H_half, and ref_norm = ||V^1 - V^0||_F.
    """

    V_k: np.ndarray
    H_half: np.ndarray
    H_next: np.ndarray
    k: int
    tau_norm: float
    ref_norm: float


@dataclass(eq=False)
class DrsResult:
    H: np.ndarray
    objective: float
    iterations: int
    converged: bool
    residuals: MpResiduals | None = None
    elapsed: float = 0.0
    history: list | None = None
    timed_out: bool = False


def soft_threshold(M, t):
    """Entrywise shrink toward zero: x -> x-t if x > t, 0 if |x| <= t,
    x+t if x < -t."""
    if t < 0:
        raise ValueError("threshold must be nonnegative")
    M = np.asarray(M, dtype=float)
    return np.sign(M) * np.maximum(np.abs(M) - t, 0.0)


class SymmetricGinvSet:
    """The affine set {H : AHA = A, H^T = H} for a symmetric A, with its
    closed-form Frobenius projection.

    Caches pinv(A) and the orthogonal projector P = A pinv(A) once; the
    projection then costs two matrix products per call.
    """

    def __init__(self, A, rank_tol=DEFAULT_RANK_TOL):
        self.A = check_symmetric(A)
        self.factors = svd_full(self.A, rank_tol)
        self.A_dagger = pseudoinverse(self.factors)
        P = self.A @ self.A_dagger
        self.P = 0.5 * (P + P.T)

    @property
    def n(self):
        return self.A.shape[0]

    def project(self, V):
        V = as_matrix(V, "V")
        if V.shape != self.A.shape:
            raise ValueError(f"V has shape {V.shape}, expected {self.A.shape}")
        S = 0.5 * (V + V.T)
        R = S - self.P @ S @ self.P + self.A_dagger
        # analytic formula is symmetric; suppress floating-point asymmetry
        return 0.5 * (R + R.T)


class AhRefGinvSet:
    """The affine set {G + V2 Z U1^T : Z in R^{(n-r) x r}} of inverses of A
    satisfying the first three pseudoinverse properties."""

    def __init__(self, factors):
        if factors.r < 1:
            raise ValueError("A must have rank at least 1")
        self.factors = factors
        self.G = pseudoinverse(factors)
        self.V2 = factors.V2
        self.U1 = factors.U1

    @classmethod
    def from_matrix(cls, A, rank_tol=DEFAULT_RANK_TOL):
        return cls(svd_full(A, rank_tol))

    @property
    def shape(self):
        return self.G.shape

    def project(self, M):
        M = as_matrix(M, "M")
        if M.shape != self.G.shape:
            raise ValueError(f"M has shape {M.shape}, expected {self.G.shape}")
        E = M - self.G
        return self.G + self.V2 @ (self.V2.T @ E @ self.U1) @ self.U1.T


def project_symmetric_ginv(S, V):
    """Frobenius projection of V onto the symmetric-inverse set S."""
    return S.project(V)


def project_ahref_affine(S, M):
    """Frobenius projection of M onto the affine inverse family S."""
    return S.project(M)


def drs_iterate(project, start, cfg):
    """Yield successive DrsState values of the four-step scheme, up to
    cfg.max_iter iterations. The caller applies the stopping test."""
    v = np.array(start, dtype=float, copy=True)
    ref = 0.0
    for k in range(cfg.max_iter):
        h_half = soft_threshold(v, cfg.step_lambda)
        h_next = project(2.0 * h_half - v)
        tau = h_next - h_half
        v = v + tau
        tau_norm = frobenius(tau)
        if k == 0:
            ref = tau_norm
        yield DrsState(V_k=v, H_half=h_half, H_next=h_next, k=k,
                       tau_norm=tau_norm, ref_norm=ref)


def drs_solve(project, start, cfg=None, time_limit=None):
    """Minimize ||H||_1 over the set defined by `project`, starting the
    governing sequence at `start`.

    Returns a DrsResult whose H is the last projection output (feasible by
    construction). Hitting max_iter or the optional wall-clock limit is
    reported via the flags, not raised.
    """
    cfg = cfg or DrsConfig()
    t0 = perf_counter()
    history = [] if cfg.record_history else None
    converged = False
    timed_out = False
    state = None
    for state in drs_iterate(project, start, cfg):
        if history is not None:
            history.append((norm1(state.H_next), state.tau_norm))
        if state.k > 0 and state.tau_norm <= cfg.eps_abs + cfg.eps_rel * state.ref_norm:
            converged = True
            break
        if time_limit is not None and perf_counter() - t0 >= time_limit:
            timed_out = True
            break
    H = state.H_next
    return DrsResult(H=H, objective=norm1(H), iterations=state.k + 1,
                     converged=converged, elapsed=perf_counter() - t0,
                     history=history, timed_out=timed_out)


def solve_symmetric_ginv(A, cfg=None, rank_tol=DEFAULT_RANK_TOL, time_limit=None):
    """Sparse symmetric generalized inverse of a symmetric A by 1-norm
    minimization, started at pinv(A).

    A = 0 is degenerate (every symmetric H is feasible): returns H = 0, the
    unique 1-norm minimizer, immediately.
    """
    A = check_symmetric(A)
    if not A.any():
        H = np.zeros_like(A)
        return DrsResult(H=H, objective=0.0, iterations=0, converged=True,
                         residuals=mp_residuals(A, H))
    t0 = perf_counter()
    cset = SymmetricGinvSet(A, rank_tol)
    result = drs_solve(cset.project, cset.A_dagger, cfg, time_limit)
    result.elapsed = perf_counter() - t0
    result.residuals = mp_residuals(A, result.H)
    return result


def solve_ahref_ginv(A, cfg=None, rank_tol=DEFAULT_RANK_TOL, time_limit=None):
    """Sparse generalized inverse of A satisfying the first three
    pseudoinverse properties, by 1-norm minimization over the reduced
    affine family, started at G = pinv(A)."""
    A = as_matrix(A)
    if not A.any():
        raise ValueError("A must be nonzero")
    t0 = perf_counter()
    cset = AhRefGinvSet.from_matrix(A, rank_tol)
    result = drs_solve(cset.project, cset.G, cfg, time_limit)
    result.elapsed = perf_counter() - t0
    result.residuals = mp_residuals(A, result.H)
    return result


def check_sym_characterization(A, H, tol=1e-6):
    """True iff ||AHA + H - A - H^T||_F <= tol * max(1, ||A||_F).

    For symmetric A this single equation characterizes exactly the H that
    are symmetric generalized inverses of A (AHA = A and H = H^T).
    """
    A = as_matrix(A)
    H = as_matrix(H, "H")
    res = frobenius(A @ H @ A + H - A - H.T)
    return bool(res <= tol * max(1.0, frobenius(A)))
