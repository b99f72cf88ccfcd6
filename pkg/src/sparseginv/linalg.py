"""Core linear algebra: full SVD with numeric rank, Moore-Penrose
pseudoinverse, the orthogonal-basis block decomposition of a candidate
inverse, entrywise norms, and the four pseudoinverse-property residuals.

For A = U S V^T of rank r and a candidate inverse H (n x m), the matrix
Gamma = V^T H U partitions into

    Gamma = [ X  Y ]      X: r x r,       Y: r x (m-r),
            [ Z  W ]      Z: (n-r) x r,   W: (n-r) x (m-r),

and the four defining properties of the pseudoinverse translate blockwise:
P1 (AHA = A) holds iff X = D^{-1}; given P1, P2 (HAH = H) iff Z D Y = W,
P3 ((AH)^T = AH) iff Y = 0, and P4 ((HA)^T = HA) iff Z = 0.
"""

from dataclasses import dataclass

import numpy as np

from .sparse import SparseMatrix
from .validation import as_matrix, check_conformal

DEFAULT_RANK_TOL = 1e-8
DEFAULT_ZERO_TOL = 1e-5


@dataclass(eq=False)
class SvdFactors:
    """Full singular value decomposition A = U diag(sigma) V^T plus the
    numeric rank r under a relative tolerance.

    U is m x m, V is n x n, sigma has length min(m, n) sorted nonincreasing;
    sigma[i] > rank_tol * sigma[0] exactly for i < r.
    """

    U: np.ndarray
    sigma: np.ndarray
    V: np.ndarray
    r: int
    rank_tol: float

    @property
    def m(self):
        return self.U.shape[0]

    @property
    def n(self):
        return self.V.shape[0]

    @property
    def U1(self):
        """Leading r columns of U."""
        return self.U[:, : self.r]

    @property
    def U2(self):
        return self.U[:, self.r :]

    @property
    def V1(self):
        return self.V[:, : self.r]

    @property
    def V2(self):
        return self.V[:, self.r :]

    @property
    def d(self):
        """Nonzero singular values (length r)."""
        return self.sigma[: self.r]

    @property
    def D(self):
        return np.diag(self.d)


@dataclass(eq=False)
class GammaBlocks:
    """The partition X, Y, Z, W of Gamma = V^T H U."""

    X: np.ndarray
    Y: np.ndarray
    Z: np.ndarray
    W: np.ndarray

    def assemble(self):
        r, mr = self.X.shape[0], self.Y.shape[1]
        nr = self.Z.shape[0]
        gamma = np.empty((r + nr, r + mr))
        gamma[:r, :r] = self.X
        gamma[:r, r:] = self.Y
        gamma[r:, :r] = self.Z
        gamma[r:, r:] = self.W
        return gamma


@dataclass
class MpResiduals:
    """Frobenius residuals of the four pseudoinverse properties.

    p1 = ||AHA - A||_F, p2 = ||HAH - H||_F, p3 = ||(AH)^T - AH||_F,
    p4 = ||(HA)^T - HA||_F, with relative forms scaled by ||A||_F for p1
    and by ||H||_F for p2-p4.
    """

    p1: float
    p2: float
    p3: float
    p4: float
    p1_rel: float
    p2_rel: float
    p3_rel: float
    p4_rel: float

    @property
    def max_rel(self):
        return max(self.p1_rel, self.p2_rel, self.p3_rel, self.p4_rel)

    def to_dict(self):
        return {k: getattr(self, k) for k in
                ("p1", "p2", "p3", "p4", "p1_rel", "p2_rel", "p3_rel", "p4_rel")}


def svd_full(A, rank_tol=DEFAULT_RANK_TOL):
    """Full SVD of A with numeric rank r = #{i : sigma_i > rank_tol * sigma_0}.

    Parameters
    ----------
    A : array_like, shape (m, n)
    rank_tol : float in (0, 1)
        Relative singular value cutoff.

    Raises
    ------
    ValueError for non-finite input or out-of-range tolerance;
    numpy.linalg.LinAlgError if the factorization does not converge.
    """
    A = as_matrix(A)
    if not 0.0 < rank_tol < 1.0:
        raise ValueError(f"rank_tol must lie in (0, 1), got {rank_tol}")
    U, s, Vt = np.linalg.svd(A, full_matrices=True)
    r = int(np.count_nonzero(s > rank_tol * s[0])) if s[0] > 0 else 0
    return SvdFactors(U=U, sigma=s, V=Vt.T, r=r, rank_tol=rank_tol)


def pseudoinverse(f):
    """Moore-Penrose pseudoinverse V1 D^{-1} U1^T from an SVD."""
    if f.r == 0:
        return np.zeros((f.n, f.m))
    return (f.V1 / f.d) @ f.U1.T


def numeric_rank(A, rank_tol=DEFAULT_RANK_TOL):
    """Numeric rank of A under a relative singular value cutoff."""
    return svd_full(A, rank_tol).r


def gamma_blocks(H, f):
    """Partition Gamma = V^T H U into the X, Y, Z, W blocks."""
    H = as_matrix(H, "H")
    if H.shape != (f.n, f.m):
        raise ValueError(f"H has shape {H.shape}, expected {(f.n, f.m)}")
    gamma = f.V.T @ H @ f.U
    r = f.r
    return GammaBlocks(X=gamma[:r, :r], Y=gamma[:r, r:], Z=gamma[r:, :r], W=gamma[r:, r:])


def reconstruct_from_blocks(g, f):
    """Rebuild H = V Gamma U^T from its blocks."""
    r = f.r
    if g.X.shape != (r, r) or g.Y.shape != (r, f.m - r) \
            or g.Z.shape != (f.n - r, r) or g.W.shape != (f.n - r, f.m - r):
        raise ValueError("block dimensions inconsistent with the SVD factors")
    return f.V @ g.assemble() @ f.U.T


def _values(M):
    # dense arrays and triplet matrices share the entrywise norms; zeros
    # absent from the triplet storage contribute nothing to any of them
    return M.data if isinstance(M, SparseMatrix) else np.asarray(M)


def norm0(M, tol=DEFAULT_ZERO_TOL):
    """Number of entries with |value| > tol."""
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    return int(np.count_nonzero(np.abs(_values(M)) > tol))


def norm1(M):
    """Entrywise 1-norm (the vector 1-norm of vec(M))."""
    return float(np.abs(_values(M)).sum())


def frobenius(M):
    """Frobenius norm (the vector 2-norm of vec(M))."""
    return float(np.linalg.norm(_values(M)))


def _rel(value, scale):
    if scale > 0.0:
        return value / scale
    return 0.0 if value == 0.0 else float("inf")


def mp_residuals(A, H):
    """Residuals of the four pseudoinverse properties for the pair (A, H)."""
    A = as_matrix(A)
    H = as_matrix(H, "H")
    check_conformal(A, H)
    AH = A @ H
    HA = H @ A
    p1 = frobenius(AH @ A - A)
    p2 = frobenius(HA @ H - H)
    p3 = frobenius(AH.T - AH)
    p4 = frobenius(HA.T - HA)
    na, nh = frobenius(A), frobenius(H)
    return MpResiduals(
        p1=p1, p2=p2, p3=p3, p4=p4,
        p1_rel=_rel(p1, na), p2_rel=_rel(p2, nh),
        p3_rel=_rel(p3, nh), p4_rel=_rel(p4, nh),
    )
