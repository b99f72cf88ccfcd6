"""Input validation helpers shared by the library, estimators, and CLI."""

import numpy as np


def as_matrix(A, name="A"):
    """Coerce to a 2-D float64 array with all entries finite."""
    M = np.asarray(A, dtype=float)
    if M.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got ndim={M.ndim}")
    if M.shape[0] < 1 or M.shape[1] < 1:
        raise ValueError(f"{name} must have nonzero dimensions, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError(f"{name} contains non-finite entries")
    return M


def as_vector(b, name="b"):
    """Coerce to a 1-D float64 array with all entries finite."""
    v = np.asarray(b, dtype=float)
    if v.ndim == 2 and 1 in v.shape:
        v = v.ravel()
    if v.ndim != 1:
        raise ValueError(f"{name} must be 1-dimensional, got ndim={v.ndim}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} contains non-finite entries")
    return v


def check_square(A, name="A"):
    A = as_matrix(A, name)
    if A.shape[0] != A.shape[1]:
        raise ValueError(f"{name} must be square, got shape {A.shape}")
    return A


def check_symmetric(A, name="A", tol=1e-10):
    """Validate ||A - A^T||_F <= tol * ||A||_F (always passes for A = 0)."""
    A = check_square(A, name)
    scale = np.linalg.norm(A)
    if np.linalg.norm(A - A.T) > tol * scale:
        raise ValueError(f"{name} is not symmetric to relative tolerance {tol:g}")
    return A


def check_conformal(A, H, name="H"):
    """H must be n x m when A is m x n."""
    m, n = A.shape
    if H.shape != (n, m):
        raise ValueError(
            f"{name} has shape {H.shape}, expected {(n, m)} conformal with A {A.shape}"
        )
