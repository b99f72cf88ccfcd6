"""Seeded generation of synthetic test matrices: sparse rectangular
low-rank matrices and symmetric PSD low-rank Gram matrices.

The generator is numpy's Philox (counter-based, 64-bit keys), so identical
specs reproduce bit-identical instances on any platform. A low-rank m x n
matrix is built from an m x r sparse uniform sample whose remaining n - r
columns are random 2-term combinations of the first r; the Gram variant
squares an n x n matrix built the same way.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import DEFAULT_RANK_TOL, numeric_rank
from .sparse import SparseMatrix

KINDS = ("rect_lowrank", "sym_gram")
_MAX_ATTEMPTS = 10
_COMBO_NNZ = 2  # nonzeros per combination-coefficient vector


@dataclass(frozen=True)
class GenSpec:
    """Shape, rank, density, seed, and family of one synthetic instance."""

    m: int
    n: int
    r: int
    density: float
    seed: int
    kind: str = "rect_lowrank"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not 1 <= self.r <= min(self.m, self.n):
            raise ValueError(f"need 1 <= r <= min(m, n), got r={self.r}")
        if not 0.0 < self.density <= 1.0:
            raise ValueError("density must lie in (0, 1]")
        if self.density * self.m * self.r < self.r:
            raise ValueError("density too low to plausibly reach the target rank")
        if self.kind == "sym_gram" and self.m != self.n:
            raise ValueError("sym_gram instances require m == n")

    @property
    def instance_id(self):
        return f"{self.kind}-m{self.m}-n{self.n}-r{self.r}-d{self.density:g}-s{self.seed}"


def _rng(seed):
    return np.random.Generator(np.random.Philox(key=np.uint64(seed)))


def _sample_dense(rng, m, n, density):
    """Dense array with round(density*m*n) uniform(0,1) values at uniformly
    chosen distinct positions."""
    nnz = int(round(density * m * n))
    flat = np.zeros(m * n)
    idx = rng.choice(m * n, size=nnz, replace=False)
    flat[idx] = rng.uniform(0.0, 1.0, size=nnz)
    return flat.reshape(m, n)


def gen_sparse(m, n, density, seed):
    """Sparse m x n sample with ~density*m*n uniform(0,1) nonzeros."""
    if not 0.0 < density <= 1.0:
        raise ValueError("density must lie in (0, 1]")
    return SparseMatrix.from_dense(_sample_dense(_rng(seed), m, n, density))


def _lowrank_dense(rng, m, n, r, density):
    B1 = _sample_dense(rng, m, r, density)
    if r == n:
        return B1
    extra = np.empty((m, n - r))
    k = min(_COMBO_NNZ, r)
    for j in range(n - r):
        picks = rng.choice(r, size=k, replace=False)
        coefs = rng.uniform(0.0, 1.0, size=k)
        extra[:, j] = B1[:, picks] @ coefs
    return np.hstack([B1, extra])


def gen_rect_lowrank(spec):
    """m x n matrix of numeric rank exactly spec.r.

    The sampled m x r block may come out rank deficient; the seed is then
    perturbed and generation retried, up to a small attempt cap.
    """
    if spec.kind != "rect_lowrank":
        raise ValueError(f"expected kind rect_lowrank, got {spec.kind!r}")
    for attempt in range(_MAX_ATTEMPTS):
        A = _lowrank_dense(_rng(spec.seed + attempt), spec.m, spec.n, spec.r,
                           spec.density)
        if numeric_rank(A, DEFAULT_RANK_TOL) == spec.r:
            return A
    raise RuntimeError(
        f"could not reach rank {spec.r} in {_MAX_ATTEMPTS} attempts for {spec}")


def gen_sym_gram(spec):
    """Symmetric PSD n x n matrix of numeric rank spec.r, built as B^T B
    from an n x n low-rank B and symmetrized exactly."""
    if spec.kind != "sym_gram":
        raise ValueError(f"expected kind sym_gram, got {spec.kind!r}")
    for attempt in range(_MAX_ATTEMPTS):
        B = _lowrank_dense(_rng(spec.seed + attempt), spec.n, spec.n, spec.r,
                           spec.density)
        M = B.T @ B
        A = 0.5 * (M + M.T)
        if numeric_rank(A, DEFAULT_RANK_TOL) == spec.r:
            return A
    raise RuntimeError(
        f"could not reach rank {spec.r} in {_MAX_ATTEMPTS} attempts for {spec}")


def generate(spec):
    """Dispatch on spec.kind."""
    if spec.kind == "sym_gram":
        return gen_sym_gram(spec)
    return gen_rect_lowrank(spec)
