"""Sparse generalized inverses by entrywise 1-norm minimization with
Douglas-Rachford splitting, and closed-form least-squares solvers built on
them. Includes a seeded instance generator, Matrix Market IO, LP-model
export, and a benchmark harness."""

from .bench import BenchConfig, ExperimentRow, run_benchmark, run_instance
from .drs import (
    AhRefGinvSet,
    DrsConfig,
    DrsResult,
    DrsState,
    SymmetricGinvSet,
    check_sym_characterization,
    drs_iterate,
    drs_solve,
    project_ahref_affine,
    project_symmetric_ginv,
    soft_threshold,
    solve_ahref_ginv,
    solve_symmetric_ginv,
)
from .estimators import (
    AhSymmetricSparseInverse,
    SparseInverseRegression,
    SymmetricSparseInverse,
)
from .generate import GenSpec, gen_rect_lowrank, gen_sparse, gen_sym_gram, generate
from .linalg import (
    GammaBlocks,
    MpResiduals,
    SvdFactors,
    frobenius,
    gamma_blocks,
    mp_residuals,
    norm0,
    norm1,
    numeric_rank,
    pseudoinverse,
    reconstruct_from_blocks,
    svd_full,
)
from .lpformat import export_lp
from .lstsq import (
    LsqInstance,
    LsqSolution,
    StrategyReport,
    build_ahat,
    check_solvability,
    compare_strategies,
    solve_via_h,
    solve_via_hhat,
)
from .mmio import MatrixMarketError, read_matrix_market, write_matrix_market
from .sparse import SparseMatrix

__version__ = "0.1.0"

__all__ = [
    "AhRefGinvSet",
    "AhSymmetricSparseInverse",
    "BenchConfig",
    "DrsConfig",
    "DrsResult",
    "DrsState",
    "ExperimentRow",
    "GammaBlocks",
    "GenSpec",
    "LsqInstance",
    "LsqSolution",
    "MatrixMarketError",
    "MpResiduals",
    "SparseInverseRegression",
    "SparseMatrix",
    "StrategyReport",
    "SvdFactors",
    "SymmetricGinvSet",
    "SymmetricSparseInverse",
    "build_ahat",
    "check_solvability",
    "check_sym_characterization",
    "compare_strategies",
    "drs_iterate",
    "drs_solve",
    "export_lp",
    "frobenius",
    "gamma_blocks",
    "gen_rect_lowrank",
    "gen_sparse",
    "gen_sym_gram",
    "generate",
    "mp_residuals",
    "norm0",
    "norm1",
    "numeric_rank",
    "project_ahref_affine",
    "project_symmetric_ginv",
    "pseudoinverse",
    "read_matrix_market",
    "reconstruct_from_blocks",
    "run_benchmark",
    "run_instance",
    "soft_threshold",
    "solve_ahref_ginv",
    "solve_symmetric_ginv",
    "solve_via_h",
    "solve_via_hhat",
    "svd_full",
    "write_matrix_market",
]
