"""Command-line interface.

Subcommands: gen, pinv, solve-sym, solve-ahref, lsq, compare, export-lp,
bench, verify. Exit code 0 on success, 2 on input errors, 3 when a solve
did not converge within its limits.
"""

import argparse
import csv
import io
import json
import sys

import numpy as np

from .bench import BenchConfig, run_benchmark
from .drs import DrsConfig, check_sym_characterization, solve_ahref_ginv, solve_symmetric_ginv
from .generate import GenSpec, generate
from .linalg import mp_residuals, norm0, norm1, numeric_rank, pseudoinverse, svd_full
from .lpformat import export_lp
from .lstsq import LsqInstance, build_ahat, compare_strategies, solve_via_h, solve_via_hhat
from .mmio import MatrixMarketError, read_matrix_market, write_matrix_market
from .sparse import SparseMatrix
from .validation import as_vector

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NO_CONVERGENCE = 3


def _add_tol_flags(p):
    p.add_argument("--rank-tol", type=float, default=1e-8,
                   help="relative singular value cutoff (default 1e-8)")
    p.add_argument("--zero-tol", type=float, default=1e-5,
                   help="|entry| threshold for nonzero counts (default 1e-5)")


def _add_drs_flags(p):
    p.add_argument("--step-lambda", type=float, default=1e-2)
    p.add_argument("--eps-abs", type=float, default=1e-5)
    p.add_argument("--eps-rel", type=float, default=1e-3)
    p.add_argument("--max-iter", type=int, default=50_000)
    p.add_argument("--time-limit", type=float, default=None,
                   help="wall-clock limit per solve, seconds")


def _add_format_flag(p):
    p.add_argument("--format", choices=("csv", "json"), default="json",
                   help="report format (default json)")


def _drs_config(args):
    return DrsConfig(step_lambda=args.step_lambda, eps_abs=args.eps_abs,
                     eps_rel=args.eps_rel, max_iter=args.max_iter)


def _emit(report, fmt):
    if fmt == "json":
        print(json.dumps(report, indent=2))
    else:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(report.keys())
        writer.writerow([repr(v) if isinstance(v, float) else v
                         for v in report.values()])
        print(buf.getvalue(), end="")


def _read_dense(path):
    return read_matrix_market(path).to_dense()


def _solve_report(A, result, zero_tol, rank_tol):
    pinv = pseudoinverse(svd_full(A, rank_tol))
    r = numeric_rank(A, rank_tol)
    n0h, n1h = norm0(result.H, zero_tol), norm1(result.H)
    n0p, n1p = norm0(pinv, zero_tol), norm1(pinv)
    report = {
        "m": A.shape[0], "n": A.shape[1], "r": r,
        "objective": result.objective,
        "iterations": result.iterations,
        "converged": result.converged,
        "elapsed": result.elapsed,
        "norm0_h": n0h, "norm1_h": n1h,
        "norm0_pinv": n0p, "norm1_pinv": n1p,
        "ratio_extreme": n0h / (r * r + r),
        "ratio_norm0": n0h / n0p if n0p else 0.0,
        "ratio_norm1": n1h / n1p if n1p else 0.0,
        "ratio_rank": numeric_rank(result.H, zero_tol) / r,
    }
    report.update(result.residuals.to_dict())
    return report


def _cmd_gen(args):
    spec = GenSpec(m=args.m, n=args.n, r=args.r, density=args.density,
                   seed=args.seed, kind=args.kind)
    A = generate(spec)
    write_matrix_market(SparseMatrix.from_dense(A), args.out,
                        comment=spec.instance_id)
    print(f"wrote {args.out} ({spec.instance_id})")
    return EXIT_OK


def _cmd_pinv(args):
    A = _read_dense(args.matrix)
    write_matrix_market(pseudoinverse(svd_full(A, args.rank_tol)), args.out)
    print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_solve(args):
    A = _read_dense(args.matrix)
    result = args.solver(A, _drs_config(args), rank_tol=args.rank_tol,
                         time_limit=args.time_limit)
    if args.out:
        write_matrix_market(result.H, args.out)
    _emit(_solve_report(A, result, args.zero_tol, args.rank_tol), args.format)
    return EXIT_OK if result.converged else EXIT_NO_CONVERGENCE


def _cmd_lsq(args):
    A = _read_dense(args.matrix)
    b = as_vector(_read_dense(args.rhs).ravel() if args.rhs.endswith(".mtx")
                  else np.loadtxt(args.rhs))
    L = _read_dense(args.el) if args.el else None
    if args.ridge_lambda > 0 and L is None:
        L = np.eye(A.shape[1])
    inst = LsqInstance(A=A, b=b, L=L, ridge_lambda=args.ridge_lambda)
    cfg = _drs_config(args)
    if args.strategy == "via_h":
        res = solve_ahref_ginv(A, cfg, rank_tol=args.rank_tol,
                               time_limit=args.time_limit)
        sol = solve_via_h(inst, res.H, args.zero_tol)
    else:
        ahat = build_ahat(A, L, args.ridge_lambda)
        res = solve_symmetric_ginv(ahat, cfg, rank_tol=args.rank_tol,
                                   time_limit=args.time_limit)
        sol = solve_via_hhat(inst, res.H, args.zero_tol)
    if args.out:
        write_matrix_market(sol.theta.reshape(-1, 1), args.out)
    _emit({"strategy": sol.strategy,
           "objective": sol.objective,
           "normal_residual": sol.normal_residual,
           "mult_count": sol.mult_count,
           "solver_converged": res.converged,
           "solver_iterations": res.iterations,
           "theta": list(sol.theta)}, args.format)
    return EXIT_OK if res.converged else EXIT_NO_CONVERGENCE


def _cmd_compare(args):
    A = _read_dense(args.matrix)
    rng = np.random.Generator(np.random.Philox(key=np.uint64(args.seed)))
    b_samples = [rng.normal(size=A.shape[0]) for _ in range(args.samples)]
    report = compare_strategies(A, _drs_config(args), b_samples,
                                rank_tol=args.rank_tol, zero_tol=args.zero_tol,
                                time_limit=args.time_limit)
    d = report.to_dict()
    if args.format == "csv":
        d = {k: v for k, v in d.items() if k != "samples"}
    _emit(d, args.format)
    ok = report.converged_h and report.converged_hhat
    return EXIT_OK if ok else EXIT_NO_CONVERGENCE


def _cmd_export_lp(args):
    export_lp(_read_dense(args.matrix), args.out)
    print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_bench(args):
    cfg = BenchConfig.from_json(args.config)
    if args.workers is not None:
        cfg.workers = args.workers
    rows, averages = run_benchmark(cfg)
    for row in rows + averages:
        status = "ERROR " + row.error if row.error else \
            f"ratio1={row.ratio_norm1:.3f} ratio0={row.ratio_norm0:.3f}" \
            f" rank={row.ratio_rank:.2f} it={row.iterations:.0f}{row.flag}"
        print(f"{row.instance}: {status}")
    return EXIT_OK


def _cmd_verify(args):
    A = _read_dense(args.matrix)
    H = _read_dense(args.inverse)
    res = mp_residuals(A, H)
    report = res.to_dict()
    symmetric = A.shape[0] == A.shape[1] and \
        np.linalg.norm(A - A.T) <= 1e-10 * max(np.linalg.norm(A), 1e-300)
    if symmetric:
        report["sym_characterization"] = check_sym_characterization(A, H, args.tol)
    _emit(report, args.format)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sparseginv",
        description="Sparse generalized inverses by 1-norm minimization, "
                    "with least-squares applications.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a synthetic instance as .mtx")
    p.add_argument("kind", choices=("rect_lowrank", "sym_gram"))
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("r", type=int)
    p.add_argument("density", type=float)
    p.add_argument("out")
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("pinv", help="Moore-Penrose pseudoinverse")
    p.add_argument("matrix")
    p.add_argument("out")
    _add_tol_flags(p)
    p.set_defaults(func=_cmd_pinv)

    for name, solver in (("solve-sym", solve_symmetric_ginv),
                         ("solve-ahref", solve_ahref_ginv)):
        p = sub.add_parser(name, help=f"1-norm sparse inverse ({name[6:]})")
        p.add_argument("matrix")
        p.add_argument("--out", help="write the inverse to this .mtx path")
        _add_tol_flags(p)
        _add_drs_flags(p)
        _add_format_flag(p)
        p.set_defaults(func=_cmd_solve, solver=solver)

    p = sub.add_parser("lsq", help="least squares / generalized ridge solve")
    p.add_argument("matrix")
    p.add_argument("rhs", help="right-hand side (.mtx vector or text column)")
    p.add_argument("--el", help="regularizer matrix L (.mtx)")
    p.add_argument("--ridge-lambda", type=float, default=0.0)
    p.add_argument("--strategy", choices=("via_hhat", "via_h"),
                   default="via_hhat")
    p.add_argument("--out", help="write theta to this .mtx path")
    _add_tol_flags(p)
    _add_drs_flags(p)
    _add_format_flag(p)
    p.set_defaults(func=_cmd_lsq)

    p = sub.add_parser("compare", help="compare the two repeated-solve strategies")
    p.add_argument("matrix")
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    _add_tol_flags(p)
    _add_drs_flags(p)
    _add_format_flag(p)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("export-lp", help="write the LP-format model")
    p.add_argument("matrix")
    p.add_argument("out")
    p.set_defaults(func=_cmd_export_lp)

    p = sub.add_parser("bench", help="run a benchmark grid from a JSON config")
    p.add_argument("config")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("verify", help="pseudoinverse-property residuals of (A, H)")
    p.add_argument("matrix")
    p.add_argument("inverse")
    p.add_argument("--tol", type=float, default=1e-6)
    _add_format_flag(p)
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MatrixMarketError, ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
