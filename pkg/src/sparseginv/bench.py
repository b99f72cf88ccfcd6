"""Benchmark harness: run the 1-norm solvers over a grid of generated
instances and report the sparsity/norm/rank metrics as CSV and JSON rows.

Each grid cell is a (kind, m, n, r, density) configuration solved for a
number of seeds; sym_gram cells run the symmetric-inverse solver on A,
rect_lowrank cells run the three-property solver. Per-cell average rows are
appended after the per-instance rows. An instance that hits the wall-clock
limit keeps its row, flagged "*" with converged = false; a failed instance
records its error and never aborts the grid.
"""

import csv
import dataclasses
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .drs import DrsConfig, solve_ahref_ginv, solve_symmetric_ginv
from .generate import GenSpec, generate
from .linalg import (
    DEFAULT_RANK_TOL,
    DEFAULT_ZERO_TOL,
    norm0,
    norm1,
    numeric_rank,
    pseudoinverse,
    svd_full,
)

_NUMERIC_FIELDS = (
    "m", "n", "r", "density", "norm0_a", "norm0_pinv", "norm1_pinv",
    "norm0_h", "norm1_h", "ratio_extreme", "ratio_norm0", "ratio_norm1",
    "ratio_rank", "iterations", "elapsed",
)


@dataclass
class ExperimentRow:
    """Metrics for one solved instance (or one per-cell average)."""

    instance: str
    m: int
    n: int
    r: int
    density: float
    norm0_a: int = 0
    norm0_pinv: int = 0
    norm1_pinv: float = 0.0
    norm0_h: int = 0
    norm1_h: float = 0.0
    ratio_extreme: float = 0.0  # ||H||_0 / (r^2 + r)
    ratio_norm0: float = 0.0    # ||H||_0 / ||pinv||_0
    ratio_norm1: float = 0.0    # ||H||_1 / ||pinv||_1
    ratio_rank: float = 0.0     # rank(H) / r
    iterations: int = 0
    elapsed: float = 0.0
    converged: bool = False
    flag: str = ""              # "*" when the time limit was exceeded
    error: str = ""

    def to_dict(self):
        return dataclasses.asdict(self)


@dataclass
class BenchConfig:
    """Grid definition plus solver and reporting parameters."""

    grid: list = field(default_factory=list)  # dicts: kind, m, n, r, density
    seeds: int = 5
    base_seed: int = 1
    drs: DrsConfig = field(default_factory=DrsConfig)
    time_limit: float | None = None
    rank_tol: float = DEFAULT_RANK_TOL
    zero_tol: float = DEFAULT_ZERO_TOL
    workers: int = 1
    out_csv: str | None = None
    out_json: str | None = None

    def __post_init__(self):
        if self.seeds < 1:
            raise ValueError("seeds per cell must be at least 1")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        if "drs" in d and isinstance(d["drs"], dict):
            d["drs"] = DrsConfig(**d["drs"])
        return cls(**d)

    @classmethod
    def from_json(cls, path):
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def run_instance(spec, drs_cfg=None, time_limit=None,
                 rank_tol=DEFAULT_RANK_TOL, zero_tol=DEFAULT_ZERO_TOL):
    """Generate one instance, solve it, and compute its metric row.

    The reported rank(H) uses zero_tol as its relative singular value
    cutoff, matching the tolerance that defines the nonzero counts.
    """
    A = generate(spec)
    solve = solve_symmetric_ginv if spec.kind == "sym_gram" else solve_ahref_ginv
    result = solve(A, drs_cfg, rank_tol=rank_tol, time_limit=time_limit)
    f = svd_full(A, rank_tol)
    pinv = pseudoinverse(f)
    r = f.r
    n0_pinv, n1_pinv = norm0(pinv, zero_tol), norm1(pinv)
    n0_h, n1_h = norm0(result.H, zero_tol), norm1(result.H)
    rank_h = numeric_rank(result.H, zero_tol)
    return ExperimentRow(
        instance=spec.instance_id,
        m=spec.m, n=spec.n, r=spec.r, density=spec.density,
        norm0_a=norm0(A, zero_tol),
        norm0_pinv=n0_pinv, norm1_pinv=n1_pinv,
        norm0_h=n0_h, norm1_h=n1_h,
        ratio_extreme=n0_h / (r * r + r),
        ratio_norm0=n0_h / n0_pinv if n0_pinv else 0.0,
        ratio_norm1=n1_h / n1_pinv if n1_pinv else 0.0,
        ratio_rank=rank_h / r,
        iterations=result.iterations,
        elapsed=result.elapsed,
        converged=result.converged,
        flag="*" if result.timed_out else "",
    )


def _cell_id(cell):
    return (f"{cell['kind']}-m{cell['m']}-n{cell['n']}-r{cell['r']}"
            f"-d{cell['density']:g}")


def _average_row(cell, rows):
    ok = [r for r in rows if not r.error]
    avg = ExperimentRow(instance=_cell_id(cell) + "-avg",
                        m=cell["m"], n=cell["n"], r=cell["r"],
                        density=cell["density"])
    if not ok:
        avg.error = "no successful instances"
        return avg
    for name in _NUMERIC_FIELDS[4:]:
        setattr(avg, name, sum(getattr(r, name) for r in ok) / len(ok))
    avg.converged = all(r.converged for r in ok)
    avg.flag = "*" if any(r.flag for r in ok) else ""
    return avg


def run_benchmark(cfg):
    """Run the whole grid; returns (rows, averages) and writes the
    configured CSV/JSON outputs (rows followed by averages)."""
    tasks = []
    for cell in cfg.grid:
        for i in range(cfg.seeds):
            spec = GenSpec(m=cell["m"], n=cell["n"], r=cell["r"],
                           density=cell["density"], seed=cfg.base_seed + i,
                           kind=cell["kind"])
            tasks.append((cell, spec))

    def run_one(task):
        cell, spec = task
        try:
            return run_instance(spec, cfg.drs, cfg.time_limit,
                                cfg.rank_tol, cfg.zero_tol)
        except Exception as exc:  # record, never abort the grid
            return ExperimentRow(instance=spec.instance_id, m=spec.m,
                                 n=spec.n, r=spec.r, density=spec.density,
                                 error=str(exc))

    if cfg.workers > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(run_one, tasks))
    else:
        results = [run_one(t) for t in tasks]

    by_cell = {}
    for (cell, _spec), row in zip(tasks, results):
        by_cell.setdefault(_cell_id(cell), (cell, []))[1].append(row)

    rows = sorted(results, key=lambda r: r.instance)
    averages = [_average_row(cell, cell_rows)
                for cell, cell_rows in by_cell.values()]
    averages.sort(key=lambda r: r.instance)

    if cfg.out_csv:
        write_rows_csv(rows + averages, cfg.out_csv)
    if cfg.out_json:
        write_rows_json(rows + averages, cfg.out_json)
    return rows, averages


def write_rows_csv(rows, path):
    names = [f.name for f in dataclasses.fields(ExperimentRow)]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(names)
        for row in rows:
            writer.writerow([repr(v) if isinstance(v, float) else v
                             for v in (getattr(row, n) for n in names)])


def write_rows_json(rows, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump([r.to_dict() for r in rows], fh, indent=2)
        fh.write("\n")


def _parse_cell(raw):
    try:
        return int(raw)
    except ValueError:
        return float(raw)


def read_rows_csv(path):
    """Parse a rows CSV back into ExperimentRow objects."""
    text_fields = {"instance", "flag", "error"}
    out = []
    with open(path, "r", newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        for rec in reader:
            kwargs = {}
            for f in dataclasses.fields(ExperimentRow):
                raw = rec[f.name]
                if f.name in text_fields:
                    kwargs[f.name] = raw
                elif f.name == "converged":
                    kwargs[f.name] = raw == "True"
                else:
                    kwargs[f.name] = _parse_cell(raw)
            out.append(ExperimentRow(**kwargs))
    return out
