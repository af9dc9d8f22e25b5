"""Parameter sweep harness emitting one CSV row per grid point.

A sweep spec names a base semi-symmetric structure, one or more parameter
axes (per-size prizes ``v<k>``, power exponents ``r`` or ``r<k>``, cost
parameters ``cost_p`` / ``cost_kappa``), and per-axis ranges.  Grid points
are enumerated lexicographically in axis order, solved independently under
both regimes, and written in that deterministic order regardless of worker
completion order.  Existing rows in the output file are skipped, so an
interrupted sweep resumes where it stopped; rows are flushed as they are
written so an interrupt preserves everything completed.
"""

from __future__ import annotations

import csv
import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .equilibrium import solve_de, solve_ue
from .functions import PowerCost, PowerProduction
from .network import SemiSymmetricStructure

__all__ = ["SweepAxis", "SweepSpec", "run_sweep", "DEFAULT_MAX_GRID"]

DEFAULT_MAX_GRID = 1_000_000
MAX_GRID_ENV = "CONFLICTNET_MAX_GRID"

_RESULT_COLUMNS = ("X_de", "X_ue", "payoff_de", "payoff_ue", "gap")


@dataclass(frozen=True)
class SweepAxis:
    """One swept parameter with an inclusive linear range."""

    param: str
    minimum: float
    maximum: float
    steps: int

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError(f"axis {self.param!r} needs at least 1 step")
        if self.steps > 1 and not self.maximum > self.minimum:
            raise ValueError(f"axis {self.param!r} range is empty")

    def values(self) -> np.ndarray:
        if self.steps == 1:
            return np.array([self.minimum])
        return np.linspace(self.minimum, self.maximum, self.steps)


@dataclass(frozen=True)
class SweepSpec:
    """Base structure plus axes; see module docstring for axis names."""

    base: SemiSymmetricStructure
    axes: tuple[SweepAxis, ...]
    parallelism: int = 1

    def __post_init__(self):
        if not self.axes:
            raise ValueError("sweep needs at least one axis")
        if self.parallelism < 1:
            raise ValueError("parallelism must be >= 1")
        cap = int(os.environ.get(MAX_GRID_ENV, DEFAULT_MAX_GRID))
        total = 1
        for axis in self.axes:
            total *= axis.steps
        if total > cap:
            raise ValueError(f"sweep grid has {total} points, cap is {cap}")

    @property
    def grid_size(self) -> int:
        total = 1
        for axis in self.axes:
            total *= axis.steps
        return total


def _apply_param(ss: SemiSymmetricStructure, param: str, value: float) -> SemiSymmetricStructure:
    prizes = dict(ss.prizes)
    productions = dict(ss.productions)
    cost = ss.cost
    if param.startswith("v") and param[1:].isdigit():
        k = int(param[1:])
        if k not in prizes:
            raise ValueError(f"sweep parameter {param!r}: no size-{k} battles")
        prizes[k] = float(value)
    elif param == "r" or (param.startswith("r") and param[1:].isdigit()):
        sizes = ss.sizes if param == "r" else (int(param[1:]),)
        for k in sizes:
            if k not in productions:
                raise ValueError(f"sweep parameter {param!r}: no size-{k} battles")
            base = productions[k]
            scale = base.A if isinstance(base, PowerProduction) else 1.0
            productions[k] = PowerProduction(A=scale, r=float(value))
    elif param == "cost_p":
        kappa = cost.kappa if isinstance(cost, PowerCost) else 1.0
        cost = PowerCost(kappa=kappa, p=float(value))
    elif param == "cost_kappa":
        p = cost.p if isinstance(cost, PowerCost) else 2.0
        cost = PowerCost(kappa=float(value), p=p)
    else:
        raise ValueError(f"unknown sweep parameter {param!r}")
    return SemiSymmetricStructure(
        sizes=ss.sizes,
        degrees=dict(ss.degrees),
        prizes=prizes,
        productions=productions,
        cost=cost,
    )


def _solve_point(args) -> tuple:
    ss, values = args
    de = solve_de(ss)
    ue = solve_ue(ss)
    gap = abs(de.total - ue.total) / abs(ue.total)
    return values + (de.total, ue.total, de.payoff, ue.payoff, gap)


def _format_cell(value: float) -> str:
    return repr(float(value))


def _existing_keys(path: Path, params: tuple[str, ...]) -> set[tuple[str, ...]]:
    if not path.exists() or path.stat().st_size == 0:
        return set()
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or any(
            p not in reader.fieldnames for p in params
        ):
            raise ValueError(
                f"existing output {path} does not match the sweep's parameters"
            )
        return {tuple(row[p] for p in params) for row in reader}


def run_sweep(spec: SweepSpec, output) -> int:
    """Execute a sweep, appending missing rows to ``output``.

    Returns the number of rows written this run.  Row order is the
    lexicographic product of the axes in spec order.
    """
    params = tuple(axis.param for axis in spec.axes)
    path = Path(output)
    done = _existing_keys(path, params)
    header_needed = not path.exists() or path.stat().st_size == 0

    pending: list[tuple[SemiSymmetricStructure, tuple[float, ...]]] = []
    for combo in itertools.product(*(axis.values() for axis in spec.axes)):
        values = tuple(float(v) for v in combo)
        key = tuple(_format_cell(v) for v in values)
        if key in done:
            continue
        ss = spec.base
        for param, value in zip(params, values):
            ss = _apply_param(ss, param, value)
        pending.append((ss, values))

    written = 0
    with open(path, "a", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        if header_needed:
            writer.writerow(params + _RESULT_COLUMNS)
            fh.flush()
        try:
            if spec.parallelism > 1:
                with ProcessPoolExecutor(max_workers=spec.parallelism) as pool:
                    rows = pool.map(_solve_point, pending, chunksize=8)
                    for row in rows:
                        writer.writerow([_format_cell(v) for v in row])
                        fh.flush()
                        written += 1
            else:
                for item in pending:
                    row = _solve_point(item)
                    writer.writerow([_format_cell(v) for v in row])
                    fh.flush()
                    written += 1
        except KeyboardInterrupt:
            fh.flush()
            raise
    return written
