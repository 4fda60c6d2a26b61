"""Parameter scans over the mixture families and thermal states.

Grid cells are independent; with ``workers > 1`` they are evaluated in a
process pool and the rows are returned in grid order.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, TextIO

import numpy as np

from . import __version__
from .criteria import evaluate
from .io import fmt
from .states import PauliStringHamiltonian, figure1_family, figure3_family, hamiltonian_h1, hamiltonian_h2, thermal_states

SIMPLEX_TOL = 1e-12
HAMILTONIANS = {"h1": hamiltonian_h1, "h2": hamiltonian_h2}


@dataclass
class Axis:
    name: str
    lo: float
    hi: float
    points: int

    def __post_init__(self):
        if self.points < 2:
            raise ValueError(f"axis {self.name} needs at least 2 points")

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.points)


@dataclass
class ScanConfig:
    family: str
    axes: list[Axis]
    criteria: list[str]
    params: dict = field(default_factory=dict)
    workers: int = 1
    seed: int = 0

    def describe(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, separators=(",", ":"))


def default_workers() -> int:
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)


def _map(fn: Callable, items: list, workers: int) -> list:
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


# --- region scans -------------------------------------------------------------------

REGION_COLUMNS = ["alpha", "beta", "criterion", "status", "violated", "best_value", "threshold", "margin"]


def family_state(family: str, alpha: float, beta: float, d: int | None = None):
    if family == "fig1":
        return figure1_family(alpha, beta, d)
    if family == "fig3":
        return figure3_family(alpha, beta)
    raise ValueError(f"unknown region family {family!r}; use fig1 or fig3")


def _region_cell(args) -> list[dict]:
    family, d, alpha, beta, criteria = args
    if alpha + beta > 1 + SIMPLEX_TOL:
        return [dict(alpha=alpha, beta=beta, criterion=c, status="skip") for c in criteria]
    rho = family_state(family, alpha, beta, d)
    rows = []
    for c in criteria:
        res = evaluate(rho, c)
        best = res.best()
        rows.append(dict(alpha=alpha, beta=beta, criterion=res.criterion, status="ok",
                         violated=res.violated, best_value=best.value,
                         threshold=best.threshold, margin=res.margin))
    return rows


def scan_region(config: ScanConfig) -> list[dict]:
    """One row per ``(alpha, beta)`` grid cell and criterion."""
    if config.family not in ("fig1", "fig3"):
        raise ValueError(f"unknown region family {config.family!r}; use fig1 or fig3")
    d = config.params.get("d", 2) if config.family == "fig1" else None
    alpha_axis, beta_axis = config.axes
    criteria = [c.upper() for c in config.criteria]
    # fail on criterion/dimension mismatch before launching the grid
    for c in criteria:
        evaluate(family_state(config.family, 1.0, 0.0, d), c)
    cells = [(config.family, d, float(a), float(b), criteria)
             for a in alpha_axis.values() for b in beta_axis.values()]
    return [row for rows in _map(_region_cell, cells, config.workers) for row in rows]


# --- thermal scans -------------------------------------------------------------------

THERMAL_COLUMNS = ["h", "kT", "t4_violated", "t4_unfolding_violated", "t3_violated",
                   "t4_margin", "t4_unfolding_margin", "t3_margin"]


def _thermal_row(args) -> list[dict]:
    family, n, h, kts = args
    H: PauliStringHamiltonian = HAMILTONIANS[family](n, h)
    rows = []
    for kT, rho in zip(kts, thermal_states(H, kts)):
        t4 = evaluate(rho, "T4")
        t4u = t4.restricted(group="unfolding")
        row = dict(h=h, kT=kT, t4_violated=t4.violated, t4_unfolding_violated=t4u.violated,
                   t4_margin=t4.margin, t4_unfolding_margin=t4u.margin)
        if n == 4:
            t3 = evaluate(rho, "T3")
            row.update(t3_violated=t3.violated, t3_margin=t3.margin)
        rows.append(row)
    return rows


def scan_thermal(config: ScanConfig) -> list[dict]:
    """Rows over the ``(h, kT)`` grid; one diagonalization per field value."""
    if config.family not in HAMILTONIANS:
        raise ValueError(f"unknown thermal family {config.family!r}; use h1 or h2")
    h_axis, kt_axis = config.axes
    kts = [float(k) for k in kt_axis.values()]
    if min(kts) <= 0:
        raise ValueError("temperatures kT must be positive")
    n = int(config.params.get("n", 4))
    jobs = [(config.family, n, float(h), kts) for h in h_axis.values()]
    return [row for rows in _map(_thermal_row, jobs, config.workers) for row in rows]


SUMMARY_COLUMNS = ["h", "max_kT_t4", "max_kT_t4_unfolding", "max_kT_t3"]


def thermal_summary(rows: Iterable[dict]) -> list[dict]:
    """Per field value, the largest grid temperature at which each test fires."""
    by_h: dict[float, dict] = {}
    keys = {"t4_violated": "max_kT_t4", "t4_unfolding_violated": "max_kT_t4_unfolding",
            "t3_violated": "max_kT_t3"}
    for row in rows:
        entry = by_h.setdefault(row["h"], {"h": row["h"], **{v: float("nan") for v in keys.values()}})
        for flag, col in keys.items():
            if row.get(flag):
                prev = entry[col]
                entry[col] = row["kT"] if np.isnan(prev) else max(prev, row["kT"])
    return list(by_h.values())


# --- output ----------------------------------------------------------------------------


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return fmt(v)
    return str(v)


def write_rows_csv(rows: list[dict], columns: list[str], fh: TextIO, comment: str | None = None) -> None:
    if comment is not None:
        fh.write(f"# corrtensor {__version__} {comment}\n")
    fh.write(",".join(columns) + "\n")
    for row in rows:
        fh.write(",".join(_cell(row.get(c)) for c in columns) + "\n")
