"""Tensor and matrix norms, and lower bounds from partially known matrices."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .correlation import CorrelationTensor


def _values(t) -> np.ndarray:
    return t.values if isinstance(t, CorrelationTensor) else np.asarray(t, dtype=float)


def standard_norm(t) -> float:
    """Euclidean norm of all tensor entries."""
    return float(np.sqrt(np.sum(_values(t) ** 2)))


def singular_values(m) -> np.ndarray:
    """Singular values in non-increasing order, tiny negatives clamped to 0."""
    m = np.asarray(m, dtype=float)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    if m.size == 0:
        return np.zeros(0)
    s = np.linalg.svd(m, compute_uv=False)
    return np.clip(s, 0, None)


def ky_fan_norm(m, k: int) -> float:
    """Sum of the ``k`` largest singular values.

    ``k`` above ``min(m.shape)`` is clamped (with a warning) to the trace norm.
    """
    if k < 1:
        raise ValueError(f"Ky Fan index must be >= 1, got {k}")
    s = singular_values(m)
    if k > s.size:
        warnings.warn(f"Ky Fan k={k} exceeds rank bound {s.size}; using the trace norm", stacklevel=2)
    return float(np.sum(s[:k]))


def ky_fan_norms(m, kmax: int | None = None) -> np.ndarray:
    """``[||m||_1, ..., ||m||_kmax]`` from a single SVD (no clamping warning)."""
    s = singular_values(m)
    kmax = s.size if kmax is None else kmax
    padded = np.zeros(kmax)
    padded[: min(kmax, s.size)] = s[:kmax]
    return np.cumsum(padded)


def trace_norm(m) -> float:
    return float(np.sum(singular_values(m)))


def frobenius_norm(m) -> float:
    return float(np.linalg.norm(np.asarray(m, dtype=float)))


@dataclass
class PartialMatrix:
    """A matrix of which only some entries are known."""

    shape: tuple[int, int]
    entries: dict[tuple[int, int], float] = field(default_factory=dict)

    def __post_init__(self):
        rows, cols = self.shape
        for (i, j) in self.entries:
            if not (0 <= i < rows and 0 <= j < cols):
                raise ValueError(f"entry ({i}, {j}) outside shape {self.shape}")

    @classmethod
    def from_triples(cls, shape, triples) -> "PartialMatrix":
        entries = {}
        for i, j, v in triples:
            key = (int(i), int(j))
            if key in entries:
                raise ValueError(f"duplicate entry {key}")
            entries[key] = float(v)
        return cls(tuple(shape), entries)

    @classmethod
    def from_mask(cls, matrix, mask) -> "PartialMatrix":
        matrix = np.asarray(matrix, dtype=float)
        rows, cols = np.nonzero(mask)
        return cls(matrix.shape, {(int(i), int(j)): float(matrix[i, j]) for i, j in zip(rows, cols)})


def _matching_bound(p: PartialMatrix) -> float:
    # ||A||_tr >= sum_i |a_{i, pi(i)}| for any injective pi (signed partial permutation).
    weights = np.zeros(p.shape)
    for (i, j), v in p.entries.items():
        weights[i, j] = abs(v)
    r, c = linear_sum_assignment(weights, maximize=True)
    return float(weights[r, c].sum())


def _greedy_block(known: np.ndarray, seed_row: int) -> tuple[list[int], list[int]]:
    cols = list(np.nonzero(known[seed_row])[0])
    rows = [seed_row]
    for r in range(known.shape[0]):
        if r != seed_row and cols and known[r, cols].all():
            rows.append(r)
    return rows, cols


def _submatrix_bound(p: PartialMatrix) -> float:
    """Largest trace norm among fully known blocks found greedily.

    Deleting rows or columns never increases a Ky Fan norm, so any fully
    known submatrix (principal or not) gives a valid lower bound.
    """
    known = np.zeros(p.shape, dtype=bool)
    values = np.zeros(p.shape)
    for (i, j), v in p.entries.items():
        known[i, j] = True
        values[i, j] = v
    best = 0.0
    for grid, vals in ((known, values), (known.T, values.T)):
        for r in np.nonzero(grid.any(axis=1))[0]:
            rows, cols = _greedy_block(grid, r)
            best = max(best, trace_norm(vals[np.ix_(rows, cols)]))
    return best


def trace_norm_lower_bound(p: PartialMatrix) -> float:
    """Best of three closed-form lower bounds on the trace norm.

    1. ``sum |a_ii|`` generalized to the heaviest matching of known entries;
    2. trace norm of a fully known submatrix;
    3. Frobenius norm of the known entries.
    """
    if not p.entries:
        raise ValueError("no known entries")
    frob = float(np.sqrt(sum(v * v for v in p.entries.values())))
    return max(_matching_bound(p), _submatrix_bound(p), frob)


def diagonal_bound(p: PartialMatrix) -> float:
    """``sum_i |a_ii|`` over the known diagonal entries."""
    return float(sum(abs(v) for (i, j), v in p.entries.items() if i == j))
