"""Plain-text formats: tensor dumps and sparse density-matrix files."""

from __future__ import annotations

import csv
import itertools
from typing import TextIO

import numpy as np

from .correlation import CorrelationTensor
from .states import DensityMatrix


def fmt(x) -> str:
    """Shortest decimal string that round-trips the float."""
    return repr(float(x))


def write_tensor_csv(t: CorrelationTensor, fh: TextIO) -> None:
    """Columns ``i_1..i_n, value`` with 1-based generator indices."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow([f"i_{p + 1}" for p in t.parties] + ["value"])
    for idx in itertools.product(*(range(s) for s in t.shape)):
        w.writerow([i + 1 for i in idx] + [f"{t.values[idx]:.17g}"])


def read_tensor_csv(fh: TextIO) -> np.ndarray:
    rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    body = rows[1:]
    idx = np.array([[int(x) - 1 for x in r[:-1]] for r in body])
    shape = tuple(idx.max(axis=0) + 1)
    out = np.zeros(shape)
    out[tuple(idx.T)] = [float(r[-1]) for r in body]
    return out


def write_density_csv(rho: DensityMatrix, fh: TextIO) -> None:
    """Sparse ``row,col,re,im`` triplets (0-based) after a ``# dims=...`` line."""
    fh.write("# dims=" + ",".join(str(d) for d in rho.dims) + "\n")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["row", "col", "re", "im"])
    rows, cols = np.nonzero(rho.matrix)
    for i, j in zip(rows, cols):
        v = rho.matrix[i, j]
        w.writerow([i, j, fmt(v.real), fmt(v.imag)])


def read_density_csv(fh: TextIO) -> DensityMatrix:
    dims = None
    entries = []
    for line in fh:
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, val = line[1:].strip().partition("=")
            if key.strip() == "dims":
                dims = tuple(int(x) for x in val.split(","))
            continue
        if line.replace(" ", "").startswith("row,"):
            continue
        i, j, re, im = line.split(",")
        entries.append((int(i), int(j), float(re) + 1j * float(im)))
    if dims is None:
        raise ValueError("density matrix file lacks a '# dims=...' header")
    size = int(np.prod(dims))
    mat = np.zeros((size, size), dtype=complex)
    for i, j, v in entries:
        if not (0 <= i < size and 0 <= j < size):
            raise ValueError(f"entry ({i}, {j}) outside a {size}x{size} matrix")
        mat[i, j] = v
    return DensityMatrix(mat, dims)
