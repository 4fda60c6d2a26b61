"""Slow, direct reference computations used to check the fast paths."""

import itertools
from functools import reduce

import numpy as np


def gell_mann_reference(d):
    """Gell-Mann matrices written out entry by entry."""
    mats = []
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), complex)
            m[j, k] = m[k, j] = 1
            mats.append(m)
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), complex)
            m[j, k], m[k, j] = -1j, 1j
            mats.append(m)
    for l in range(1, d):
        diag = [1.0] * l + [-float(l)] + [0.0] * (d - l - 1)
        mats.append(np.sqrt(2 / (l * (l + 1))) * np.diag(diag).astype(complex))
    return mats


def brute_tensor(rho_matrix, dims, with_identity=False):
    """``tr(rho kron(G_i1, ..., G_in))`` one entry at a time."""
    local = []
    for d in dims:
        ops = gell_mann_reference(d)
        if with_identity:
            ops = [np.eye(d)] + ops
        local.append(ops)
    shape = tuple(len(ops) for ops in local)
    out = np.zeros(shape)
    for idx in itertools.product(*(range(s) for s in shape)):
        op = reduce(np.kron, [local[j][i] for j, i in enumerate(idx)])
        out[idx] = np.trace(rho_matrix @ op).real
    return out


def brute_partial_trace(rho_matrix, dims, keep):
    """Partial trace by summing ``<e_k| rho |e_k>`` blocks over traced basis states."""
    n = len(dims)
    keep = sorted(keep)
    traced = [j for j in range(n) if j not in keep]
    kd = [dims[j] for j in keep]
    size = int(np.prod(kd))
    out = np.zeros((size, size), complex)
    for t in itertools.product(*(range(dims[j]) for j in traced)):
        for a in itertools.product(*(range(d) for d in kd)):
            for b in itertools.product(*(range(d) for d in kd)):
                full_a, full_b = [0] * n, [0] * n
                for pos, j in enumerate(keep):
                    full_a[j], full_b[j] = a[pos], b[pos]
                for pos, j in enumerate(traced):
                    full_a[j] = full_b[j] = t[pos]
                ia = np.ravel_multi_index(full_a, dims)
                ib = np.ravel_multi_index(full_b, dims)
                out[np.ravel_multi_index(a, kd), np.ravel_multi_index(b, kd)] += rho_matrix[ia, ib]
    return out


def brute_matricize(values, rows):
    """Matricization by explicit index arithmetic (first row axis slowest)."""
    order = values.ndim
    cols = [a for a in range(order) if a not in rows]
    rshape = [values.shape[a] for a in rows]
    cshape = [values.shape[a] for a in cols]
    out = np.zeros((int(np.prod(rshape)), int(np.prod(cshape))))
    for idx in itertools.product(*(range(s) for s in values.shape)):
        r = np.ravel_multi_index([idx[a] for a in rows], rshape)
        c = np.ravel_multi_index([idx[a] for a in cols], cshape) if cols else 0
        out[r, c] = values[idx]
    return out
