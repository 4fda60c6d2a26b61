"""Correlation tensors, outer products and matricizations.

Entries are ``T_{i_1...i_n} = tr(rho G_{i_1} (x) ... (x) G_{i_n})`` with the
generalized Gell-Mann generators of :mod:`corrtensor.basis`. Tensor axes are
stored 0-based, axis ``j`` running over the ``d_j**2 - 1`` generators of the
``j``-th party in the tensor.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .basis import build_su_generators
from .states import DensityMatrix, PureState, as_density, partial_trace

REAL_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class CorrelationTensor:
    """Real tensor of expectation values over an ordered tuple of parties."""

    values: np.ndarray
    parties: tuple[int, ...]

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        parties = tuple(int(p) for p in self.parties)
        if values.ndim != len(parties):
            raise ValueError(f"tensor of order {values.ndim} labelled with {len(parties)} parties")
        if len(set(parties)) != len(parties):
            raise ValueError(f"repeated party labels {parties}")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "parties", parties)

    @property
    def order(self) -> int:
        return self.values.ndim

    @property
    def shape(self) -> tuple[int, ...]:
        return self.values.shape


def _contract(rho: DensityMatrix, bases: Sequence[np.ndarray]) -> np.ndarray:
    """``out[i_1..i_n] = tr(rho B1_{i_1} (x) ... (x) Bn_{i_n})`` for stacks ``B_j``."""
    dims = rho.dims
    n = len(dims)
    t = rho.matrix.reshape(dims + dims)
    for j, ops in enumerate(bases):
        remaining = n - j
        # rho[a, b] * op[b, a]: row axis a_j meets the op's column axis.
        t = np.tensordot(t, ops, axes=([0, remaining], [2, 1]))
    return t


def bloch_tensor(state) -> np.ndarray:
    """Complete Bloch tensor with index 0 standing for the identity.

    Shape ``(d_1**2, ..., d_n**2)``; entry ``[0, ..., 0]`` equals ``tr(rho) = 1``.
    """
    rho = as_density(state)
    bases = [build_su_generators(d).full() for d in rho.dims]
    t = _contract(rho, bases)
    if np.max(np.abs(t.imag), initial=0) > REAL_TOL:
        raise ValueError("correlation tensor has non-negligible imaginary part")
    return t.real


def full_correlation_tensor(state) -> CorrelationTensor:
    """``n``-body correlation tensor (no identity on any party)."""
    rho = as_density(state)
    bases = [build_su_generators(d).generators for d in rho.dims]
    t = _contract(rho, bases)
    if np.max(np.abs(t.imag), initial=0) > REAL_TOL:
        raise ValueError("correlation tensor has non-negligible imaginary part")
    return CorrelationTensor(t.real, tuple(range(rho.n_parties)))


def m_body_tensor(state, parties: Iterable[int]) -> CorrelationTensor:
    """Correlation tensor with non-identity operators exactly on ``parties``.

    Computed as the full correlation tensor of the reduced state, which
    coincides with fixing the remaining indices of the Bloch tensor to 0.
    """
    parties = sorted(set(int(p) for p in parties))
    if not parties:
        raise ValueError("parties must be non-empty")
    reduced = partial_trace(state, parties)
    return CorrelationTensor(full_correlation_tensor(reduced).values, tuple(parties))


def outer_product(t: CorrelationTensor, s: CorrelationTensor) -> CorrelationTensor:
    if set(t.parties) & set(s.parties):
        raise ValueError(f"outer product of overlapping parties {t.parties} and {s.parties}")
    return CorrelationTensor(np.multiply.outer(t.values, s.values), t.parties + s.parties)


# --- matricization ---------------------------------------------------------------


@dataclass(frozen=True)
class MatricizationSpec:
    """Tensor axes (0-based) whose indices form the matrix rows."""

    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(sorted(set(int(r) for r in self.rows)))
        if not rows:
            raise ValueError("matricization needs at least one row axis")
        object.__setattr__(self, "rows", rows)

    def columns(self, order: int) -> tuple[int, ...]:
        return tuple(a for a in range(order) if a not in self.rows)

    def validate(self, order: int, allow_vector: bool = False) -> None:
        if self.rows[0] < 0 or self.rows[-1] >= order:
            raise ValueError(f"row axes {self.rows} out of range for a tensor of order {order}")
        if len(self.rows) == order and not allow_vector:
            raise ValueError("all axes are row axes; use vectorize() or allow_vector=True")

    def label(self, order: int) -> str:
        """1-based label such as ``'13|24'``."""
        rows = "".join(str(a + 1) for a in self.rows)
        cols = "".join(str(a + 1) for a in self.columns(order))
        return f"{rows}|{cols}"


def _as_spec(spec) -> MatricizationSpec:
    if isinstance(spec, MatricizationSpec):
        return spec
    if isinstance(spec, (int, np.integer)):
        return MatricizationSpec((int(spec),))
    return MatricizationSpec(tuple(spec))


def matricize(t, spec, allow_vector: bool = False) -> np.ndarray:
    """Matrix whose rows join the indices of the row axes lexicographically.

    The lowest row axis is the slowest-varying row index, and likewise for
    the columns. With ``allow_vector=True`` and every axis a row axis the
    result is the ``(N, 1)`` vectorization.

    >>> import numpy as np
    >>> t = CorrelationTensor(np.arange(8.0).reshape(2, 2, 2), (0, 1, 2))
    >>> matricize(t, (0, 2))
    array([[0., 2.],
           [1., 3.],
           [4., 6.],
           [5., 7.]])
    """
    values = t.values if isinstance(t, CorrelationTensor) else np.asarray(t, dtype=float)
    spec = _as_spec(spec)
    order = values.ndim
    spec.validate(order, allow_vector)
    cols = spec.columns(order)
    n_rows = int(np.prod([values.shape[a] for a in spec.rows]))
    return np.transpose(values, spec.rows + cols).reshape(n_rows, -1)


def vectorize(t) -> np.ndarray:
    values = t.values if isinstance(t, CorrelationTensor) else np.asarray(t, dtype=float)
    return values.reshape(-1, 1)


def bipartitions(n: int, sizes: Iterable[int] | None = None) -> list[MatricizationSpec]:
    """Every ``A | Abar`` split of ``n`` axes with axis 0 in ``A``.

    ``sizes`` restricts ``|A|``; without it all ``2**(n-1) - 1`` splits are listed.
    """
    if n < 2:
        raise ValueError("need at least two axes to split")
    sizes = range(1, n) if sizes is None else sizes
    out = []
    for size in sizes:
        for rest in itertools.combinations(range(1, n), size - 1):
            out.append(MatricizationSpec((0,) + rest))
    return out


def unfoldings(n: int) -> list[MatricizationSpec]:
    """One party versus the rest, one spec per party (with axis 0 kept in ``A``)."""
    specs = [MatricizationSpec((0,))]
    if n > 2:
        specs += [MatricizationSpec(tuple(a for a in range(n) if a != j)) for j in range(1, n)]
    return specs


def is_unfolding(spec: MatricizationSpec, order: int) -> bool:
    return len(spec.rows) == 1 or len(spec.rows) == order - 1


# --- pure-state factorization -------------------------------------------------------


def check_pure_factorization(psi, partition: Iterable[int], tol: float = 1e-8) -> bool:
    """True iff the pure state factorizes across ``partition | complement``.

    Compares the complete Bloch tensor of ``psi`` against the outer product of
    the Bloch tensors of its two marginals; every mixed block (some indices in
    ``A``, some in the complement) has to factorize for a product state.
    """
    if isinstance(psi, DensityMatrix):
        purity = np.trace(psi.matrix @ psi.matrix).real
        if abs(purity - 1) > 1e-10:
            raise ValueError(f"state is not pure (purity {purity:.12g})")
    elif not isinstance(psi, PureState):
        raise TypeError("check_pure_factorization expects a PureState")
    n = len(psi.dims)
    part_a = sorted(set(int(p) for p in partition))
    part_b = [j for j in range(n) if j not in part_a]
    if not part_a or not part_b or part_a[0] < 0 or part_a[-1] >= n:
        raise ValueError(f"{part_a} is not a proper subset of the {n} parties")
    whole = bloch_tensor(psi)
    ta = bloch_tensor(partial_trace(psi, part_a))
    tb = bloch_tensor(partial_trace(psi, part_b))
    joined = np.transpose(np.multiply.outer(ta, tb), np.argsort(part_a + part_b))
    return bool(np.linalg.norm(whole - joined) <= tol)
