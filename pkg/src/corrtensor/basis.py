"""Orthogonal Hermitian operator bases (generalized Gell-Mann matrices)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

BASIS_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class OperatorBasis:
    """Local basis ``{I, G_1, ..., G_{d^2-1}}`` with ``tr(G_m G_n) = 2 delta_mn``.

    ``generators`` is a read-only array of shape ``(d**2 - 1, d, d)``.
    """

    dim: int
    generators: np.ndarray

    @property
    def identity(self) -> np.ndarray:
        return np.eye(self.dim, dtype=complex)

    @property
    def size(self) -> int:
        return self.dim**2 - 1

    def full(self) -> np.ndarray:
        """Stack ``[I, G_1, ..., G_{d^2-1}]`` with shape ``(d**2, d, d)``."""
        return np.concatenate([self.identity[None], self.generators])

    def coefficients(self, op: np.ndarray) -> np.ndarray:
        """Return ``tr(op G_m)`` for every generator."""
        return np.einsum("mab,ba->m", self.generators, op)

    def check(self, tol: float = BASIS_TOL) -> None:
        g = self.generators
        if not np.allclose(g, np.conj(np.swapaxes(g, 1, 2)), atol=tol, rtol=0):
            raise ValueError("generators are not Hermitian")
        gram = np.einsum("mab,nba->mn", g, g)
        if not np.allclose(gram, 2 * np.eye(self.size), atol=tol, rtol=0):
            raise ValueError("generators are not orthogonal with tr(G^2) = 2")
        if not np.allclose(np.einsum("maa->m", g), 0, atol=tol, rtol=0):
            raise ValueError("generators are not traceless")


def _unit(d: int, j: int, k: int) -> np.ndarray:
    e = np.zeros((d, d), dtype=complex)
    e[j, k] = 1
    return e


@lru_cache(maxsize=None)
def build_su_generators(d: int) -> OperatorBasis:
    """Generalized Gell-Mann basis of dimension ``d``.

    Ordering: symmetric ``E_jk + E_kj``, antisymmetric ``-i E_jk + i E_kj``
    (both over ``j < k`` in lexicographic order), then the ``d - 1``
    diagonal generators. For ``d = 2`` this yields the Pauli matrices X, Y, Z.

    Examples
    --------
    >>> b = build_su_generators(2)
    >>> b.generators[1].imag
    array([[ 0., -1.],
           [ 1.,  0.]])
    """
    if not isinstance(d, (int, np.integer)) or d < 2:
        raise ValueError(f"invalid dimension {d!r}: need an integer d >= 2")
    d = int(d)
    pairs = [(j, k) for j in range(d) for k in range(j + 1, d)]
    sym = [_unit(d, j, k) + _unit(d, k, j) for j, k in pairs]
    asym = [-1j * _unit(d, j, k) + 1j * _unit(d, k, j) for j, k in pairs]
    diag = []
    for l in range(1, d):
        entries = np.zeros(d)
        entries[:l] = 1
        entries[l] = -l
        diag.append(np.sqrt(2 / (l * (l + 1))) * np.diag(entries).astype(complex))
    gens = np.array(sym + asym + diag)
    gens.setflags(write=False)
    basis = OperatorBasis(d, gens)
    basis.check()
    return basis
