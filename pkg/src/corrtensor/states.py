"""Quantum states used throughout the package.

Pure and mixed states carry their subsystem dimensions explicitly, so that
correlation tensors and partial traces know how to split the Hilbert space.
Parties are addressed with 0-based positions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

import numpy as np

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-9
NORM_TOL = 1e-12
UNITARY_TOL = 1e-10

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def _check_dims(dims: Iterable[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if not dims:
        raise ValueError("dims must be a non-empty list of subsystem dimensions")
    if any(d < 1 for d in dims):
        raise ValueError(f"subsystem dimensions must be positive, got {dims}")
    return dims


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace matrix on ``prod(dims)``."""

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        dims = _check_dims(self.dims)
        mat = np.array(self.matrix, dtype=complex)
        size = int(np.prod(dims))
        if mat.shape != (size, size):
            raise ValueError(f"matrix shape {mat.shape} does not match dims {dims}")
        if not np.allclose(mat, mat.conj().T, atol=HERMITIAN_TOL, rtol=0):
            raise ValueError("density matrix is not Hermitian")
        mat = (mat + mat.conj().T) / 2
        if abs(np.trace(mat) - 1) > TRACE_TOL:
            raise ValueError(f"density matrix has trace {np.trace(mat).real:.12g}, expected 1")
        lowest = np.linalg.eigvalsh(mat)[0]
        if lowest < -PSD_TOL:
            raise ValueError(f"density matrix is not positive semidefinite (eigenvalue {lowest:.3g})")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "dims", dims)

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def density(self) -> "DensityMatrix":
        return self


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized state vector on ``prod(dims)``."""

    amplitudes: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        dims = _check_dims(self.dims)
        vec = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if vec.size != int(np.prod(dims)):
            raise ValueError(f"state of length {vec.size} does not match dims {dims}")
        norm = np.linalg.norm(vec)
        if abs(norm - 1) > NORM_TOL:
            raise ValueError(f"state is not normalized (norm {norm:.15g})")
        vec.setflags(write=False)
        object.__setattr__(self, "amplitudes", vec)
        object.__setattr__(self, "dims", dims)

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    def density(self) -> DensityMatrix:
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()), self.dims)


def as_density(state) -> DensityMatrix:
    """Accept a :class:`PureState` or :class:`DensityMatrix`."""
    if isinstance(state, (DensityMatrix, PureState)):
        return state.density()
    raise TypeError(f"expected PureState or DensityMatrix, got {type(state).__name__}")


def basis_ket(digits: Sequence[int], dims: Sequence[int]) -> np.ndarray:
    """Computational basis vector ``|digits>``."""
    vec = np.zeros(int(np.prod(dims)), dtype=complex)
    vec[np.ravel_multi_index(tuple(digits), tuple(dims))] = 1
    return vec


def _normalized(vec: np.ndarray, dims) -> PureState:
    return PureState(vec / np.linalg.norm(vec), dims)


# --- named states -----------------------------------------------------------


def ghz_state(d: int, n_parties: int) -> PureState:
    """``(1/sqrt(d)) sum_i |i>^{(x) n}``."""
    if d < 2 or n_parties < 2:
        raise ValueError("ghz_state needs d >= 2 and n_parties >= 2")
    dims = (d,) * n_parties
    vec = sum(basis_ket((i,) * n_parties, dims) for i in range(d))
    return _normalized(vec, dims)


def w_state(d: int) -> PureState:
    """Tripartite generalized W state.

    ``(1/sqrt(3(d-1))) sum_{i=0}^{d-2} (|i,i,i+1> + |i,i+1,i> + |i+1,i,i>)``
    """
    if d < 2:
        raise ValueError("w_state needs d >= 2")
    dims = (d, d, d)
    vec = np.zeros(d**3, dtype=complex)
    for i in range(d - 1):
        for digits in ((i, i, i + 1), (i, i + 1, i), (i + 1, i, i)):
            vec += basis_ket(digits, dims)
    return _normalized(vec, dims)


def dicke_state(n: int, k_excitations: int) -> PureState:
    """Equal superposition of the ``C(n, k)`` qubit strings of Hamming weight ``k``."""
    if n < 1 or not 0 <= k_excitations <= n:
        raise ValueError(f"dicke_state needs 0 <= k <= n, got n={n}, k={k_excitations}")
    dims = (2,) * n
    vec = np.zeros(2**n, dtype=complex)
    for ones in itertools.combinations(range(n), k_excitations):
        digits = [0] * n
        for pos in ones:
            digits[pos] = 1
        vec += basis_ket(digits, dims)
    assert np.count_nonzero(vec) == comb(n, k_excitations)
    return _normalized(vec, dims)


def maximally_mixed(dims: Sequence[int]) -> DensityMatrix:
    dims = _check_dims(dims)
    size = int(np.prod(dims))
    return DensityMatrix(np.eye(size) / size, dims)


def white_noise_mix(state, p: float) -> DensityMatrix:
    """``p I/D + (1 - p) rho``; ``rho = |psi><psi|`` for a pure state."""
    if not 0 <= p <= 1:
        raise ValueError(f"noise level p={p} outside [0, 1]")
    rho = as_density(state)
    return DensityMatrix(p * np.eye(rho.size) / rho.size + (1 - p) * rho.matrix, rho.dims)


def _check_simplex(alpha: float, beta: float) -> None:
    if alpha < 0 or beta < 0 or alpha + beta > 1 + 1e-12:
        raise ValueError(f"(alpha, beta) = ({alpha}, {beta}) outside the simplex")


def figure1_family(alpha: float, beta: float, d: int) -> DensityMatrix:
    """Three-qudit mixture of GHZ(d), W(d) and a diagonal biseparable background.

    The background is ``1/(2d-2) sum_{i=0}^{d-2} (|i,i,i+1><.| + |i+1,i+1,i><.|)``,
    i.e. ``2(d-1)`` projectors without wraparound.
    """
    _check_simplex(alpha, beta)
    dims = (d, d, d)
    rest = 1 - alpha - beta
    background = np.zeros((d**3, d**3), dtype=complex)
    for i in range(d - 1):
        for digits in ((i, i, i + 1), (i + 1, i + 1, i)):
            k = basis_ket(digits, dims)
            background += np.outer(k, k)
    mat = (
        alpha * ghz_state(d, 3).density().matrix
        + beta * w_state(d).density().matrix
        + rest / (2 * d - 2) * background
    )
    return DensityMatrix(mat, dims)


def figure3_family(alpha: float, beta: float) -> DensityMatrix:
    """``alpha GHZ_4 + beta D_2^4 + (1 - alpha - beta) I/16`` on four qubits."""
    _check_simplex(alpha, beta)
    mat = (
        alpha * ghz_state(2, 4).density().matrix
        + beta * dicke_state(4, 2).density().matrix
        + (1 - alpha - beta) * np.eye(16) / 16
    )
    return DensityMatrix(mat, (2, 2, 2, 2))


# --- Hamiltonians and thermal states ------------------------------------------


@dataclass(frozen=True)
class PauliStringHamiltonian:
    """Sum of weighted Pauli strings such as ``(-1.0, "ZXZI")``."""

    n: int
    terms: tuple[tuple[float, str], ...]
    field_strength: float = 0.0

    def __post_init__(self):
        for coef, label in self.terms:
            if len(label) != self.n or set(label) - set(PAULI):
                raise ValueError(f"bad Pauli label {label!r} for {self.n} qubits")

    def matrix(self) -> np.ndarray:
        size = 2**self.n
        out = np.zeros((size, size), dtype=complex)
        for coef, label in self.terms:
            op = np.array([[1.0 + 0j]])
            for ch in label:
                op = np.kron(op, PAULI[ch])
            out += coef * op
        return out


def _place(n: int, ops: dict[int, str]) -> str:
    return "".join(ops.get(q, "I") for q in range(n))


def _field_terms(n: int, h: float) -> list[tuple[float, str]]:
    if h == 0:
        return []
    return [(float(h), _place(n, {j: "X"})) for j in range(n)]


def hamiltonian_h1(n: int, h: float) -> PauliStringHamiltonian:
    """Cyclic ``sum_j (-Z_{j-1} X_j Z_{j+1} + h X_j)``."""
    if n < 3:
        raise ValueError("hamiltonian_h1 needs n >= 3")
    terms = [(-1.0, _place(n, {(j - 1) % n: "Z", j: "X", (j + 1) % n: "Z"})) for j in range(n)]
    return PauliStringHamiltonian(n, tuple(terms + _field_terms(n, h)), float(h))


def hamiltonian_h2(n: int, h: float) -> PauliStringHamiltonian:
    """Cyclic ``sum_j [-Z_{j-1} (X_j + Y_j + Z_j) Z_{j+1} + h X_j]``."""
    if n < 3:
        raise ValueError("hamiltonian_h2 needs n >= 3")
    terms = [
        (-1.0, _place(n, {(j - 1) % n: "Z", j: mid, (j + 1) % n: "Z"}))
        for j in range(n)
        for mid in "XYZ"
    ]
    return PauliStringHamiltonian(n, tuple(terms + _field_terms(n, h)), float(h))


def _gibbs(evals: np.ndarray, evecs: np.ndarray, kT: float) -> np.ndarray:
    if not kT > 0:
        raise ValueError(f"temperature kT must be positive, got {kT}")
    weights = np.exp(-(evals - evals[0]) / kT)
    weights /= weights.sum()
    return (evecs * weights) @ evecs.conj().T


def thermal_state(H, kT: float) -> DensityMatrix:
    """``exp(-H/kT) / tr exp(-H/kT)`` via the eigendecomposition of ``H``."""
    if not kT > 0:
        raise ValueError(f"temperature kT must be positive, got {kT}")
    mat = H.matrix() if isinstance(H, PauliStringHamiltonian) else np.asarray(H)
    evals, evecs = np.linalg.eigh(mat)
    dims = (2,) * H.n if isinstance(H, PauliStringHamiltonian) else (mat.shape[0],)
    return DensityMatrix(_gibbs(evals, evecs, kT), dims)


def thermal_states(H: PauliStringHamiltonian, kTs: Sequence[float]) -> list[DensityMatrix]:
    """Thermal states for several temperatures sharing one diagonalization."""
    evals, evecs = np.linalg.eigh(H.matrix())
    return [DensityMatrix(_gibbs(evals, evecs, kT), (2,) * H.n) for kT in kTs]


# --- local operations ----------------------------------------------------------


def apply_local_unitaries(state, unitaries: Sequence[np.ndarray]):
    """Return ``(U_1 (x) ... (x) U_n) rho (U_1 (x) ... (x) U_n)^dagger``.

    A :class:`PureState` input gives a :class:`PureState` back.
    """
    dims = state.dims
    if len(unitaries) != len(dims):
        raise ValueError(f"need {len(dims)} local unitaries, got {len(unitaries)}")
    total = np.array([[1.0 + 0j]])
    for u, d in zip(unitaries, dims):
        u = np.asarray(u, dtype=complex)
        if u.shape != (d, d):
            raise ValueError(f"local unitary of shape {u.shape} does not act on dimension {d}")
        if not np.allclose(u @ u.conj().T, np.eye(d), atol=UNITARY_TOL, rtol=0):
            raise ValueError("local operation is not unitary")
        total = np.kron(total, u)
    if isinstance(state, PureState):
        return PureState(total @ state.amplitudes, dims)
    rho = as_density(state)
    return DensityMatrix(total @ rho.matrix @ total.conj().T, dims)


def partial_trace(state, keep: Iterable[int]) -> DensityMatrix:
    """Reduced state on the parties in ``keep`` (0-based, returned in ascending order)."""
    rho = as_density(state)
    n = rho.n_parties
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise ValueError("keep must name at least one party")
    if keep[0] < 0 or keep[-1] >= n:
        raise ValueError(f"party index out of range for {n} parties: {keep}")
    if len(keep) == n:
        return rho
    dims = rho.dims
    tensor = rho.matrix.reshape(dims + dims)
    letters = iter("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ")
    row = [next(letters) for _ in range(n)]
    col = [row[j] if j not in keep else next(letters) for j in range(n)]
    out = [row[j] for j in keep] + [col[j] for j in keep]
    red = np.einsum(f"{''.join(row)}{''.join(col)}->{''.join(out)}", tensor)
    kd = tuple(dims[j] for j in keep)
    size = int(np.prod(kd))
    return DensityMatrix(red.reshape(size, size), kd)


# --- random states ---------------------------------------------------------------


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _haar_vector(size: int, rng: np.random.Generator) -> np.ndarray:
    vec = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return vec / np.linalg.norm(vec)


def haar_unitary(d: int, seed=None) -> np.ndarray:
    rng = _rng(seed)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_pure_state(dims: Sequence[int], seed=None) -> PureState:
    """Haar-random pure state."""
    dims = _check_dims(dims)
    return PureState(_haar_vector(int(np.prod(dims)), _rng(seed)), dims)


def random_product_pure(dims: Sequence[int], seed=None) -> PureState:
    """Tensor product of independent Haar-random local pure states."""
    dims = _check_dims(dims)
    rng = _rng(seed)
    vec = np.array([1.0 + 0j])
    for d in dims:
        vec = np.kron(vec, _haar_vector(d, rng))
    return _normalized(vec, dims)


def _embed(vec_a: np.ndarray, vec_b: np.ndarray, part_a, dims) -> np.ndarray:
    """Put ``vec_a (x) vec_b`` back into the original party order."""
    part_b = [j for j in range(len(dims)) if j not in part_a]
    order = list(part_a) + part_b
    tensor = np.kron(vec_a, vec_b).reshape([dims[j] for j in order])
    return np.transpose(tensor, np.argsort(order)).reshape(-1)


def random_biseparable_pure(dims: Sequence[int], seed=None, partition=None) -> PureState:
    """``|psi_A> (x) |psi_Abar>`` with Haar-random factors.

    ``partition`` is the set ``A``; a random non-trivial bipartition is drawn
    when it is omitted.
    """
    dims = _check_dims(dims)
    n = len(dims)
    if n < 2:
        raise ValueError("biseparable states need at least two parties")
    rng = _rng(seed)
    if partition is None:
        while True:
            mask = rng.integers(0, 2, size=n).astype(bool)
            if 0 < mask.sum() < n:
                break
        part_a = [j for j in range(n) if mask[j]]
    else:
        part_a = sorted(partition)
    part_b = [j for j in range(n) if j not in part_a]
    va = _haar_vector(int(np.prod([dims[j] for j in part_a])), rng)
    vb = _haar_vector(int(np.prod([dims[j] for j in part_b])), rng)
    return _normalized(_embed(va, vb, part_a, dims), dims)


def _mixture(vectors: list[np.ndarray], dims, rng) -> DensityMatrix:
    weights = rng.dirichlet(np.ones(len(vectors)))
    mat = sum(w * np.outer(v, v.conj()) for w, v in zip(weights, vectors))
    return DensityMatrix(mat, dims)


def random_biseparable_mixture(dims: Sequence[int], n_terms: int, seed=None) -> DensityMatrix:
    """Random convex mixture of biseparable pure states, bipartition drawn per term."""
    dims = _check_dims(dims)
    rng = _rng(seed)
    vecs = [random_biseparable_pure(dims, rng).amplitudes for _ in range(n_terms)]
    return _mixture(vecs, dims, rng)


def random_fully_separable_mixture(dims: Sequence[int], n_terms: int, seed=None) -> DensityMatrix:
    """Random convex mixture of product pure states."""
    dims = _check_dims(dims)
    rng = _rng(seed)
    vecs = [random_product_pure(dims, rng).amplitudes for _ in range(n_terms)]
    return _mixture(vecs, dims, rng)


def random_mixed_state(dims: Sequence[int], seed=None, rank: int | None = None) -> DensityMatrix:
    """Random density matrix from a Ginibre matrix (Hilbert-Schmidt measure at full rank)."""
    dims = _check_dims(dims)
    rng = _rng(seed)
    size = int(np.prod(dims))
    rank = size if rank is None else rank
    g = rng.standard_normal((size, rank)) + 1j * rng.standard_normal((size, rank))
    mat = g @ g.conj().T
    return DensityMatrix(mat / np.trace(mat).real, dims)


def random_local_unitaries(dims: Sequence[int], seed=None) -> list[np.ndarray]:
    dims = _check_dims(dims)
    rng = _rng(seed)
    return [haar_unitary(d, rng) for d in dims]
