"""Entanglement criteria built on norms of correlation tensors.

Every criterion returns a :class:`CriterionResult` holding one record per
inequality that was checked. A state is flagged when at least one value
strictly exceeds its threshold.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import asdict, dataclass, field, replace
from enum import Enum
from typing import Callable, Iterable, NamedTuple

import numpy as np

from .correlation import (
    bipartitions,
    full_correlation_tensor,
    is_unfolding,
    m_body_tensor,
    matricize,
)
from .norms import ky_fan_norms, singular_values, standard_norm, trace_norm
from .states import as_density, random_pure_state, white_noise_mix

SQRT3 = float(np.sqrt(3.0))
# Margins within this band count as ties (not violations); separable extreme
# points saturate several bounds exactly.
DECISION_TOL = 1e-10


class DimensionMismatch(ValueError):
    """The criterion does not apply to a state with these subsystem dimensions."""


class Detection(str, Enum):
    GME = "GME"
    NOT_FULLY_SEPARABLE = "NOT_FULLY_SEPARABLE"
    CHSH_VIOLATION = "CHSH_VIOLATION"
    NONE = "NONE"


@dataclass(frozen=True)
class CriterionTest:
    label: str
    k: int | None
    value: float
    threshold: float
    group: str = ""

    @property
    def margin(self) -> float:
        return self.value - self.threshold


@dataclass(frozen=True)
class CriterionResult:
    criterion: str
    tests: tuple[CriterionTest, ...]
    detects: Detection
    extra: tuple[CriterionTest, ...] = field(default=())

    @property
    def margin(self) -> float:
        return float(max(t.margin for t in self.tests))

    @property
    def violated(self) -> bool:
        return bool(self.margin > DECISION_TOL)

    @property
    def detected_class(self) -> Detection:
        return self.detects if self.violated else Detection.NONE

    def best(self) -> CriterionTest:
        """The test with the largest margin (first one on ties)."""
        return max(self.tests, key=lambda t: t.margin)

    def restricted(self, group: str | None = None, labels: Iterable[str] | None = None) -> "CriterionResult":
        """Keep only the tests of one ``group`` and/or with the given labels."""
        labels = None if labels is None else set(labels)
        kept = tuple(
            t for t in self.tests
            if (group is None or t.group == group) and (labels is None or t.label in labels)
        )
        if not kept:
            raise ValueError(f"no test of {self.criterion} matches group={group!r}, labels={labels}")
        return replace(self, tests=kept)

    def to_dict(self) -> dict:
        def rec(t):
            d = asdict(t)
            d["margin"] = t.margin
            return d

        out = {
            "criterion": self.criterion,
            "tests": [rec(t) for t in self.tests],
            "violated": self.violated,
            "margin": self.margin,
            "detected_class": self.detected_class.value,
        }
        if self.extra:
            out["extra"] = [rec(t) for t in self.extra]
        return out

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _require_dims(rho, expected=None, n=None, equal=False, name=""):
    dims = rho.dims
    if n is not None and len(dims) != n:
        raise DimensionMismatch(f"{name} needs {n} parties, got dims {list(dims)}")
    if expected is not None and tuple(dims) != tuple(expected):
        raise DimensionMismatch(f"{name} needs dims {list(expected)}, got {list(dims)}")
    if equal and len(set(dims)) != 1:
        raise DimensionMismatch(f"{name} needs equal local dimensions, got {list(dims)}")


def theorem1_threshold(d: int) -> float:
    return float(np.sqrt(8 * (d - 1) * (d**2 - 1) / d**3))


def theorem1_tripartite_gme(state) -> CriterionResult:
    """Standard norm of the full tensor of three qudits against
    ``sqrt(8 (d-1)(d^2-1) / d^3)`` (``sqrt(3)`` for qubits)."""
    rho = as_density(state)
    _require_dims(rho, n=3, equal=True, name="T1")
    value = standard_norm(full_correlation_tensor(rho))
    test = CriterionTest("123", None, value, theorem1_threshold(rho.dims[0]), "standard")
    return CriterionResult("T1", (test,), Detection.GME)


def theorem2_threshold(k: int) -> float:
    return (2 * k + SQRT3) / 3


SINGLE_3QUBIT_THRESHOLDS = {1: SQRT3, 2: 2.0, 3: 3.0}


def theorem2_3qubit_gme(state) -> CriterionResult:
    """Average over the three one-vs-two matricizations of the Ky Fan ``k`` norm,
    ``k = 1, 2, 3``, against ``(2k + sqrt(3)) / 3``.

    The single-matricization bounds (``sqrt(3)``, 2, 3) are reported in
    ``extra`` and do not enter the verdict.
    """
    rho = as_density(state)
    _require_dims(rho, expected=(2, 2, 2), name="T2")
    t = full_correlation_tensor(rho)
    specs = [(0,), (1,), (2,)]
    norms = {s: ky_fan_norms(matricize(t, s), 3) for s in specs}
    avg = np.mean([norms[s] for s in specs], axis=0)
    tests = tuple(
        CriterionTest("avg", k, float(avg[k - 1]), theorem2_threshold(k), "average")
        for k in (1, 2, 3)
    )
    extra = tuple(
        CriterionTest(f"{s[0] + 1}|{''.join(str(a + 1) for a in range(3) if a != s[0])}", k,
                      float(norms[s][k - 1]), SINGLE_3QUBIT_THRESHOLDS[k], "single")
        for s in specs for k in (1, 2, 3)
    )
    return CriterionResult("T2", tests, Detection.GME, extra)


def theorem3_threshold(k: int) -> float:
    return float(2 * np.sqrt(k)) if k <= 3 else 1 + 2 * k / 3


FOUR_QUBIT_SPLITS = ((0, 1), (0, 2), (0, 3))


def theorem3_4qubit_gme(state) -> CriterionResult:
    """Average Ky Fan ``k`` norm of the 12|34, 13|24, 14|23 matricizations,
    ``k = 1..9``; thresholds ``2 sqrt(k)`` for ``k <= 3`` and ``1 + 2k/3`` above."""
    rho = as_density(state)
    _require_dims(rho, expected=(2, 2, 2, 2), name="T3")
    t = full_correlation_tensor(rho)
    avg = np.mean([ky_fan_norms(matricize(t, s), 9) for s in FOUR_QUBIT_SPLITS], axis=0)
    tests = tuple(
        CriterionTest("avg22", k, float(avg[k - 1]), float(theorem3_threshold(k)), "average")
        for k in range(1, 10)
    )
    return CriterionResult("T3", tests, Detection.GME)


def theorem4_threshold(dims) -> float:
    return float(np.prod([np.sqrt(2 * (d - 1) / d) for d in dims]))


def theorem4_full_separability(state) -> CriterionResult:
    """Trace norm of every matricization of the full tensor against
    ``prod_j sqrt(2 (d_j - 1) / d_j)``.

    Each ``A | Abar`` split is listed once (party 1 always in ``A``). Tests of
    one-party-versus-rest splits carry ``group="unfolding"``, the others
    ``group="matricization"``.
    """
    rho = as_density(state)
    n = rho.n_parties
    if n < 2:
        raise DimensionMismatch("T4 needs at least two parties")
    t = full_correlation_tensor(rho)
    threshold = theorem4_threshold(rho.dims)
    tests = []
    for spec in bipartitions(n):
        group = "unfolding" if is_unfolding(spec, n) else "matricization"
        tests.append(CriterionTest(spec.label(n), None, trace_norm(matricize(t, spec)), threshold, group))
    return CriterionResult("T4", tuple(tests), Detection.NOT_FULLY_SEPARABLE)


def chsh_violation_2qubit(state) -> CriterionResult:
    """Two-qubit CHSH test: sum of the two largest squared singular values
    of the correlation matrix exceeds 1."""
    rho = as_density(state)
    _require_dims(rho, expected=(2, 2), name="CHSH")
    s = singular_values(full_correlation_tensor(rho).values)
    test = CriterionTest("12", 2, float(s[0] ** 2 + s[1] ** 2), 1.0, "chsh")
    return CriterionResult("CHSH", (test,), Detection.CHSH_VIOLATION)


CRITERIA: dict[str, Callable] = {
    "T1": theorem1_tripartite_gme,
    "T2": theorem2_3qubit_gme,
    "T3": theorem3_4qubit_gme,
    "T4": theorem4_full_separability,
    "CHSH": chsh_violation_2qubit,
}

# value(p) = (1 - p)**exponent * value(0) under white noise
NOISE_EXPONENT = {"T1": 1, "T2": 1, "T3": 1, "T4": 1, "CHSH": 2}


def evaluate(state, criterion: str, group: str | None = None, labels=None) -> CriterionResult:
    key = criterion.upper()
    if key not in CRITERIA:
        raise KeyError(f"unknown criterion {criterion!r}; choose from {sorted(CRITERIA)}")
    result = CRITERIA[key](state)
    if group is not None or labels is not None:
        result = result.restricted(group, labels)
    return result


# --- white noise ------------------------------------------------------------------


class NoiseTolerance(NamedTuple):
    p: float
    detected: bool
    label: str
    k: int | None


def white_noise_tolerance(state, criterion: str, group: str | None = None, labels=None) -> NoiseTolerance:
    """Largest ``p`` for which ``p I/D + (1 - p) rho`` is still detected.

    All tested values are norms of the full correlation tensor, so they scale
    as a fixed power of ``1 - p`` and the tolerance has a closed form.
    Returns ``p = 0`` with ``detected=False`` if the noiseless state already
    passes every test.
    """
    result = evaluate(state, criterion, group, labels)
    if not result.violated:
        return NoiseTolerance(0.0, False, "", None)
    e = NOISE_EXPONENT[result.criterion]
    best_p, best = 0.0, None
    for t in result.tests:
        if t.margin > DECISION_TOL:
            p = 1 - (t.threshold / t.value) ** (1 / e)
            if best is None or p > best_p:
                best_p, best = p, t
    return NoiseTolerance(float(best_p), True, best.label, best.k)


def white_noise_tolerance_bisection(state, criterion: str, group: str | None = None, labels=None,
                                    tol: float = 1e-9) -> float:
    """Same quantity as :func:`white_noise_tolerance`, located by bisection on
    explicitly constructed noisy states."""

    def detected(p):
        return evaluate(white_noise_mix(state, p), criterion, group, labels).violated

    if not detected(0.0):
        return 0.0
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if detected(mid):
            lo = mid
        else:
            hi = mid
    return lo


# --- sanity audit of the meaningful-tensor bounds -----------------------------------


class AuditRecord(NamedTuple):
    bound: str
    parties: tuple[int, ...]
    k: int | None
    value: float
    limit: float

    @property
    def slack(self) -> float:
        return self.limit - self.value


def meaningful_bound_audit(state) -> list[AuditRecord]:
    """Check the known upper bounds on 1-, 2- and 3-body correlation tensors.

    * one body: ``||T^(j)|| <= sqrt(2 (d_j - 1) / d_j)``
    * two bodies: ``||T^(j,k)|| <= 2 sqrt((d_j d_k - 1) / (d_j d_k))``
    * qubit pairs: Ky Fan ``k`` norm of the correlation matrix ``<= k``
    * qubit triples: ``||T|| <= 2`` and Ky Fan ``k`` of every unfolding ``<= 2 sqrt(k)``
    """
    rho = as_density(state)
    dims = rho.dims
    n = len(dims)
    out = []
    for j in range(n):
        t = m_body_tensor(rho, [j])
        out.append(AuditRecord("one-body", (j,), None, standard_norm(t), np.sqrt(2 * (dims[j] - 1) / dims[j])))
    for j, l in itertools.combinations(range(n), 2):
        t = m_body_tensor(rho, [j, l])
        dd = dims[j] * dims[l]
        out.append(AuditRecord("two-body", (j, l), None, standard_norm(t), 2 * np.sqrt((dd - 1) / dd)))
        if dims[j] == dims[l] == 2:
            kf = ky_fan_norms(t.values, 3)
            out += [AuditRecord("two-qubit-kyfan", (j, l), k, float(kf[k - 1]), float(k)) for k in (1, 2, 3)]
    for triple in itertools.combinations(range(n), 3):
        if all(dims[j] == 2 for j in triple):
            t = m_body_tensor(rho, triple)
            out.append(AuditRecord("three-qubit-norm", triple, None, standard_norm(t), 2.0))
            for axis in range(3):
                kf = ky_fan_norms(matricize(t, (axis,)), 3)
                out += [
                    AuditRecord(f"three-qubit-kyfan-{axis + 1}", triple, k, float(kf[k - 1]), 2 * np.sqrt(k))
                    for k in (1, 2, 3)
                ]
    return out


# --- numerical exploration ------------------------------------------------------------


def max_unfolding_trace_norm(n_samples: int = 10_000, seed: int = 0, dims=(2, 2, 2)) -> tuple[float, np.ndarray]:
    """Largest one-vs-rest trace norm of the full tensor over Haar-random pure states.

    Returns the maximum and the amplitudes of the maximizing sample.
    """
    rng = np.random.default_rng(seed)
    best, best_vec = -1.0, None
    for _ in range(n_samples):
        psi = random_pure_state(dims, rng)
        t = full_correlation_tensor(psi)
        value = max(trace_norm(matricize(t, (a,))) for a in range(len(dims)))
        if value > best:
            best, best_vec = value, psi.amplitudes
    return best, best_vec
