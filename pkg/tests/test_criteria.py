import json

import numpy as np
import pytest

from corrtensor import states as S
from corrtensor.criteria import (
    Detection,
    DimensionMismatch,
    chsh_violation_2qubit,
    evaluate,
    meaningful_bound_audit,
    theorem1_threshold,
    theorem1_tripartite_gme,
    theorem2_3qubit_gme,
    theorem3_4qubit_gme,
    theorem4_full_separability,
    theorem4_threshold,
    white_noise_tolerance,
    white_noise_tolerance_bisection,
)

BELL = S.PureState(np.array([1, 0, 0, 1]) / np.sqrt(2), (2, 2))


def test_thresholds():
    assert theorem1_threshold(2) == np.sqrt(3)
    assert theorem1_threshold(3) == pytest.approx(np.sqrt(8 * 2 * 8 / 27))
    assert theorem4_threshold((2, 2, 2)) == pytest.approx(1)
    assert theorem4_threshold((3, 4)) == pytest.approx(np.sqrt(4 / 3) * np.sqrt(6 / 4))


def test_theorem1_examples():
    ghz = theorem1_tripartite_gme(S.ghz_state(2, 3))
    assert ghz.violated and ghz.detected_class is Detection.GME
    assert ghz.tests[0].value == pytest.approx(2)
    w = theorem1_tripartite_gme(S.w_state(2))
    assert w.violated and w.tests[0].value == pytest.approx(1.92, abs=0.01)
    mixed = theorem1_tripartite_gme(S.maximally_mixed((2, 2, 2)))
    assert not mixed.violated and mixed.tests[0].value == 0
    assert mixed.detected_class is Detection.NONE
    with pytest.raises(DimensionMismatch):
        theorem1_tripartite_gme(S.maximally_mixed((2, 3, 2)))
    with pytest.raises(DimensionMismatch):
        theorem1_tripartite_gme(S.maximally_mixed((2, 2)))


def test_theorem1_higher_dimensions_ghz():
    for d in (3, 4, 5):
        assert theorem1_tripartite_gme(S.ghz_state(d, 3)).violated


def test_theorem2_ghz_average():
    r = theorem2_3qubit_gme(S.ghz_state(2, 3))
    k2 = [t for t in r.tests if t.k == 2][0]
    assert k2.value == pytest.approx(2 * np.sqrt(2))
    assert k2.threshold == pytest.approx((4 + np.sqrt(3)) / 3)
    assert r.violated
    singles = {(t.label, t.k): t for t in r.extra}
    assert singles[("1|23", 3)].threshold == 3
    assert singles[("2|13", 1)].threshold == pytest.approx(np.sqrt(3))
    with pytest.raises(DimensionMismatch):
        theorem2_3qubit_gme(S.ghz_state(3, 3))


def test_theorem2_biseparable_extreme_point_is_a_tie():
    # Bell pair on parties 1,2 and a pure third qubit saturate the average bound for every k.
    psi = S.random_biseparable_pure((2, 2, 2), seed=0, partition=[2])
    bell_part = S.PureState(np.kron(BELL.amplitudes, [1, 0]), (2, 2, 2))
    for state in (psi, bell_part):
        r = theorem2_3qubit_gme(state)
        assert not r.violated
    margins = [t.margin for t in theorem2_3qubit_gme(bell_part).tests]
    np.testing.assert_allclose(margins, 0, atol=1e-12)


def test_theorem3_examples():
    assert theorem3_4qubit_gme(S.ghz_state(2, 4)).violated
    assert not theorem3_4qubit_gme(S.maximally_mixed((2,) * 4)).violated
    r = theorem3_4qubit_gme(S.dicke_state(4, 2))
    assert [t.k for t in r.tests] == list(range(1, 10))
    assert [t.threshold for t in r.tests[:3]] == pytest.approx([2, 2 * np.sqrt(2), 2 * np.sqrt(3)])
    assert r.tests[3].threshold == pytest.approx(1 + 8 / 3)
    with pytest.raises(DimensionMismatch):
        theorem3_4qubit_gme(S.ghz_state(2, 3))


def test_theorem4_structure():
    r = theorem4_full_separability(S.ghz_state(2, 4))
    assert len(r.tests) == 7
    assert {t.group for t in r.tests} == {"unfolding", "matricization"}
    assert len(r.restricted(group="unfolding").tests) == 4
    assert r.violated and r.detected_class is Detection.NOT_FULLY_SEPARABLE
    assert not theorem4_full_separability(S.maximally_mixed((2, 3, 2))).violated
    with pytest.raises(DimensionMismatch):
        theorem4_full_separability(S.maximally_mixed((4,)))


def test_theorem4_product_state_is_a_tie():
    r = theorem4_full_separability(S.random_product_pure((2, 3, 4), seed=1))
    for t in r.tests:
        assert t.margin == pytest.approx(0, abs=1e-12)
    assert not r.violated


@pytest.mark.parametrize("seed", range(10))
def test_theorem4_dominates_unfoldings(seed):
    r = theorem4_full_separability(S.random_mixed_state((2, 2, 2, 2), seed=seed, rank=2))
    assert r.margin >= r.restricted(group="unfolding").margin


def test_chsh():
    assert chsh_violation_2qubit(BELL).tests[0].value == pytest.approx(2)
    assert chsh_violation_2qubit(BELL).detected_class is Detection.CHSH_VIOLATION
    assert chsh_violation_2qubit(S.maximally_mixed((2, 2))).tests[0].value == pytest.approx(0)
    for seed in range(10):
        assert not chsh_violation_2qubit(S.random_product_pure((2, 2), seed=seed)).violated
    with pytest.raises(DimensionMismatch):
        chsh_violation_2qubit(S.ghz_state(2, 3))


def test_chsh_werner_threshold():
    # Werner state (1-p) Bell + p I/4 violates CHSH iff (1-p) > 1/sqrt(2)
    tol = white_noise_tolerance(BELL, "chsh")
    assert tol.p == pytest.approx(1 - 1 / np.sqrt(2), abs=1e-12)
    assert white_noise_tolerance_bisection(BELL, "chsh") == pytest.approx(tol.p, abs=1e-6)


def test_cluster_ground_state_detected():
    H = S.hamiltonian_h1(4, 0)
    evals, evecs = np.linalg.eigh(H.matrix())
    ground = S.PureState(evecs[:, 0], (2,) * 4)
    assert theorem4_full_separability(ground).violated


def test_evaluate_dispatch_and_json():
    r = evaluate(S.ghz_state(2, 3), "t1")
    data = json.loads(r.to_json())
    assert set(data) == {"criterion", "tests", "violated", "margin", "detected_class"}
    assert set(data["tests"][0]) == {"label", "k", "value", "threshold", "group", "margin"}
    assert data["violated"] is True and data["detected_class"] == "GME"
    with pytest.raises(KeyError):
        evaluate(S.ghz_state(2, 3), "T9")
    with pytest.raises(ValueError):
        r.restricted(group="nope")


def test_tolerance_not_detected():
    tol = white_noise_tolerance(S.maximally_mixed((2, 2, 2)), "T1")
    assert tol.p == 0 and not tol.detected
    assert white_noise_tolerance_bisection(S.maximally_mixed((2, 2, 2)), "T1") == 0


@pytest.mark.parametrize(
    "state,criterion",
    [
        (S.ghz_state(3, 3), "T1"),
        (S.random_pure_state((2, 2, 2), seed=3), "T2"),
        (S.random_pure_state((2, 2, 2, 2), seed=4), "T4"),
        (S.random_pure_state((3, 3), seed=5), "T4"),
        (S.dicke_state(4, 2), "T3"),
    ],
)
def test_tolerance_two_routes_agree(state, criterion):
    analytic = white_noise_tolerance(state, criterion)
    assert analytic.detected
    assert white_noise_tolerance_bisection(state, criterion) == pytest.approx(analytic.p, abs=1e-6)


@pytest.mark.parametrize("criterion,state", [("T2", S.w_state(2)), ("T3", S.ghz_state(2, 4)), ("T4", S.dicke_state(4, 1))])
def test_margin_strictly_decreasing_in_noise(criterion, state):
    margins = [evaluate(S.white_noise_mix(state, p), criterion).margin for p in np.linspace(0, 1, 21)]
    assert np.all(np.diff(margins) < 0)


def test_audit_equality_cases():
    ghz = {(r.bound, r.k): r for r in meaningful_bound_audit(S.ghz_state(2, 3))}
    assert ghz[("three-qubit-norm", None)].slack == pytest.approx(0, abs=1e-12)
    bell = [r for r in meaningful_bound_audit(BELL)]
    assert min(r.slack for r in bell if r.bound == "two-body") == pytest.approx(0, abs=1e-12)
    assert all(abs(r.slack) < 1e-12 for r in bell if r.bound == "two-qubit-kyfan")
    prod = meaningful_bound_audit(S.random_product_pure((3, 4), seed=0))
    assert all(abs(r.slack) < 1e-12 for r in prod if r.bound == "one-body")
    qutrits = S.PureState(np.eye(3).reshape(-1) / np.sqrt(3), (3, 3))
    assert [r.slack for r in meaningful_bound_audit(qutrits) if r.bound == "two-body"] == pytest.approx([0], abs=1e-12)
