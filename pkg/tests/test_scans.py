import io

import numpy as np
import pytest

from corrtensor.criteria import evaluate
from corrtensor.scans import (
    REGION_COLUMNS, Axis, ScanConfig, family_state, scan_region, scan_thermal, thermal_summary,
    write_rows_csv,
)


def region(family, criteria, points=11, workers=1, **params):
    axes = [Axis("alpha", 0, 1, points), Axis("beta", 0, 1, points)]
    return scan_region(ScanConfig(family, axes, criteria, params, workers))


def lookup(rows, alpha, beta):
    return [r for r in rows if np.isclose(r["alpha"], alpha) and np.isclose(r["beta"], beta)]


def test_axis_validation():
    with pytest.raises(ValueError):
        Axis("a", 0, 1, 1)


def test_fig1_region_corners():
    rows = region("fig1", ["t1"], d=4)
    assert lookup(rows, 1, 0)[0]["violated"]
    assert not lookup(rows, 0, 0)[0]["violated"]
    assert lookup(rows, 1, 1)[0]["status"] == "skip"
    assert len(rows) == 121


def test_fig3_region_corners():
    rows = region("fig3", ["t3", "t4"])
    for corner in ((1, 0), (0, 1)):
        assert all(r["violated"] for r in lookup(rows, *corner))


def test_rows_match_single_evaluations():
    rows = [r for r in region("fig1", ["t1", "t4"], d=3) if r["status"] == "ok"]
    rng = np.random.default_rng(0)
    for idx in rng.choice(len(rows), size=10, replace=False):
        r = rows[idx]
        res = evaluate(family_state("fig1", r["alpha"], r["beta"], 3), r["criterion"])
        assert r["margin"] == res.margin
        assert r["violated"] == res.violated


def test_parallel_equals_serial():
    assert region("fig3", ["t4"], points=6, workers=2) == region("fig3", ["t4"], points=6, workers=1)


def test_unknown_family():
    with pytest.raises(ValueError):
        region("fig9", ["t1"])


def test_thermal_scan_and_summary():
    config = ScanConfig("h1", [Axis("h", 0, 1, 3), Axis("kT", 0.05, 2, 5)], ["T4", "T3"], {"n": 4})
    rows = scan_thermal(config)
    assert len(rows) == 15
    assert rows[0]["t4_violated"]
    summary = thermal_summary(rows)
    assert [s["h"] for s in summary] == [0, 0.5, 1]
    assert summary[0]["max_kT_t4"] >= 0.05


def test_thermal_rejects_nonpositive_temperature():
    config = ScanConfig("h2", [Axis("h", 0, 1, 2), Axis("kT", 0, 1, 3)], ["T4"], {"n": 4})
    with pytest.raises(ValueError):
        scan_thermal(config)


def test_thermal_three_qubits_has_no_t3():
    config = ScanConfig("h2", [Axis("h", 0, 1, 2), Axis("kT", 0.1, 1, 2)], ["T4"], {"n": 3})
    rows = scan_thermal(config)
    assert all("t3_margin" not in r for r in rows)


def test_write_rows_csv():
    fh = io.StringIO()
    write_rows_csv([dict(alpha=0.5, beta=0.5, criterion="T1", status="skip")], REGION_COLUMNS, fh)
    assert fh.getvalue().splitlines()[1] == "0.5,0.5,T1,skip,,,,"


def test_fig1_region_has_a_ghz_and_a_w_component():
    from scipy import ndimage

    rows = region("fig1", ["t1"], points=21, d=4)
    grid = np.zeros((21, 21), dtype=bool)
    for r in rows:
        if r["status"] == "ok" and r["violated"]:
            grid[round(r["alpha"] * 20), round(r["beta"] * 20)] = True
    labels, components = ndimage.label(grid)
    # the norm is convex along the GHZ-W edge and dips below threshold in between
    assert components == 2
    assert labels[20, 0] != labels[0, 20] and labels[20, 0] and labels[0, 20]
    assert not grid[10, 10]
