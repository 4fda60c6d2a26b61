"""Thermal states of two cyclic four-qubit Hamiltonians.

For each transverse field h, the highest temperature at which each test still
detects entanglement.
"""

import math

from corrtensor.scans import Axis, ScanConfig, scan_thermal, thermal_summary

for family in ("h1", "h2"):
    config = ScanConfig(family, [Axis("h", 0, 2, 9), Axis("kT", 0.05, 3, 60)], ["T4", "T3"], {"n": 4})
    print(f"{family}:  h    kT(T4)  kT(unfoldings)  kT(T3)")
    for row in thermal_summary(scan_thermal(config)):
        cells = [row[c] for c in ("max_kT_t4", "max_kT_t4_unfolding", "max_kT_t3")]
        text = ["   -  " if math.isnan(v) else f"{v:6.3f}" for v in cells]
        print(f"     {row['h']:4.2f}  {text[0]}  {text[1]:>14s}  {text[2]}")
