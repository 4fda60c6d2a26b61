"""Full-separability test on all bipartitions of the four-qubit Dicke states.

Unfoldings alone are weaker than the balanced 12|34 matricization.
"""

from corrtensor import dicke_state, evaluate, white_noise_tolerance

for k in (1, 2):
    psi = dicke_state(4, k)
    res = evaluate(psi, "T4")
    print(f"D{k}:")
    for t in res.tests:
        print(f"  {t.label:6s} trace norm {t.value:.4f}  threshold {t.threshold:.4f}")
    unf = white_noise_tolerance(psi, "T4", group="unfolding").p
    bal = white_noise_tolerance(psi, "T4", labels=["12|34"]).p
    print(f"  tolerance: unfoldings {unf:.3f}, 12|34 {bal:.3f}")
