"""Genuine multipartite entanglement criteria and their white-noise tolerance."""

from corrtensor import dicke_state, evaluate, ghz_state, w_state, white_noise_tolerance, white_noise_mix

cases = [
    ("GHZ3", ghz_state(2, 3), ["T1", "T2"]),
    ("W", w_state(2), ["T1", "T2"]),
    ("GHZ4", ghz_state(2, 4), ["T3"]),
    ("D1", dicke_state(4, 1), ["T3"]),
    ("D2", dicke_state(4, 2), ["T3"]),
]

for name, psi, criteria in cases:
    for c in criteria:
        tol = white_noise_tolerance(psi, c)
        print(f"{name:5s} {c}: detected up to p = {tol.p:.4f} (best test k={tol.k})")

# just below and above the GHZ tolerance for the second criterion
p = white_noise_tolerance(ghz_state(2, 3), "T2").p
for q in (p - 0.01, p + 0.01):
    res = evaluate(white_noise_mix(ghz_state(2, 3), q), "T2")
    print(f"p = {q:.3f}: violated={res.violated} margin={res.margin:+.4f}")
