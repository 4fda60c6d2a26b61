"""Correlation tensors of GHZ and W states.

Builds the three-qubit full correlation tensors, prints their norms and the
singular values of each one-vs-rest unfolding.
"""

import numpy as np

from corrtensor import full_correlation_tensor, ghz_state, matricize, singular_values, standard_norm, w_state

np.set_printoptions(precision=4, suppress=True)

for name, psi in [("GHZ", ghz_state(2, 3)), ("W", w_state(2))]:
    t = full_correlation_tensor(psi)
    print(f"{name}: ||T|| = {standard_norm(t):.5f}")
    for axis in range(3):
        print(f"  unfolding {axis + 1}: singular values {singular_values(matricize(t, (axis,)))}")

# Qutrit GHZ: 8x8x8 tensor, 27x27 density matrix
t = full_correlation_tensor(ghz_state(3, 3))
print("qutrit GHZ tensor shape", t.shape, "norm", round(standard_norm(t), 5))
