"""Certifying entanglement from a few measured correlations.

Only four entries of the GHZ correlation matrix (1|23 unfolding) are known.
A lower bound on its trace norm already exceeds the separable threshold.
"""

import numpy as np

from corrtensor import PartialMatrix, full_correlation_tensor, ghz_state, matricize, trace_norm_lower_bound
from corrtensor.criteria import theorem4_threshold

m = matricize(full_correlation_tensor(ghz_state(2, 3)), (0,))
known = np.zeros(m.shape, dtype=bool)
pauli = {"X": 0, "Y": 1, "Z": 2}
for setting in ("XXX", "XYY", "YXY", "YYX"):
    i, j, k = (pauli[c] for c in setting)
    known[i, 3 * j + k] = True

bound = trace_norm_lower_bound(PartialMatrix.from_mask(m, known))
print(f"lower bound {bound:.4f} vs separable threshold {theorem4_threshold((2, 2, 2)):.4f}")
