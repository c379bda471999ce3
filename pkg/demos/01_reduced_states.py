"""
Reduced states and Schmidt coefficients
=======================================

Build the GHZ and W states, look at their two-party marginals and check
that Schmidt coefficients do not move under local unitaries.
"""

import numpy as np

from luequiv import apply_local_unitaries, ghz_state, haar_unitary, partial_trace, schmidt_coefficients, w_state

np.set_printoptions(precision=4, suppress=True)

ghz, w = ghz_state(), w_state()

# Tracing out party 3. GHZ leaves a classical mixture of |00> and |11>,
# W leaves weight 2/3 on (|01>+|10>)/sqrt(2) and 1/3 on |00>.
print("Tr_3 GHZ =\n", partial_trace(ghz, [3]).matrix.real)
print("Tr_3 W   =\n", partial_trace(w, [3]).matrix.real)

# Schmidt coefficients across 12|3
print("GHZ 12-3:", schmidt_coefficients(ghz, "12-3"))
print("W   12-3:", schmidt_coefficients(w, "12-3"))

# Rotate every party by an independent Haar unitary; the coefficients stay put.
us = [haar_unitary(2, seed) for seed in (1, 2, 3)]
w_rot = apply_local_unitaries(w, us)
for split in ("12-3", "13-2", "23-1"):
    before, after = schmidt_coefficients(w, split), schmidt_coefficients(w_rot, split)
    print(split, "max change", np.abs(before - after).max())
