"""
From reduced-state witnesses to full witnesses
==============================================

If two pure states share the reduced state on all parties but one, a single
unitary on the remaining party carries one onto the other
(``match_purification``). Combining this with unitaries that relate the
reduced states turns a witness for the marginal into a witness for the
whole state (``lift_witness``).
"""

import numpy as np

from luequiv import apply_local_unitaries, check_lu_fidelity, haar_unitary, lift_witness, match_purification, random_state

dims = (2, 3, 2)
psi = random_state(dims, seed=1)

# Purification matching: act on party 2 only
w_true = haar_unitary(3, seed=5)
psi_prime = apply_local_unitaries(psi, [np.eye(2), w_true, np.eye(2)])
w_found = match_purification(psi, psi_prime, 2)
print("fidelity after matching:", check_lu_fidelity(psi, psi_prime, [np.eye(2), w_found, np.eye(2)]))
# The party-2 marginal has full rank here, so the matching unitary is unique
# and recovers the one we applied. On a rank-deficient marginal it would only
# be pinned down on the support.
print("||W_found - W_true||_F =", np.linalg.norm(w_found - w_true))

# Lifting: rotate every party, but reveal only the unitaries on parties 1 and 3
us = [haar_unitary(d, seed=10 + k) for k, d in enumerate(dims)]
phi = apply_local_unitaries(psi, us)
witness = lift_witness(psi, phi, 2, [us[0], us[2]])
print("lifted witness fidelity:", witness.fidelity, "phase:", np.round(witness.phase, 6))
