"""
Invariant fingerprints of tripartite states
===========================================

The fingerprint of a split such as 12-3 collects the spectrum of the reduced
state, its moments, the Omega/Theta Gram matrices of the reshaped
eigenvectors and the cubic traces X/Y. For states whose reduced spectrum is
nondegenerate every entry is a local-unitary invariant.
"""

import numpy as np

from luequiv import (
    apply_local_unitaries,
    compare_fingerprints,
    fingerprint,
    ghz_state,
    haar_unitary,
    random_state,
    w_state,
)

np.set_printoptions(precision=6, suppress=True)

fw = fingerprint(w_state(), "12-3")
print("W spectrum", fw.spectrum)
print("W moments J", fw.J)
print("W Omega\n", fw.Omega)
print("W Theta\n", fw.Theta)
print("W X_111, X_222", fw.X[0, 0, 0].real, fw.X[1, 1, 1].real)
print("generic", fw.generic, "canonical", fw.canonical)

# GHZ has a degenerate reduced spectrum, so its blocks depend on the
# eigenbasis and the fingerprint is flagged non-canonical.
fg = fingerprint(ghz_state(), "12-3")
print("GHZ canonical:", fg.canonical)
print("GHZ vs W:", compare_fingerprints(fg, fw).value)

# A random qutrit state and a local-unitary image of it
psi = random_state((3, 3, 3), seed=42)
phi = apply_local_unitaries(psi, [haar_unitary(3, s) for s in (7, 8, 9)])
for split in ("12-3", "13-2", "23-1"):
    f1, f2 = fingerprint(psi, split), fingerprint(phi, split)
    dev = max(np.abs(getattr(f1, k) - getattr(f2, k)).max() for k in ("spectrum", "J", "Omega", "Theta", "X", "Y"))
    print(split, compare_fingerprints(f1, f2).value, f"max deviation {dev:.1e}")

# An unrelated state differs already in the moments
other = random_state((3, 3, 3), seed=43)
print("unrelated:", compare_fingerprints(fingerprint(psi, "12-3"), fingerprint(other, "12-3")).value)
