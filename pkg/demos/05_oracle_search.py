"""
Brute-force search over local unitaries
=======================================

``search_lu`` maximises the overlap between a locally rotated state and a
target over products of unitary groups, from many seeded starting points.
It is slow but knows nothing about invariants, which makes it a useful
cross-check of the fingerprint verdicts.
"""

import time

from luequiv import (
    apply_local_unitaries,
    compare_fingerprints,
    fingerprint,
    ghz_state,
    haar_unitary,
    random_state,
    search_lu,
    w_state,
)

psi = random_state((2, 2, 2), seed=3)
phi = apply_local_unitaries(psi, [haar_unitary(2, s) for s in (1, 2, 3)])
print("fingerprints:", compare_fingerprints(fingerprint(psi, "12-3"), fingerprint(phi, "12-3")).value)
t0 = time.perf_counter()
wit = search_lu(psi, phi, budget=16, seed=0)
print(f"search: fidelity {wit.fidelity:.15f} in {time.perf_counter() - t0:.2f}s")

# GHZ and W are not LU-equivalent. The best overlap the search finds is
# sqrt(3)/2 ~ 0.8660, well short of 1.
ghz, w = ghz_state(), w_state()
print("fingerprints:", compare_fingerprints(fingerprint(ghz, "12-3"), fingerprint(w, "12-3")).value)
print(f"search: best fidelity {search_lu(ghz, w, budget=64, seed=0).fidelity:.10f}")
