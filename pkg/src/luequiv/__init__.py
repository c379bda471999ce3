"""Local-unitary equivalence of multipartite pure states.

Two n-party pure states are LU-equivalent exactly when one of their
(n-1)-party reduced states is; this package builds the witnesses for that
reduction and computes the corresponding invariant fingerprint for
tripartite states.
"""

from .equivalence import (
    CounterexampleReport,
    LUWitness,
    check_lu_fidelity,
    counterexample_report,
    lift_witness,
    match_purification,
    search_lu,
)
from .invariants import (
    EigenEnsemble,
    InvariantFingerprint,
    Verdict,
    compare_fingerprints,
    cubic_tensors,
    eigen_ensemble,
    fingerprint,
    genericity,
    metric_matrices,
    moment_invariants,
)
from .linalg import EigenSystem, complete_to_unitary, frobenius_distance, haar_unitary, hermitian_eig
from .states import (
    Bipartition,
    DensityMatrix,
    PureState,
    apply_local_unitaries,
    bipartition_matrix,
    ghz_state,
    partial_trace,
    random_state,
    schmidt_coefficients,
    w_state,
)

__version__ = "0.1.0"
