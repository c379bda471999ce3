"""Local-unitary invariants of a tripartite pure state across one bipartition.

For a split ``L-R`` (two parties against one) the reduced state
``sigma = Tr_R |psi><psi|`` is diagonalised, each eigenvector ``v_i`` is
reshaped into a ``d1 x d2`` matrix ``A_i``, and the fingerprint is built from

* the spectrum ``mu`` and the moments ``J[s] = Tr(sigma^s)``,
* ``Omega[i, j] = Tr(rho_i rho_j)`` and ``Theta[i, j] = Tr(theta_i theta_j)``
  with ``rho_i = A_i A_i^dag`` and ``theta_i = A_i^T conj(A_i)``,
* ``X[i, j, k] = Tr(rho_i rho_j rho_k)`` and the analogous ``Y``.

Omega and Theta conceptually live in a ``(d1*d2) x (d1*d2)`` array padded
with zeros beyond the rank; only the ``n x n`` block is stored and
:func:`padded` materialises the rest. Genericity is judged on that block,
since the padded determinant vanishes whenever the rank is below ``d1*d2``.

When the spectrum is degenerate the eigenvectors, and with them Omega, Theta,
X and Y, depend on the basis chosen inside the eigenspace. Such fingerprints
are flagged ``canonical=False`` and only their basis-free parts are compared.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import NotBipartite, NotTripartite, SplitMismatch
from .linalg import hermitian_eig
from .states import RANK_TOL, DensityMatrix, PureState, as_split, bipartition_matrix

GAP_TOL = 1e-8
DET_TOL = 1e-10
COMPARE_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class EigenEnsemble:
    d1: int
    d2: int
    mu: np.ndarray
    A: np.ndarray
    rho: np.ndarray
    theta: np.ndarray
    canonical: bool
    gap: float

    @property
    def n(self):
        return len(self.mu)


def _min_gap(mu):
    if len(mu) < 2:
        return float("inf")
    return float(np.min(np.abs(np.diff(mu))))


def ensemble_from_vectors(mu, vectors, d1, d2, gap_tol=GAP_TOL) -> EigenEnsemble:
    """Build the ensemble from given weights and eigenvectors (as columns).

    :func:`eigen_ensemble` goes through here; calling it directly lets one pick
    a different basis inside a degenerate eigenspace.
    """
    mu = np.asarray(mu, dtype=float)
    vecs = np.asarray(vectors, dtype=np.complex128)
    a = vecs.T.reshape(len(mu), d1, d2)
    rho = a @ a.conj().transpose(0, 2, 1)
    theta = a.transpose(0, 2, 1) @ a.conj()
    gap = _min_gap(mu)
    return EigenEnsemble(int(d1), int(d2), mu, a, rho, theta, bool(gap > gap_tol), gap)


def eigen_ensemble(sigma: DensityMatrix, gap_tol=GAP_TOL) -> EigenEnsemble:
    """Eigen-ensemble of a two-party density matrix.

    Eigenvalues at or below ``RANK_TOL`` are dropped. ``canonical`` is true iff
    consecutive kept eigenvalues are separated by more than ``gap_tol``.
    """
    if sigma.n_parties != 2:
        raise NotBipartite(f"expected a two-party density matrix, got dims {sigma.dims}")
    w, v = hermitian_eig(sigma.matrix)
    keep = w > RANK_TOL
    d1, d2 = sigma.dims
    return ensemble_from_vectors(w[keep], v[:, keep], d1, d2, gap_tol)


def _gram(mats):
    # Tr(M_i M_j) for Hermitian M is sum(M_i * conj(M_j))
    flat = mats.reshape(len(mats), -1)
    g = (flat @ flat.conj().T).real
    upper = np.triu(g)
    return upper + np.triu(g, 1).T


def metric_matrices(ens: EigenEnsemble):
    """``(Omega, Theta)`` as real symmetric ``n x n`` blocks (exactly symmetric)."""
    return _gram(ens.rho), _gram(ens.theta)


def padded(block, size):
    out = np.zeros((size, size), dtype=block.dtype)
    n = block.shape[0]
    out[:n, :n] = block
    return out


def cubic_tensors(ens: EigenEnsemble):
    x = np.einsum("iab,jbc,kca->ijk", ens.rho, ens.rho, ens.rho)
    y = np.einsum("iab,jbc,kca->ijk", ens.theta, ens.theta, ens.theta)
    return x, y


def moment_invariants(sigma: DensityMatrix, count: int) -> np.ndarray:
    """``[Tr(sigma), Tr(sigma^2), ..., Tr(sigma^count)]`` by repeated products."""
    m = np.asarray(sigma.matrix)
    p = m
    out = []
    for _ in range(int(count)):
        out.append(np.trace(p).real)
        p = p @ m
    return np.array(out)


def genericity(omega, theta, tol=DET_TOL) -> bool:
    return bool(abs(np.linalg.det(omega)) > tol and abs(np.linalg.det(theta)) > tol)


@dataclass(frozen=True, eq=False)
class InvariantFingerprint:
    split: str
    dims: tuple
    spectrum: np.ndarray
    J: np.ndarray
    Omega: np.ndarray
    Theta: np.ndarray
    padded_size: int
    X: np.ndarray
    Y: np.ndarray
    generic: bool
    canonical: bool
    gap: float

    @property
    def rank(self):
        return len(self.spectrum)


def fingerprint(state: PureState, split, gap_tol=GAP_TOL) -> InvariantFingerprint:
    """Invariant fingerprint of a tripartite pure state across ``split``.

    ``split`` pairs two parties (the kept side, listed first) against the
    traced one, e.g. ``"12-3"``, ``"13-2"`` or ``"23-1"``.
    """
    if state.n_parties != 3:
        raise NotTripartite(f"fingerprints need exactly 3 parties, got {state.n_parties}")
    split = as_split(split).validate(3)
    if len(split.left) != 2:
        raise NotTripartite(f"split {split.label} must keep two parties")
    a = bipartition_matrix(state, split)
    kept_dims = tuple(state.dims[p - 1] for p in split.left)
    sigma = DensityMatrix(kept_dims, a @ a.conj().T)
    ens = eigen_ensemble(sigma, gap_tol)
    size = kept_dims[0] * kept_dims[1]
    omega, theta = metric_matrices(ens)
    x, y = cubic_tensors(ens)
    return InvariantFingerprint(
        split=split.label,
        dims=state.dims,
        spectrum=ens.mu,
        J=moment_invariants(sigma, size),
        Omega=omega,
        Theta=theta,
        padded_size=size,
        X=x,
        Y=y,
        generic=genericity(omega, theta),
        canonical=ens.canonical,
        gap=ens.gap,
    )


def all_fingerprints(state: PureState, gap_tol=GAP_TOL):
    """Fingerprints for the splits 12-3, 13-2 and 23-1."""
    return [fingerprint(state, s, gap_tol) for s in ("12-3", "13-2", "23-1")]


class Verdict(enum.Enum):
    DISTINCT = "Distinct"
    CONSISTENT_GENERIC = "ConsistentGeneric"
    INCONCLUSIVE = "Inconclusive"


def _differs(a, b, tol):
    return a.shape != b.shape or bool(np.any(np.abs(a - b) > tol))


def compare_fingerprints(f1, f2, tol=COMPARE_TOL) -> Verdict:
    """Decide what two fingerprints of the same split say about LU equivalence.

    Spectrum and moments are basis-free and always compared. The basis-
    dependent blocks (Omega, Theta, X, Y) are compared only when both
    spectra are nondegenerate.
    """
    if f1.split != f2.split or tuple(f1.dims) != tuple(f2.dims):
        raise SplitMismatch(f"cannot compare {f1.split} {f1.dims} with {f2.split} {f2.dims}")
    size = max(f1.rank, f2.rank)
    s1 = np.pad(f1.spectrum, (0, size - f1.rank))
    s2 = np.pad(f2.spectrum, (0, size - f2.rank))
    if _differs(s1, s2, tol) or _differs(f1.J, f2.J, tol):
        return Verdict.DISTINCT
    if f1.rank != f2.rank:
        # spectra agree only up to entries straddling the rank threshold
        return Verdict.INCONCLUSIVE
    if f1.canonical and f2.canonical:
        for name in ("Omega", "Theta", "X", "Y"):
            if _differs(getattr(f1, name), getattr(f2, name), tol):
                return Verdict.DISTINCT
        if f1.generic and f2.generic:
            return Verdict.CONSISTENT_GENERIC
    return Verdict.INCONCLUSIVE
