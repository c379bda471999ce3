"""Constructive local-unitary equivalence.

* :func:`match_purification` -- two pure states with the same reduced state
  on all parties but ``j`` differ by a unitary on party ``j`` alone; build it.
* :func:`lift_witness` -- given unitaries relating the reduced states on all
  parties but ``j``, finish the job on party ``j`` and return a full witness.
* :func:`search_lu` -- brute-force fidelity maximisation over products of
  unitary groups, used as an independent oracle.
* :func:`counterexample_report` -- two mixed states with equal two-party
  marginals that are nevertheless not unitarily related.

All equivalences hold modulo a global phase; the fidelity
``|<psi'| (U_1 (x) ... (x) U_n) |psi>|`` is the single acceptance functional.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    DimensionTooLarge,
    InvalidPartySet,
    ReconstructionFailed,
    ReducedMismatch,
    WitnessMismatch,
)
from .invariants import GAP_TOL
from .linalg import check_unitary, complete_to_unitary, hermitian_eig, orthonormalize
from .states import RANK_TOL, Bipartition, DensityMatrix, PureState, apply_local_unitaries, bipartition_matrix, partial_trace

REDUCED_TOL = 1e-8
RECONSTRUCTION_TOL = 1e-6
SEARCH_MAX_DIM = 64


@dataclass(frozen=True, eq=False)
class LUWitness:
    """Unitaries, one per party, with ``(U_1 (x) ... (x) U_n) psi ~= phase * psi'``."""

    unitaries: tuple
    fidelity: float
    phase: complex


def _overlap(psi, psi_prime, unitaries):
    return complex(np.vdot(psi_prime.amplitudes, apply_local_unitaries(psi, unitaries).amplitudes))


def check_lu_fidelity(psi: PureState, psi_prime: PureState, unitaries: Sequence) -> float:
    if psi.dims != psi_prime.dims:
        raise DimensionMismatch(f"dims differ: {psi.dims} vs {psi_prime.dims}")
    return min(1.0, abs(_overlap(psi, psi_prime, unitaries)))


def _make_witness(psi, psi_prime, unitaries):
    unitaries = tuple(np.asarray(u, dtype=np.complex128) for u in unitaries)
    ov = _overlap(psi, psi_prime, unitaries)
    phase = ov / abs(ov) if abs(ov) > 0 else 1.0 + 0.0j
    return LUWitness(unitaries, min(1.0, abs(ov)), complex(phase))


def _check_party(state, j):
    j = int(j)
    if not 1 <= j <= state.n_parties:
        raise InvalidPartySet(f"party {j} out of range 1..{state.n_parties}")
    return j


def _slice_groups(mu, tol):
    """Index ranges of (near-)degenerate runs in a descending spectrum."""
    groups, start = [], 0
    for k in range(1, len(mu) + 1):
        if k == len(mu) or mu[k - 1] - mu[k] > tol:
            groups.append(slice(start, k))
            start = k
    return groups


def match_purification(psi: PureState, psi_prime: PureState, j: int) -> np.ndarray:
    """Unitary ``W`` on party ``j`` with ``(I (x) .. W .. (x) I) psi ~= psi'``.

    Requires the reduced states of ``psi`` and ``psi_prime`` on the parties
    other than ``j`` to agree. With ``e_k`` the eigenvectors of the shared
    reduced state and ``u_k = (<e_k| (x) I) psi`` the party-``j`` slices,
    ``W`` maps the slices of ``psi`` onto those of ``psi_prime``. Slices of a
    degenerate eigenvalue are matched as subspaces through their QR bases;
    the map is then completed to a full unitary.

    Raises
    ------
    ReducedMismatch
        The reduced states differ by more than ``1e-8`` in Frobenius norm.
    ReconstructionFailed
        The resulting fidelity is below ``1 - 1e-6``.
    """
    if psi.dims != psi_prime.dims:
        raise DimensionMismatch(f"dims differ: {psi.dims} vs {psi_prime.dims}")
    j = _check_party(psi, j)
    n = psi.n_parties
    dj = psi.dims[j - 1]
    if n == 1:
        a = psi.amplitudes.reshape(1, dj)
        a2 = psi_prime.amplitudes.reshape(1, dj)
    else:
        rest = tuple(p for p in range(1, n + 1) if p != j)
        split = Bipartition(rest, (j,))
        a = bipartition_matrix(psi, split)
        a2 = bipartition_matrix(psi_prime, split)
    rho = a @ a.conj().T
    resid = np.linalg.norm(rho - a2 @ a2.conj().T)
    if resid > REDUCED_TOL:
        raise ReducedMismatch(f"reduced states differ by {resid:.3e} (tolerance {REDUCED_TOL:g})")

    w, e = hermitian_eig(rho)
    keep = w > RANK_TOL
    w, e = w[keep], e[:, keep]
    # columns u_k = A^T conj(e_k)
    src = a.T @ e.conj()
    dst = a2.T @ e.conj()
    q_src = np.zeros_like(src)
    q_dst = np.zeros_like(dst)
    for g in _slice_groups(w, GAP_TOL):
        q_src[:, g] = orthonormalize(src[:, g])
        q_dst[:, g] = orthonormalize(dst[:, g])
    # clusters of psi' slices are orthogonal only up to the reduced residual
    q_dst = orthonormalize(q_dst)
    v_src = complete_to_unitary(orthonormalize(q_src))
    v_dst = complete_to_unitary(q_dst)
    wj = v_dst @ v_src.conj().T

    unitaries = [np.eye(d, dtype=np.complex128) for d in psi.dims]
    unitaries[j - 1] = wj
    fid = check_lu_fidelity(psi, psi_prime, unitaries)
    if fid < 1.0 - RECONSTRUCTION_TOL:
        raise ReconstructionFailed(f"purification matching reached fidelity {fid!r} only")
    return wj


def lift_witness(psi: PureState, psi_prime: PureState, j: int, witness: Sequence) -> LUWitness:
    """Extend unitaries on all parties but ``j`` to a full LU witness.

    ``witness`` lists one unitary per party other than ``j``, in increasing
    party order, and must carry ``Tr_j |psi><psi|`` onto ``Tr_j |psi'><psi'|``.
    The missing party-``j`` factor comes from :func:`match_purification`
    applied to the rotated ``psi`` and ``psi_prime``.
    """
    if psi.dims != psi_prime.dims:
        raise DimensionMismatch(f"dims differ: {psi.dims} vs {psi_prime.dims}")
    j = _check_party(psi, j)
    others = [p for p in range(1, psi.n_parties + 1) if p != j]
    if len(witness) != len(others):
        raise DimensionMismatch(f"witness needs {len(others)} unitaries, got {len(witness)}")
    full = [np.eye(psi.dims[j - 1], dtype=np.complex128)] * psi.n_parties
    full = list(full)
    for p, u in zip(others, witness):
        full[p - 1] = check_unitary(u, party=p)
    phi = apply_local_unitaries(psi, full)
    if psi.n_parties > 1:
        resid = np.linalg.norm(partial_trace(phi, [j]).matrix - partial_trace(psi_prime, [j]).matrix)
        if resid > REDUCED_TOL:
            raise WitnessMismatch(f"witness leaves reduced residual {resid:.3e}")
    full[j - 1] = match_purification(phi, psi_prime, j)
    return _make_witness(psi, psi_prime, full)


def unitary_from_params(params, d):
    """``exp(iH)`` with ``H`` Hermitian built from ``d**2`` real parameters.

    The first ``d`` parameters fill the diagonal; the rest fill the strict
    upper triangle in row-major order as (real, imaginary) pairs.
    """
    params = np.asarray(params, dtype=float)
    if params.size != d * d:
        raise DimensionMismatch(f"need {d * d} parameters, got {params.size}")
    h = np.diag(params[:d]).astype(np.complex128)
    iu = np.triu_indices(d, 1)
    off = params[d:].reshape(-1, 2)
    h[iu] = off[:, 0] + 1j * off[:, 1]
    h = h + np.triu(h, 1).conj().T
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1j * w)) @ v.conj().T


def _environment(t, t_prime, unitaries, j):
    """``K`` with ``<psi'| (x)U |psi> = Tr(K U_j)`` (other factors fixed)."""
    for k, u in enumerate(unitaries):
        if k != j:
            t = np.moveaxis(np.tensordot(u, t, axes=([1], [k])), 0, k)
    axes = [k for k in range(t.ndim) if k != j]
    n = np.tensordot(t_prime.conj(), t, axes=(axes, axes))
    return n.T


def _ascend(t, t_prime, unitaries, max_sweeps, tol):
    """Block-coordinate ascent: each factor in turn set to its exact optimum."""
    us = list(unitaries)
    best = -1.0
    for _ in range(max_sweeps):
        for j in range(len(us)):
            k = _environment(t, t_prime, us, j)
            p, s, qh = np.linalg.svd(k)
            us[j] = (p @ qh).conj().T
            val = float(s.sum())
        if val - best <= tol:
            best = max(best, val)
            break
        best = val
    return us


def search_lu(psi: PureState, psi_prime: PureState, budget: int = 32, seed: int = 0,
              max_sweeps: int = 500, target: float | None = None) -> LUWitness:
    """Best LU witness found by multi-start fidelity ascent.

    Restart 0 starts at the identity; restart ``r > 0`` starts at
    ``exp(iH)`` with generator parameters drawn uniformly from ``[-pi, pi]``
    using a seed derived from ``(seed, r)``. From each start, the factors are
    updated one at a time to the polar factor of their environment, which
    never lowers the fidelity. Restarts are independent; the best fidelity
    wins with ties going to the lower restart index. If ``target`` is given,
    the search stops at the first restart reaching it.
    """
    if psi.dims != psi_prime.dims:
        raise DimensionMismatch(f"dims differ: {psi.dims} vs {psi_prime.dims}")
    total = int(np.prod(psi.dims))
    if total > SEARCH_MAX_DIM:
        raise DimensionTooLarge(f"total dimension {total} exceeds {SEARCH_MAX_DIM}")
    t, t_prime = psi.tensor(), psi_prime.tensor()
    root = np.random.SeedSequence(int(seed) & ((1 << 64) - 1))
    children = root.spawn(max(int(budget), 1))
    best = None
    for r, child in enumerate(children):
        if r == 0:
            start = [np.eye(d, dtype=np.complex128) for d in psi.dims]
        else:
            rng = np.random.default_rng(child)
            start = [unitary_from_params(rng.uniform(-np.pi, np.pi, d * d), d) for d in psi.dims]
        us = _ascend(t, t_prime, start, max_sweeps, 1e-15)
        cand = _make_witness(psi, psi_prime, us)
        if best is None or cand.fidelity > best.fidelity:
            best = cand
        if target is not None and best.fidelity >= target:
            break
    return best


class CounterexampleVerdict(enum.Enum):
    NOT_UNITARILY_EQUIVALENT = "NotUnitarilyEquivalent"
    UNDECIDED = "Undecided"


@dataclass(frozen=True, eq=False)
class CounterexampleReport:
    """Equal marginals, different spectra.

    Both mixtures have rank 2, so rank cannot tell them apart; their nonzero
    spectra ``{2/3, 1/3}`` and ``{1/2, 1/2}`` can, and differing spectra rule
    out any unitary relation, local or global.
    """

    reduced_residuals: tuple
    spectrum_1: np.ndarray
    spectrum_2: np.ndarray
    ranks: tuple
    max_spectral_gap: float
    verdict: CounterexampleVerdict


def counterexample_states():
    """``(rho1, rho2)``: GHZ-type mixtures with weights (1/3, 2/3) and (1/2, 1/2)."""
    dims = (2, 2, 2)
    plus = np.zeros(8, dtype=np.complex128)
    plus[0] = plus[7] = 1 / np.sqrt(2)
    minus = plus.copy()
    minus[7] = -1 / np.sqrt(2)
    pp = np.outer(plus, plus.conj())
    mm = np.outer(minus, minus.conj())
    return DensityMatrix(dims, pp / 3 + 2 * mm / 3), DensityMatrix(dims, pp / 2 + mm / 2)


def counterexample_report() -> CounterexampleReport:
    rho1, rho2 = counterexample_states()
    residuals = tuple(
        float(np.linalg.norm(partial_trace(rho1, [k]).matrix - partial_trace(rho2, [k]).matrix))
        for k in (1, 2, 3)
    )
    w1 = hermitian_eig(rho1.matrix).eigenvalues
    w2 = hermitian_eig(rho2.matrix).eigenvalues
    s1, s2 = w1[w1 > RANK_TOL], w2[w2 > RANK_TOL]
    size = max(len(s1), len(s2))
    gap = float(np.max(np.abs(np.pad(s1, (0, size - len(s1))) - np.pad(s2, (0, size - len(s2))))))
    verdict = (CounterexampleVerdict.NOT_UNITARILY_EQUIVALENT if gap > RANK_TOL
               else CounterexampleVerdict.UNDECIDED)
    return CounterexampleReport(residuals, s1, s2, (len(s1), len(s2)), gap, verdict)
