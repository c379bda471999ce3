"""Dense complex linear algebra used throughout the package.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. The eigensolver
is a cyclic complex Jacobi iteration so that eigenvector phases and ordering
are fully under our control (fingerprints must be byte-stable).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ConvergenceError,
    DimensionMismatch,
    NotHermitian,
    NotOrthonormal,
    NotSquare,
    NotUnitary,
)

HERMITIAN_TOL = 1e-10
ORTHONORMAL_TOL = 1e-10
UNITARY_TOL = 1e-10
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100

_SEED_MASK = (1 << 64) - 1


def as_matrix(a, name="matrix"):
    """Coerce ``a`` to a finite 2-d complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise DimensionMismatch(f"{name} must be a non-empty 2-d array, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return m


def as_vector(a, name="vector"):
    v = np.asarray(a, dtype=np.complex128)
    if v.ndim != 1 or v.size < 1:
        raise DimensionMismatch(f"{name} must be a non-empty 1-d array, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} has non-finite entries")
    return v


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues (descending) and unit eigenvectors stored as columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __iter__(self):
        yield self.eigenvalues
        yield self.eigenvectors


def _rotate(h, v, p, q):
    """Annihilate h[p, q] with one complex Jacobi rotation (in place)."""
    g = h[p, q]
    ag = abs(g)
    phase = g / ag
    a = h[p, p].real
    b = h[q, q].real
    tau = (b - a) / (2.0 * ag)
    t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    # G = diag(1, conj(phase)) @ [[c, s], [-s, c]]
    g2 = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
    idx = [p, q]
    h[:, idx] = h[:, idx] @ g2
    h[idx, :] = g2.conj().T @ h[idx, :]
    h[p, q] = 0.0
    h[q, p] = 0.0
    h[p, p] = a - t * ag
    h[q, q] = b + t * ag
    v[:, idx] = v[:, idx] @ g2


def fix_phases(vectors):
    """Rotate each column so its largest-modulus entry is real and non-negative.

    Ties in modulus go to the lowest index (``argmax`` semantics).
    """
    out = np.array(vectors, dtype=np.complex128, copy=True)
    for k in range(out.shape[1]):
        col = out[:, k]
        i = int(np.argmax(np.abs(col)))
        z = col[i]
        if z != 0:
            out[:, k] = col * (abs(z) / z)
            out[i, k] = abs(z)
    return out


def hermitian_eig(h, tol=JACOBI_TOL, max_sweeps=JACOBI_MAX_SWEEPS):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    h : array_like, shape (n, n)
        Hermitian matrix; the symmetry check is relative to ``||h||_F``.
    tol : float
        Sweeps stop once the off-diagonal Frobenius norm is at most
        ``tol * ||h||_F``.
    max_sweeps : int

    Returns
    -------
    EigenSystem
        Real eigenvalues sorted descending (stable on ties) and the matching
        eigenvectors as columns, phase-fixed by :func:`fix_phases`.

    Raises
    ------
    NotSquare, NotHermitian, ConvergenceError
    """
    m = as_matrix(h)
    n, k = m.shape
    if n != k:
        raise NotSquare(f"expected a square matrix, got {m.shape}")
    norm = np.linalg.norm(m)
    asym = np.linalg.norm(m - m.conj().T)
    if asym > HERMITIAN_TOL * norm:
        raise NotHermitian(f"||H - H^dag||_F = {asym:.3e} exceeds {HERMITIAN_TOL:g} * ||H||_F")
    a = 0.5 * (m + m.conj().T)
    a[np.diag_indices(n)] = a.diagonal().real
    v = np.eye(n, dtype=np.complex128)
    threshold = tol * norm
    off_mask = ~np.eye(n, dtype=bool)

    for _ in range(max_sweeps + 1):
        off = np.linalg.norm(a[off_mask])
        if off <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p, q] != 0:
                    _rotate(a, v, p, q)
    else:
        raise ConvergenceError(
            f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal {off:.3e})"
        )

    w = a.diagonal().real.copy()
    order = np.argsort(-w, kind="stable")
    return EigenSystem(w[order], fix_phases(v[:, order]))


def check_orthonormal_columns(q, tol=ORTHONORMAL_TOL):
    q = as_matrix(q)
    err = np.linalg.norm(q.conj().T @ q - np.eye(q.shape[1]))
    if err > tol:
        raise NotOrthonormal(f"columns not orthonormal: ||Q^dag Q - I||_F = {err:.3e}")
    return q


def check_unitary(u, tol=UNITARY_TOL, party=None):
    u = as_matrix(u)
    if u.shape[0] != u.shape[1]:
        raise NotUnitary(f"unitary must be square, got {u.shape}", party=party)
    err = np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0]))
    if err > tol:
        where = "" if party is None else f" (party {party})"
        raise NotUnitary(f"matrix is not unitary{where}: ||U^dag U - I||_F = {err:.3e}", party=party)
    return u


def complete_to_unitary(columns):
    """Extend ``k`` orthonormal columns in dimension ``d`` to a ``d x d`` unitary.

    The input columns are copied verbatim into the first ``k`` slots; the
    remaining columns are Gram-Schmidt residuals of the standard basis vector
    with the largest component outside the current span.
    """
    q = as_matrix(columns, "columns")
    d, k = q.shape
    if k > d:
        raise DimensionMismatch(f"{k} columns cannot be orthonormal in dimension {d}")
    check_orthonormal_columns(q)
    u = np.zeros((d, d), dtype=np.complex128)
    u[:, :k] = q
    basis = np.eye(d, dtype=np.complex128)
    for m in range(k, d):
        span = u[:, :m]
        resid = basis - span @ (span.conj().T @ basis)
        resid -= span @ (span.conj().T @ resid)
        i = int(np.argmax(np.linalg.norm(resid, axis=0)))
        col = resid[:, i]
        u[:, m] = col / np.linalg.norm(col)
    return u


def _rng(seed):
    return np.random.default_rng(int(seed) & _SEED_MASK)


def haar_unitary(d, seed):
    """Haar-distributed ``d x d`` unitary, a deterministic function of ``(d, seed)``.

    QR of a complex Ginibre matrix with the phases of ``diag(R)`` absorbed
    into ``Q`` so the factorisation is unique.
    """
    d = int(d)
    if d < 1:
        raise ValueError("d must be positive")
    rng = _rng(seed)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = r.diagonal()
    return q * (diag / np.abs(diag))


def frobenius_distance(a, b):
    a = as_matrix(a, "A")
    b = as_matrix(b, "B")
    if a.shape != b.shape:
        raise DimensionMismatch(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def orthonormalize(columns):
    """QR orthonormalisation with positive real ``diag(R)``.

    Equivariant under left multiplication by a unitary, which the purification
    matching relies on.
    """
    q, r = np.linalg.qr(np.asarray(columns, dtype=np.complex128))
    diag = r.diagonal()
    phases = np.where(np.abs(diag) > 0, diag / np.where(diag == 0, 1, np.abs(diag)), 1.0)
    return q * phases
