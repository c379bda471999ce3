"""Multipartite pure and mixed states.

Parties are numbered from 1, matching split labels such as ``"12-3"``.
Amplitudes are indexed lexicographically with party 1 slowest, i.e. the
ordering produced by ``np.kron(a1, np.kron(a2, a3))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, InvalidPartySet
from .linalg import as_matrix, as_vector, check_unitary, hermitian_eig

NORM_TOL = 1e-12
DENSITY_TOL = 1e-10
RANK_TOL = 1e-10


def _check_dims(dims):
    dims = tuple(int(d) for d in dims)
    if len(dims) < 1:
        raise DimensionMismatch("need at least one party")
    if any(d < 2 for d in dims):
        raise DimensionMismatch(f"party dimensions must be >= 2, got {dims}")
    return dims


@dataclass(frozen=True, eq=False)
class PureState:
    dims: tuple
    amplitudes: np.ndarray

    def __post_init__(self):
        dims = _check_dims(self.dims)
        amps = as_vector(self.amplitudes, "amplitudes").copy()
        if amps.size != int(np.prod(dims)):
            raise DimensionMismatch(f"{amps.size} amplitudes do not fit dims {dims}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized: ||psi|| = {norm!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_vector(cls, dims, vector):
        """Build a state from an unnormalized vector."""
        v = as_vector(vector)
        return cls(dims, v / np.linalg.norm(v))

    @property
    def n_parties(self):
        return len(self.dims)

    def tensor(self):
        return self.amplitudes.reshape(self.dims)

    def density(self):
        return DensityMatrix(self.dims, np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    dims: tuple
    matrix: np.ndarray

    def __post_init__(self):
        dims = _check_dims(self.dims)
        m = as_matrix(self.matrix).copy()
        size = int(np.prod(dims))
        if m.shape != (size, size):
            raise DimensionMismatch(f"matrix of shape {m.shape} does not fit dims {dims}")
        if np.linalg.norm(m - m.conj().T) > DENSITY_TOL:
            raise ValueError("density matrix is not Hermitian")
        tr = np.trace(m).real
        if abs(tr - 1.0) > DENSITY_TOL:
            raise ValueError(f"density matrix has trace {tr!r}")
        if np.linalg.eigvalsh(m).min() < -DENSITY_TOL:
            raise ValueError("density matrix is not positive semidefinite")
        m.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrix", m)

    @property
    def n_parties(self):
        return len(self.dims)


@dataclass(frozen=True)
class Bipartition:
    """Ordered split of the parties into two nonempty groups."""

    left: tuple
    right: tuple

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(int(p) for p in self.left))
        object.__setattr__(self, "right", tuple(int(p) for p in self.right))
        if not self.left or not self.right:
            raise InvalidPartySet("both sides of a bipartition must be nonempty")
        both = self.left + self.right
        if len(set(both)) != len(both):
            raise InvalidPartySet(f"parties repeated in {self.label}")

    @classmethod
    def parse(cls, label):
        """``"12-3"`` -> ``Bipartition((1, 2), (3,))``. Single-digit parties only."""
        try:
            left, right = str(label).split("-")
            return cls(tuple(int(c) for c in left), tuple(int(c) for c in right))
        except ValueError as exc:
            raise InvalidPartySet(f"cannot parse split label {label!r}") from exc

    @property
    def label(self):
        return "".join(map(str, self.left)) + "-" + "".join(map(str, self.right))

    def validate(self, n):
        if sorted(self.left + self.right) != list(range(1, n + 1)):
            raise InvalidPartySet(f"split {self.label} is not a bipartition of {n} parties")
        return self


TRIPARTITE_SPLITS = tuple(Bipartition.parse(s) for s in ("12-3", "13-2", "23-1"))


def as_split(split):
    return split if isinstance(split, Bipartition) else Bipartition.parse(split)


def bipartition_matrix(state: PureState, split) -> np.ndarray:
    """Amplitude matrix with rows indexed by the left parties and columns by the right.

    Both multi-indices are lexicographic in the order the parties are listed
    in ``split``.
    """
    split = as_split(split).validate(state.n_parties)
    axes = [p - 1 for p in split.left + split.right]
    rows = int(np.prod([state.dims[p - 1] for p in split.left]))
    return np.transpose(state.tensor(), axes).reshape(rows, -1)


def _parties(traced, n):
    try:
        traced = {int(p) for p in traced}
    except TypeError:
        traced = {int(traced)}
    if not traced or not traced < set(range(1, n + 1)):
        raise InvalidPartySet(f"traced parties {sorted(traced)} must be a nonempty proper subset of 1..{n}")
    kept = tuple(p for p in range(1, n + 1) if p not in traced)
    return kept, tuple(sorted(traced))


def partial_trace(state, traced) -> DensityMatrix:
    """Reduced density matrix over the parties not listed in ``traced``.

    Pure inputs are reduced as ``A @ A^dag`` with ``A`` the (kept | traced)
    bipartition matrix; mixed inputs are contracted as tensors.
    """
    kept, traced = _parties(traced, state.n_parties)
    kept_dims = tuple(state.dims[p - 1] for p in kept)
    if isinstance(state, PureState):
        a = bipartition_matrix(state, Bipartition(kept, traced))
        return DensityMatrix(kept_dims, a @ a.conj().T)
    n = state.n_parties
    t = state.matrix.reshape(state.dims + state.dims)
    # move kept row axes, kept col axes, then traced (row, col) pairs
    order = [p - 1 for p in kept] + [n + p - 1 for p in kept]
    order += [p - 1 for p in traced] + [n + p - 1 for p in traced]
    t = np.transpose(t, order)
    dk = int(np.prod(kept_dims))
    dt = int(np.prod([state.dims[p - 1] for p in traced]))
    t = t.reshape(dk, dk, dt, dt)
    return DensityMatrix(kept_dims, np.einsum("abii->ab", t))


def apply_local_unitaries(state: PureState, unitaries: Sequence) -> PureState:
    """Apply ``U_1 (x) U_2 (x) ... (x) U_n`` to ``state``.

    Factors that are exactly the identity are skipped, so an all-identity
    product returns the input bit for bit.
    """
    if len(unitaries) != state.n_parties:
        raise DimensionMismatch(f"need {state.n_parties} unitaries, got {len(unitaries)}")
    t = state.tensor()
    touched = False
    for j, (d, u) in enumerate(zip(state.dims, unitaries)):
        u = check_unitary(u, party=j + 1)
        if u.shape[0] != d:
            raise DimensionMismatch(f"unitary for party {j + 1} is {u.shape[0]}x{u.shape[0]}, expected {d}")
        if np.array_equal(u, np.eye(d)):
            continue
        t = np.moveaxis(np.tensordot(u, t, axes=([1], [j])), 0, j)
        touched = True
    if not touched:
        return state
    v = t.reshape(-1)
    return PureState(state.dims, v / np.linalg.norm(v))


def schmidt_coefficients(state: PureState, split) -> np.ndarray:
    """Nonzero Schmidt coefficients across ``split``, descending.

    Square roots of the eigenvalues of the smaller Gram matrix of the
    bipartition matrix; eigenvalues at or below ``RANK_TOL`` are dropped.
    """
    a = bipartition_matrix(state, split)
    gram = a @ a.conj().T if a.shape[0] <= a.shape[1] else a.T @ a.conj()
    w = hermitian_eig(gram).eigenvalues
    return np.sqrt(w[w > RANK_TOL])


def basis_state(dims, index) -> PureState:
    dims = _check_dims(dims)
    v = np.zeros(int(np.prod(dims)), dtype=np.complex128)
    v[np.ravel_multi_index(tuple(index), dims)] = 1.0
    return PureState(dims, v)


def ghz_state(n=3, d=2) -> PureState:
    dims = (d,) * n
    v = np.zeros(d**n, dtype=np.complex128)
    for k in range(d):
        v[np.ravel_multi_index((k,) * n, dims)] = 1.0
    return PureState.from_vector(dims, v)


def w_state(n=3) -> PureState:
    dims = (2,) * n
    v = np.zeros(2**n, dtype=np.complex128)
    for k in range(n):
        v[1 << (n - 1 - k)] = 1.0
    return PureState.from_vector(dims, v)


def random_state(dims, seed) -> PureState:
    """Unitarily invariant random pure state (normalized complex Gaussian)."""
    dims = _check_dims(dims)
    rng = np.random.default_rng(int(seed) & ((1 << 64) - 1))
    size = int(np.prod(dims))
    v = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return PureState.from_vector(dims, v)


def kron_all(mats):
    return reduce(np.kron, mats)
