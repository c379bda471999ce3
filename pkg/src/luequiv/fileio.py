"""Text documents for matrices, states, fingerprints and witnesses.

Documents are JSON objects. Every float is written in ``%.16e`` form
(17 significant digits), which reads back bit-exactly, and complex numbers
are ``[re, im]`` pairs in row-major order. Output is byte-stable: key order
is fixed by the writers below.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .equivalence import CounterexampleReport, LUWitness
from .errors import FileFormatError
from .invariants import InvariantFingerprint
from .states import DensityMatrix, PureState


def _num(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialise non-finite value {x!r}")
    return format(x, ".16e")


def _dump(obj, indent=0):
    pad = "  " * indent
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}  {json.dumps(k)}: {_dump(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if any(isinstance(v, dict) for v in obj):
            items = [pad + "  " + _dump(v, indent + 1) for v in obj]
            return "[\n" + ",\n".join(items) + "\n" + pad + "]"
        return "[" + ", ".join(_dump(v, indent + 1) for v in obj) + "]"
    return _num(obj)


def dumps(doc) -> str:
    return _dump(doc) + "\n"


def loads(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"not a valid document: {exc}") from exc
    if not isinstance(doc, dict) or "kind" not in doc:
        raise FileFormatError("document must be an object with a 'kind' field")
    return doc


def write(path, doc):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(doc))


def read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc}") from exc


def _pairs(values):
    return [[float(z.real), float(z.imag)] for z in np.asarray(values, dtype=np.complex128).ravel()]


def _complex(pairs, count, what):
    try:
        arr = np.array([complex(float(re), float(im)) for re, im in pairs], dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise FileFormatError(f"{what}: expected a list of [re, im] pairs") from exc
    if arr.size != count:
        raise FileFormatError(f"{what}: expected {count} entries, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise FileFormatError(f"{what}: non-finite entries")
    return arr


def _field(doc, key):
    try:
        return doc[key]
    except KeyError:
        raise FileFormatError(f"missing field {key!r} in {doc.get('kind')!r} document") from None


# matrices

def matrix_to_doc(m, kind="matrix"):
    m = np.asarray(m, dtype=np.complex128)
    return {"kind": kind, "rows": m.shape[0], "cols": m.shape[1], "entries": _pairs(m)}


def matrix_from_doc(doc):
    if doc.get("kind") not in ("matrix", "unitary"):
        raise FileFormatError(f"expected a matrix document, got kind {doc.get('kind')!r}")
    rows, cols = int(_field(doc, "rows")), int(_field(doc, "cols"))
    if rows < 1 or cols < 1:
        raise FileFormatError("rows and cols must be positive")
    return _complex(_field(doc, "entries"), rows * cols, "entries").reshape(rows, cols)


# states

def state_to_doc(state):
    if isinstance(state, PureState):
        return {"kind": "pure", "dims": list(state.dims), "amplitudes": _pairs(state.amplitudes)}
    return {"kind": "density", "dims": list(state.dims), "matrix": _pairs(state.matrix)}


def state_from_doc(doc):
    kind = doc.get("kind")
    dims = [int(d) for d in _field(doc, "dims")]
    size = int(np.prod(dims)) if dims else 0
    try:
        if kind == "pure":
            return PureState(dims, _complex(_field(doc, "amplitudes"), size, "amplitudes"))
        if kind == "density":
            m = _complex(_field(doc, "matrix"), size * size, "matrix").reshape(size, size)
            return DensityMatrix(dims, m)
    except FileFormatError:
        raise
    except ValueError as exc:
        raise FileFormatError(f"invalid {kind} state: {exc}") from exc
    raise FileFormatError(f"expected a state document, got kind {kind!r}")


# fingerprints

def fingerprint_to_doc(fp: InvariantFingerprint):
    return {
        "kind": "fingerprint",
        "split": fp.split,
        "dims": list(fp.dims),
        "rank": fp.rank,
        "padded_size": fp.padded_size,
        "spectrum": [float(x) for x in fp.spectrum],
        "J": [float(x) for x in fp.J],
        "Omega": [float(x) for x in fp.Omega.ravel()],
        "Theta": [float(x) for x in fp.Theta.ravel()],
        "X": _pairs(fp.X),
        "Y": _pairs(fp.Y),
        "generic": bool(fp.generic),
        "canonical": bool(fp.canonical),
        # infinite when the rank is 1
        "gap": None if math.isinf(fp.gap) else float(fp.gap),
    }


def fingerprint_from_doc(doc) -> InvariantFingerprint:
    if doc.get("kind") != "fingerprint":
        raise FileFormatError(f"expected a fingerprint document, got kind {doc.get('kind')!r}")
    n = int(_field(doc, "rank"))
    try:
        omega = np.array(_field(doc, "Omega"), dtype=float).reshape(n, n)
        theta = np.array(_field(doc, "Theta"), dtype=float).reshape(n, n)
        spectrum = np.array(_field(doc, "spectrum"), dtype=float)
        j = np.array(_field(doc, "J"), dtype=float)
    except ValueError as exc:
        raise FileFormatError(f"malformed fingerprint: {exc}") from exc
    if spectrum.shape != (n,):
        raise FileFormatError("spectrum length does not match rank")
    gap = doc.get("gap")
    return InvariantFingerprint(
        split=str(_field(doc, "split")),
        dims=tuple(int(d) for d in _field(doc, "dims")),
        spectrum=spectrum,
        J=j,
        Omega=omega,
        Theta=theta,
        padded_size=int(_field(doc, "padded_size")),
        X=_complex(_field(doc, "X"), n**3, "X").reshape(n, n, n),
        Y=_complex(_field(doc, "Y"), n**3, "Y").reshape(n, n, n),
        generic=bool(_field(doc, "generic")),
        canonical=bool(_field(doc, "canonical")),
        gap=math.inf if gap is None else float(gap),
    )


# witnesses

def witness_to_doc(w: LUWitness):
    return {
        "kind": "witness",
        "unitaries": [matrix_to_doc(u, "unitary") for u in w.unitaries],
        "fidelity": float(w.fidelity),
        "phase": [float(w.phase.real), float(w.phase.imag)],
    }


def witness_from_doc(doc) -> LUWitness:
    if doc.get("kind") != "witness":
        raise FileFormatError(f"expected a witness document, got kind {doc.get('kind')!r}")
    us = tuple(matrix_from_doc(m) for m in _field(doc, "unitaries"))
    re, im = _field(doc, "phase")
    return LUWitness(us, float(_field(doc, "fidelity")), complex(float(re), float(im)))


def report_to_doc(rep: CounterexampleReport):
    return {
        "kind": "counterexample",
        "reduced_residuals": list(rep.reduced_residuals),
        "spectrum_1": [float(x) for x in rep.spectrum_1],
        "spectrum_2": [float(x) for x in rep.spectrum_2],
        "ranks": list(rep.ranks),
        "max_spectral_gap": rep.max_spectral_gap,
        "verdict": rep.verdict.value,
    }
