"""Command-line front end.

Exit codes: 0 success or equivalent, 1 distinct, 2 inconclusive,
3 input error, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import fileio
from .equivalence import counterexample_report, lift_witness, match_purification, search_lu
from .errors import FileFormatError, InputError, NumericalFailure, ReducedMismatch
from .invariants import COMPARE_TOL, GAP_TOL, Verdict, compare_fingerprints, fingerprint
from .linalg import haar_unitary
from .states import PureState, apply_local_unitaries, as_split, partial_trace, random_state, schmidt_coefficients

EXIT_OK, EXIT_DISTINCT, EXIT_INCONCLUSIVE, EXIT_INPUT, EXIT_NUMERIC = range(5)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _int_list(text):
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _seed(text):
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be a decimal integer, got {text!r}") from None
    if not -(1 << 63) <= value < (1 << 64):
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return value


def _fmt(x):
    return format(float(x), ".12g")


def _cvec(v):
    return "[" + ", ".join(_fmt(x) for x in v) + "]"


def _pure(path):
    state = fileio.state_from_doc(fileio.read(path))
    if not isinstance(state, PureState):
        raise FileFormatError(f"{path}: expected a pure state")
    return state


def _emit(args, doc):
    if getattr(args, "out", None):
        fileio.write(args.out, doc)


def cmd_random_state(args, out):
    state = random_state(args.dims, args.seed)
    _emit(args, fileio.state_to_doc(state))
    out.write(f"random pure state dims={tuple(state.dims)} seed={args.seed}\n")
    if not args.out:
        out.write(fileio.dumps(fileio.state_to_doc(state)))
    return EXIT_OK


def cmd_random_unitary(args, out):
    u = haar_unitary(args.dim, args.seed)
    _emit(args, fileio.matrix_to_doc(u, "unitary"))
    out.write(f"Haar unitary dim={args.dim} seed={args.seed}\n")
    if not args.out:
        out.write(fileio.dumps(fileio.matrix_to_doc(u, "unitary")))
    return EXIT_OK


def cmd_apply_lu(args, out):
    state = _pure(args.state)
    us = [fileio.matrix_from_doc(fileio.read(p)) for p in args.unitaries]
    result = apply_local_unitaries(state, us)
    _emit(args, fileio.state_to_doc(result))
    out.write(f"applied {len(us)} local unitaries to state dims={tuple(state.dims)}\n")
    return EXIT_OK


def cmd_reduce(args, out):
    state = fileio.state_from_doc(fileio.read(args.state))
    red = partial_trace(state, args.trace)
    _emit(args, fileio.state_to_doc(red))
    out.write(f"traced out parties {sorted(args.trace)}; reduced dims={tuple(red.dims)}\n")
    out.write(f"trace={_fmt(np.trace(red.matrix).real)}\n")
    return EXIT_OK


def cmd_schmidt(args, out):
    state = _pure(args.state)
    split = as_split(args.split)
    coeffs = schmidt_coefficients(state, split)
    _emit(args, {"kind": "schmidt", "split": split.label, "coefficients": [float(c) for c in coeffs]})
    out.write(f"split {split.label}: Schmidt rank {len(coeffs)}\n")
    out.write(f"coefficients {_cvec(coeffs)}\n")
    return EXIT_OK


def cmd_fingerprint(args, out):
    state = _pure(args.state)
    fp = fingerprint(state, args.split, gap_tol=args.tol)
    _emit(args, fileio.fingerprint_to_doc(fp))
    out.write(f"fingerprint split {fp.split} dims={tuple(fp.dims)} rank={fp.rank}\n")
    out.write(f"spectrum {_cvec(fp.spectrum)}\n")
    out.write(f"J {_cvec(fp.J)}\n")
    out.write(f"generic={fp.generic} canonical={fp.canonical}\n")
    return EXIT_OK


_VERDICT_EXIT = {
    Verdict.CONSISTENT_GENERIC: EXIT_OK,
    Verdict.DISTINCT: EXIT_DISTINCT,
    Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}


def cmd_compare(args, out):
    f1 = fileio.fingerprint_from_doc(fileio.read(args.a))
    f2 = fileio.fingerprint_from_doc(fileio.read(args.b))
    verdict = compare_fingerprints(f1, f2, args.tol)
    _emit(args, {"kind": "comparison", "split": f1.split, "verdict": verdict.value, "tol": args.tol})
    out.write(f"{verdict.value}\n")
    return _VERDICT_EXIT[verdict]


def cmd_match_purification(args, out):
    psi, psi_prime = _pure(args.psi), _pure(args.psi_prime)
    try:
        w = match_purification(psi, psi_prime, args.party)
    except ReducedMismatch as exc:
        out.write(f"reduced states differ: {exc}\n")
        return EXIT_DISTINCT
    _emit(args, fileio.matrix_to_doc(w, "unitary"))
    out.write(f"matched purifications on party {args.party}\n")
    return EXIT_OK


def _report_witness(w, out):
    out.write(f"fidelity {w.fidelity:.15f}\n")
    out.write(f"phase {_fmt(w.phase.real)}{w.phase.imag:+.12g}j\n")


def cmd_lift_witness(args, out):
    psi, psi_prime = _pure(args.psi), _pure(args.psi_prime)
    partial = [fileio.matrix_from_doc(fileio.read(p)) for p in args.witness]
    w = lift_witness(psi, psi_prime, args.party, partial)
    _emit(args, fileio.witness_to_doc(w))
    _report_witness(w, out)
    return EXIT_OK


def cmd_search_lu(args, out):
    psi, psi_prime = _pure(args.psi), _pure(args.psi_prime)
    w = search_lu(psi, psi_prime, args.budget, args.seed)
    _emit(args, fileio.witness_to_doc(w))
    _report_witness(w, out)
    if w.fidelity >= 1.0 - args.tol:
        return EXIT_OK
    out.write("no witness found within budget\n")
    return EXIT_INCONCLUSIVE


def cmd_counterexample(args, out):
    rep = counterexample_report()
    _emit(args, fileio.report_to_doc(rep))
    out.write(f"reduced residuals {_cvec(rep.reduced_residuals)}\n")
    out.write(f"spectrum rho1 {_cvec(rep.spectrum_1)}\n")
    out.write(f"spectrum rho2 {_cvec(rep.spectrum_2)}\n")
    out.write(f"ranks {rep.ranks[0]} and {rep.ranks[1]} (equal; spectra differ)\n")
    out.write(f"max spectral gap {_fmt(rep.max_spectral_gap)}\n")
    out.write(f"{rep.verdict.value}\n")
    return EXIT_OK


def build_parser():
    p = _Parser(prog="luequiv", description="Local-unitary equivalence of multipartite pure states.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=func)
        sp.add_argument("--out", help="write the machine-readable document here")
        return sp

    sp = add("random-state", cmd_random_state, "random pure state")
    sp.add_argument("--dims", type=_int_list, required=True)
    sp.add_argument("--seed", type=_seed, required=True)

    sp = add("random-unitary", cmd_random_unitary, "Haar-random unitary")
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--seed", type=_seed, required=True)

    sp = add("apply-lu", cmd_apply_lu, "apply one unitary per party")
    sp.add_argument("--state", required=True)
    sp.add_argument("--unitaries", nargs="+", required=True)

    sp = add("reduce", cmd_reduce, "partial trace")
    sp.add_argument("--state", required=True)
    sp.add_argument("--trace", type=_int_list, required=True, help="parties to trace out, e.g. 3 or 1,3")

    sp = add("schmidt", cmd_schmidt, "Schmidt coefficients across a split")
    sp.add_argument("--state", required=True)
    sp.add_argument("--split", required=True)

    sp = add("fingerprint", cmd_fingerprint, "invariant fingerprint of a tripartite state")
    sp.add_argument("--state", required=True)
    sp.add_argument("--split", required=True)
    sp.add_argument("--tol", type=float, default=GAP_TOL, help="spectral gap tolerance")

    sp = add("compare", cmd_compare, "compare two fingerprints")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--tol", type=float, default=COMPARE_TOL)

    sp = add("match-purification", cmd_match_purification, "unitary on one party relating two purifications")
    sp.add_argument("--psi", required=True)
    sp.add_argument("--psi-prime", required=True)
    sp.add_argument("--party", type=int, required=True)

    sp = add("lift-witness", cmd_lift_witness, "complete a partial LU witness")
    sp.add_argument("--psi", required=True)
    sp.add_argument("--psi-prime", required=True)
    sp.add_argument("--party", type=int, required=True)
    sp.add_argument("--witness", nargs="+", required=True)

    sp = add("search-lu", cmd_search_lu, "multi-start fidelity search")
    sp.add_argument("--psi", required=True)
    sp.add_argument("--psi-prime", required=True)
    sp.add_argument("--budget", type=int, default=32)
    sp.add_argument("--seed", type=_seed, default=0)
    sp.add_argument("--tol", type=float, default=COMPARE_TOL, help="accept when 1 - fidelity <= tol")

    add("counterexample", cmd_counterexample, "equal marginals, inequivalent mixed states")
    return p


def dispatch(argv, out=None, err=None):
    """Run one command; returns the exit code."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except _UsageError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_INPUT
    except NumericalFailure as exc:
        err.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERIC
    except (InputError, ValueError) as exc:
        err.write(f"input error: {exc}\n")
        return EXIT_INPUT


def main():
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
