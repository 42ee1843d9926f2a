"""Command-line entry point.

    dwf-extrema geometry --dim 4
    dwf-extrema mub --dim 8 --out mub8.json
    dwf-extrema census --dim 5 --workers 4 --format csv
    dwf-extrema extrema --dim 7
    dwf-extrema qrac --dim 2 --simulate 1000000 --seed 7
    dwf-extrema dwf --dim 3 --state maximally-mixed
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .census import HeavyRunError, census, extremal_eigenvalues, operator_count
from .dwf import QuantumNet, evaluate, line_probabilities, line_sums
from .field import FieldError, field_for_dimension, field_make
from .geometry import build_phase_space, verify_axioms
from .mub import MubError, default_mub, load_mub, mub_from_pauli_table, mub_prime, mub_to_json, verify_mub
from .pauli import enumerate_pauli_partitions
from .qrac import p_q_from_sum, simulate
from .reports import census_to_csv, census_to_dict, dwf_to_csv, load_state

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2

log = logging.getLogger("dwf_extrema")


class UsageError(Exception):
    pass


def _spec(args):
    modulus = [int(c) for c in args.modulus.split(",")] if args.modulus else None
    try:
        if args.p is not None:
            spec = field_make(args.p, args.n or 1, modulus)
        elif args.dim is not None:
            spec = field_for_dimension(args.dim, modulus)
        else:
            raise UsageError("give --dim or --p/--n")
    except FieldError as exc:
        raise UsageError(str(exc)) from exc
    return spec


def _mub(args, d: int):
    sel = args.mub
    try:
        if sel == "auto":
            return default_mub(d)
        if sel == "ivanovic":
            return mub_prime(d)
        if sel == "pauli-table":
            if args.partition is not None:
                parts = enumerate_pauli_partitions(2) if d == 4 else None
                if parts is None:
                    raise UsageError("--partition is only available for d=4")
                return mub_from_pauli_table(parts[args.partition])
            if d not in (2, 4, 8):
                raise UsageError(f"no Pauli table for d={d}")
            return default_mub(d)
        m = load_mub(sel)
    except (MubError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    if m.d != d:
        raise UsageError(f"MUB file has dimension {m.d}, expected {d}")
    return m


def _meta(args, spec, m) -> dict:
    return {
        "modulus": list(spec.modulus),
        "mub_source": m.source if args.mub == "auto" else args.mub,
        "partition": args.partition,
        "net": "canonical: vertical striation -> basis 0, slope m -> basis 1+idx(m), line id -> vector id",
        "version": __version__,
    }


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _progress(args):
    if not args.progress:
        return None

    def report(done, total):
        print(f"\r{done}/{total} blocks", end="" if done < total else "\n", file=sys.stderr, flush=True)

    return report


def _guard(d: int, args) -> None:
    if operator_count(d) > 10**8 and not args.heavy:
        raise HeavyRunError(d)


def cmd_geometry(args) -> int:
    spec = _spec(args)
    ps = build_phase_space(spec)
    rep = verify_axioms(ps)
    doc = {
        "dim": spec.d,
        "modulus": list(spec.modulus),
        "points": spec.d**2,
        "lines": len(ps.lines),
        "striations": len(ps.striations),
        "axioms": rep.as_dict(),
        "all_pass": rep.all_pass,
    }
    if args.lines:
        doc["line_points"] = [[sorted(ln.points) for ln in s.lines] for s in ps.striations]
    _emit(json.dumps(doc, indent=2), args.out)
    return EXIT_OK if rep.all_pass else EXIT_VALIDATION


def cmd_mub(args) -> int:
    spec = _spec(args)
    m = _mub(args, spec.d)
    rep = verify_mub(m)
    ok = rep.passes(args.tol)
    if args.out:
        Path(args.out).write_text(json.dumps(mub_to_json(m), indent=1))
    print(
        json.dumps(
            {
                "dim": m.d,
                "source": m.source,
                "orthonormality_deviation": rep.orthonormality_deviation,
                "unbiasedness_deviation": rep.unbiasedness_deviation,
                "tolerance": args.tol,
                "pass": ok,
            },
            indent=2,
        )
    )
    return EXIT_OK if ok else EXIT_VALIDATION


def cmd_census(args) -> int:
    spec = _spec(args)
    _guard(spec.d, args)
    m = _mub(args, spec.d)
    rep = census(m, workers=args.workers, progress=_progress(args), allow_heavy=args.heavy)
    if args.format == "csv":
        _emit(census_to_csv(rep, args.round), args.out)
    else:
        doc = census_to_dict(rep, args.round, _meta(args, spec, m))
        doc["p_q"] = p_q_from_sum(spec.d, rep.sum_lambda_max)
        _emit(json.dumps(doc, indent=2), args.out)
    return EXIT_OK


def cmd_extrema(args) -> int:
    spec = _spec(args)
    _guard(spec.d, args)
    m = _mub(args, spec.d)
    ext = extremal_eigenvalues(m, workers=args.workers, progress=_progress(args), allow_heavy=args.heavy)
    d = spec.d
    doc = {
        "dim": d,
        "W_max": ext.lambda_max / d,
        "W_min": ext.lambda_min / d,
        "lambda_max": ext.lambda_max,
        "lambda_min": ext.lambda_min,
        "argmax": list(ext.argmax),
        "argmin": list(ext.argmin),
        "p_q": p_q_from_sum(d, ext.sum_lambda_max),
        "total_operators": ext.total_operators,
        "elapsed_seconds": ext.elapsed_seconds,
        **_meta(args, spec, m),
    }
    if args.format == "csv":
        _emit(f"d,W_max,W_min\n{d},{doc['W_max']:.{args.round}f},{doc['W_min']:.{args.round}f}\n", args.out)
    else:
        _emit(json.dumps(doc, indent=2), args.out)
    return EXIT_OK


def cmd_qrac(args) -> int:
    spec = _spec(args)
    _guard(spec.d, args)
    m = _mub(args, spec.d)
    ext = extremal_eigenvalues(m, workers=args.workers, progress=_progress(args), allow_heavy=args.heavy)
    exact = p_q_from_sum(spec.d, ext.sum_lambda_max)
    doc = {"d": spec.d, "p_q_exact": exact, "p_q_empirical": None, "trials": None, "seed": None}
    if args.simulate:
        rep = simulate(m, args.simulate, args.seed, workers=args.workers, p_q_exact=exact)
        doc.update(rep.as_dict())
        sigma = float(np.sqrt(exact * (1 - exact) / args.simulate))
        doc["sigma"] = sigma
        doc["deviation_in_sigma"] = (rep.p_q_empirical - exact) / sigma
    doc["mub_source"] = m.source
    doc["version"] = __version__
    _emit(json.dumps(doc, indent=2), args.out)
    return EXIT_OK


def _state(args, m) -> np.ndarray:
    d = m.d
    if args.state == "maximally-mixed":
        return np.eye(d, dtype=complex) / d
    if args.state.startswith("basis:"):
        try:
            r, k = (int(x) for x in args.state[len("basis:") :].split(","))
            v = m.bases[r, k]
        except (ValueError, IndexError) as exc:
            raise UsageError(f"bad basis state {args.state!r}") from exc
        return np.outer(v, v.conj())
    try:
        return load_state(args.state)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read state {args.state!r}: {exc}") from exc


def cmd_dwf(args) -> int:
    spec = _spec(args)
    d = spec.d
    m = _mub(args, d)
    ps = build_phase_space(spec)
    if args.net == "canonical":
        net = QuantumNet.canonical(d)
    else:
        net = QuantumNet.random(d, np.random.default_rng(args.seed))
    rho = _state(args, m)
    if rho.shape != (d, d):
        raise UsageError(f"state has dimension {rho.shape[0]}, expected {d}")
    try:
        w = evaluate(rho, m, ps, net)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    err = float(np.max(np.abs(line_sums(w, ps) - line_probabilities(rho, m, ps, net))))
    _emit(dwf_to_csv(w, d), args.out)
    log.info("max line-sum error %.3g", err)
    return EXIT_OK if err <= 1e-9 else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("dimension")
    g.add_argument("--dim", type=int, help="Hilbert space dimension d (prime power)")
    g.add_argument("--p", type=int, help="field characteristic (alternative to --dim)")
    g.add_argument("--n", type=int, help="field extension degree")
    g.add_argument("--modulus", help="irreducible modulus, comma-separated coefficients low to high")
    common.add_argument(
        "--mub", default="auto", help="auto | ivanovic | pauli-table | path to a MUB JSON file (default: auto)"
    )
    common.add_argument("--partition", type=int, choices=range(6), help="d=4 only: which Pauli partition (0-5)")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--round", type=int, default=5, help="decimals for displayed spectra (default: 5)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--heavy", action="store_true", help="allow scans above 10^8 operators (d=8)")
    common.add_argument("--progress", action="store_true", help="print scan progress to stderr")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="dwf-extrema", description=__doc__.splitlines()[0] if __doc__ else None)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("geometry", parents=[common], help="build the phase space and check incidence axioms")
    p.add_argument("--lines", action="store_true", help="include every line's point indices")
    p.set_defaults(func=cmd_geometry)

    p = sub.add_parser("mub", parents=[common], help="construct and verify a MUB set")
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_mub)

    p = sub.add_parser("census", parents=[common], help="spectrum classes of all point operators")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("extrema", parents=[common], help="extremal Wigner function values")
    p.set_defaults(func=cmd_extrema)

    p = sub.add_parser("qrac", parents=[common], help="random access code success rate")
    p.add_argument("--simulate", type=int, metavar="TRIALS", help="also run a Monte Carlo simulation")
    p.set_defaults(func=cmd_qrac)

    p = sub.add_parser("dwf", parents=[common], help="Wigner function of a state as a d x d CSV grid")
    p.add_argument("--state", required=True, help="maximally-mixed | basis:R,K | path to a state JSON file")
    p.add_argument("--net", choices=("canonical", "random"), default="canonical")
    p.set_defaults(func=cmd_dwf)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.workers < 1:
        parser.error("--workers must be >= 1")
    if getattr(args, "simulate", None) is not None and args.simulate < 1:
        parser.error("--simulate needs at least one trial")
    try:
        return args.func(args)
    except HeavyRunError as exc:
        print(f"error: refusing to scan {exc.operators:,} operators at d={exc.d} without --heavy", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
