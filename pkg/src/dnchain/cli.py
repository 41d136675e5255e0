"""Command-line front end: ``dnchain <command> [flags]``.

Exit codes: 0 on success, 1 when a verification fails, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

import numpy as np

from . import acceptance, alcove, dunkl, qseries
from .eigen import spectral_qpoly, sym_eigenvalues
from .errors import DiagonalMismatch, DnChainError, InvalidParams, TriangularityViolation
from .lattice import bc_sites, dn_sites
from .spinops import SpinConfig, build_dn_chain, impurity_defect

COMMANDS = ("sites", "chain-spectrum", "partition", "dyn-series", "scalar-series",
            "dunkl-verify", "geometry", "impurity", "density", "verify")
IMPURITY_TS = (1e-2, 1e-3, 1e-4, 1e-5, 1e-6)


class VerificationFailed(Exception):
    def __init__(self, result):
        super().__init__("verification failed")
        self.result = result


def _rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational literal: {text!r}") from exc


def _epsilon(text):
    v = int(text)
    if v not in (1, -1):
        raise argparse.ArgumentTypeError("epsilon must be 1 or -1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dnchain", description="D_N Haldane-Shastry chain toolkit")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("suite", nargs="?", choices=("all", "fast"),
                   help="acceptance suite for the verify command")
    p.add_argument("--n", type=int, default=4, help="number of sites (default 4)")
    p.add_argument("--m", type=int, default=2, help="internal spin dimension (default 2)")
    p.add_argument("--a", type=_rational, default=None, help="coupling as a rational, e.g. 5/2")
    p.add_argument("--epsilon", type=_epsilon, default=1)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--beta-prime", type=float, default=None)
    p.add_argument("--qmax", type=int, default=40, help="series cutoff exponent")
    p.add_argument("--bound", type=int, default=4, help="Dunkl truncation max |nu_i|")
    p.add_argument("--samples", type=int, default=10**4, help="Monte Carlo samples for geometry")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--format", choices=("json", "csv"), default=None)
    p.add_argument("--out", default="-", help="output path, '-' for standard output")
    p.add_argument("--keep-going", action="store_true",
                   help="verify: run every criterion instead of stopping at the first failure")
    return p


def _table(columns, rows, **extra):
    return dict(extra, columns=list(columns), rows=[list(r) for r in rows])


def cmd_sites(args):
    if args.beta is None and args.beta_prime is None:
        s = dn_sites(args.n)
        rows = [(i + 1, float(t), float(x)) for i, (t, x) in enumerate(zip(s.theta, s.xi))]
        return _table(("i", "theta", "xi"), rows, kind="D", N=s.N, residual=s.residual)
    beta = args.beta if args.beta is not None else args.beta_prime
    beta_p = args.beta_prime if args.beta_prime is not None else beta
    s = bc_sites(args.n, beta, beta_p)
    rows = [(i + 1, float(t), float(z)) for i, (t, z) in enumerate(zip(s.theta, s.zeta))]
    return _table(("i", "theta", "zeta"), rows, kind="BC", N=s.N, beta=s.beta,
                  beta_prime=s.beta_prime, residual=s.residual)


def cmd_chain_spectrum(args):
    H = build_dn_chain(dn_sites(args.n), SpinConfig(args.m, args.n))
    spec = sym_eigenvalues(H, tol=args.tol)
    poly = spectral_qpoly(spec)
    expected = qseries.chain_partition(args.n, args.m)
    result = {"N": args.n, "m": args.m, "spectrum": [float(v) for v in spec.values],
              "poly": poly.to_json(), "matches_partition": poly == expected}
    if poly != expected:
        raise VerificationFailed(result)
    return result


def cmd_partition(args):
    return {"poly": qseries.chain_partition(args.n, args.m).to_json()}


def cmd_dyn_series(args):
    return {"N": args.n, "m": args.m, "cutoff": args.qmax,
            "series": qseries.dyn_partition_series(args.n, args.m, args.qmax).to_json()}


def cmd_scalar_series(args):
    return {"N": args.n, "cutoff": args.qmax,
            "series": qseries.scalar_partition_series(args.n, args.qmax).to_json()}


def cmd_dunkl_verify(args):
    blocks = []
    for delta in (0, 1):
        try:
            mat = dunkl.hprime_matrix(args.bound, delta, args.n)
        except (TriangularityViolation, DiagonalMismatch) as exc:
            raise VerificationFailed({"N": args.n, "delta": delta, "error": type(exc).__name__,
                                      "message": str(exc)}) from exc
        blocks.append({"delta": delta, "basis": len(mat.basis), "entries": len(mat.entries),
                       "triangular": True, "diagonals_match": True})
    result = {"N": args.n, "bound": args.bound, "blocks": blocks}
    if args.a is not None:
        worst = max(dunkl.collocation_check(k, nu, trials=5, seed=args.seed, a=args.a)
                    for k in range(1, args.n + 1)
                    for nu in [(0,) * args.n, (2,) + (0,) * (args.n - 1), (-2,) + (0,) * (args.n - 1)])
        result["collocation"] = {"a": str(args.a), "max_error": worst}
    return result


def cmd_geometry(args):
    rep = alcove.tiling_check(args.n, args.samples, seed=args.seed)
    rng = np.random.default_rng(args.seed)
    mismatches = 0
    points = alcove.random_point_in_c(args.n, rng, min(args.samples, 200))
    for x in points:
        _, a = alcove.reduce_to_alcove(x)
        hits = alcove.reduce_exhaustive(x)
        mismatches += len(hits) != 1 or float(np.max(np.abs(hits[0][1] - a))) > 1e-13
    periodic = {}
    for nu in [(2,) + (0,) * (args.n - 1), (1,) * args.n, (1,) + (0,) * (args.n - 1)]:
        r = alcove.periodic_exponent(nu, seed=args.seed)
        periodic[",".join(map(str, nu))] = {"periodic": r.periodic, "witness": r.witness}
    result = {"N": args.n, "tiling": {"samples": rep.samples, "interior": rep.interior,
                                       "boundary": rep.boundary, "failures": rep.failures},
              "reduction_mismatches": int(mismatches), "periodicity": periodic}
    if args.n == 3:
        poly = alcove.rhombic_dodecahedron()
        result["rhombic_dodecahedron"] = {"vertices": poly.vertices.tolist(), "faces": poly.faces}
    if rep.failures or mismatches:
        raise VerificationFailed(result)
    return result


def cmd_impurity(args):
    cfg = SpinConfig(args.m, args.n)
    rows = [(t, impurity_defect(args.n, cfg, args.epsilon, t),
             impurity_defect(args.n, cfg, args.epsilon, t, corrected=False)) for t in IMPURITY_TS]
    return _table(("t", "defect", "uncorrected"), rows, N=args.n, m=args.m, epsilon=args.epsilon)


def cmd_density(args):
    z = qseries.chain_partition(args.n, args.m)
    return _table(("energy", "count"), z.items(), N=args.n, m=args.m)


def cmd_verify(args):
    suite = args.suite or "fast"
    if suite == "fast":
        results = acceptance.run_fast(args.n, args.m, args.seed)
    else:
        results = acceptance.run_all(stop_on_failure=not args.keep_going)
    for r in results:
        print(r.line(), file=sys.stderr)
    out = {"suite": suite, "passed": all(r.passed for r in results),
           "criteria": [r.to_json() for r in results]}
    if not out["passed"]:
        raise VerificationFailed(out)
    return out


HANDLERS = {
    "sites": cmd_sites, "chain-spectrum": cmd_chain_spectrum, "partition": cmd_partition,
    "dyn-series": cmd_dyn_series, "scalar-series": cmd_scalar_series,
    "dunkl-verify": cmd_dunkl_verify, "geometry": cmd_geometry, "impurity": cmd_impurity,
    "density": cmd_density, "verify": cmd_verify,
}


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, int) and not isinstance(obj, bool) and abs(obj) >= 2**53:
        return str(obj)
    return obj


def render(result: dict, fmt: str) -> str:
    if "spectrum" in result and not result["spectrum"]:
        raise InvalidParams("refusing to emit an empty spectrum")
    if fmt == "json":
        return json.dumps(_jsonable(result), indent=None) + "\n"
    if "columns" not in result:
        coeffs = result.get("poly", result.get("series"))
        if coeffs is None:
            raise InvalidParams("this result has no tabular form; use --format json")
        result = _table(("exponent", "coefficient"), coeffs.items())
    if not result["rows"]:
        raise InvalidParams("refusing to emit an empty table")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(result["columns"])
    w.writerows(result["rows"])
    return buf.getvalue()


def emit(result: dict, fmt: str = "json", out: str = "-") -> None:
    text = render(result, fmt)
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.suite is not None and args.command != "verify":
        print(f"dnchain: unexpected argument {args.suite!r}", file=sys.stderr)
        return 2
    fmt = args.format or ("csv" if args.command == "density" else "json")
    try:
        result = HANDLERS[args.command](args)
    except VerificationFailed as exc:
        emit(exc.result, "json", args.out)
        return 1
    except (InvalidParams, ValueError) as exc:
        print(f"dnchain: {exc}", file=sys.stderr)
        return 2
    except DnChainError as exc:
        emit({"error": type(exc).__name__, "message": str(exc)}, "json", args.out)
        return 1
    try:
        emit(result, fmt, args.out)
    except InvalidParams as exc:
        print(f"dnchain: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"dnchain: cannot write output: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
