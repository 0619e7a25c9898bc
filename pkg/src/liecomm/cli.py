"""Command-line front end: JSON reports on stdout, diagnostics on stderr.

Exit codes: 0 success, 2 precondition/usage errors, 3 invariant breach (a
cross-check between two independently computed quantities failed).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__, alcove, geom, invariants, verify, weyl, wps
from .alcove import AlcoveMembershipError, EmptyFaceError
from .geom import MeshError
from .homology import FinAbGroup
from .invariants import InvariantBreachError
from .rootdata import LieTypeError, build_root_datum, dynkin_index
from .weyl import ReductionError, WeylCapError

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_BREACH = 3

_PRECONDITION_ERRORS = (
    LieTypeError,
    AlcoveMembershipError,
    EmptyFaceError,
    WeylCapError,
    ReductionError,
    MeshError,
    ValueError,
)


def _jsonable(value):
    if isinstance(value, float):
        return float(f"{value:.12e}")
    if isinstance(value, FinAbGroup):
        return {"free_rank": value.free_rank, "torsion": list(value.torsion), "name": str(value)}
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _emit(payload: dict) -> None:
    payload = {"schema_version": SCHEMA_VERSION, **payload}
    sys.stdout.write(json.dumps(_jsonable(payload), sort_keys=True, separators=(",", ":")))
    sys.stdout.write("\n")


def _cmd_invariants(args) -> int:
    datum = build_root_datum(args.type)
    report = invariants.pi2_hom_pairs(datum.lie_type)
    ecom, bcom = invariants.pi4_commutative_classifying(datum.lie_type)
    _emit(
        {
            "command": "invariants",
            "type": datum.lie_type.name,
            "pi2_hom": str(report.group),
            "pi2_rep": "Z",
            "quotient_degree": report.quotient_degree,
            "dynkin_index": dynkin_index(datum),
            "prime_breakdown": {str(p): c for p, c in report.prime_breakdown},
            "coroot_integers": list(datum.coroot_integers),
            "pi4_ecom": str(ecom),
            "pi4_bcom": str(bcom),
            "provenance": report.provenance,
            "root_datum": datum.to_json_dict(),
        }
    )
    return EXIT_OK


def _cmd_poincare(args) -> int:
    datum = build_root_datum(args.type)
    group = weyl.generate(
        datum, element_cap=args.element_cap, cache_dir=_cache_dir(args)
    )
    coeffs = weyl.molien_poincare(group, args.n, args.deg)
    _emit(
        {
            "command": "poincare",
            "type": datum.lie_type.name,
            "n": args.n,
            "max_deg": args.deg,
            "coefficients": coeffs,
        }
    )
    return EXIT_OK


def _cmd_cells(args) -> int:
    datum = build_root_datum(args.type)
    if datum.rank > args.rank_cap:
        raise LieTypeError(
            f"census for rank {datum.rank} exceeds --rank-cap {args.rank_cap}"
        )
    group = weyl.generate(datum, cache_dir=_cache_dir(args))
    geometry = alcove.alcove_geometry(datum)
    counts = weyl.cell_census(group, geometry, args.k)
    euler = weyl.euler_char_rep(group, args.k)
    _emit(
        {
            "command": "cells",
            "type": datum.lie_type.name,
            "k": args.k,
            "counts_by_dim": counts,
            "euler_characteristic": euler,
        }
    )
    return EXIT_OK


def _cmd_wps_degree(args) -> int:
    weights = tuple(int(w) for w in args.weights.split(","))
    payload = {
        "command": "wps-degree",
        "weights": list(weights),
        "k": args.k,
        "projection_degree": wps.proj_degree(weights, args.k),
    }
    if args.subset:
        subset = tuple(int(i) for i in args.subset.split(","))
        payload["subset"] = list(subset)
        payload["inclusion_degree"] = wps.inclusion_degree(weights, subset, args.k)
    _emit(payload)
    return EXIT_OK


def _cmd_spin_stability(args) -> int:
    if args.m is not None:
        report = invariants.spin_pi2_stability(args.m)
        _emit(
            {
                "command": "spin-stability",
                "m": args.m,
                "stable": report.stable,
                "route": report.route,
                "details": {k: v for k, v in report.details},
            }
        )
        return EXIT_OK
    if args.ell is None or args.k is None:
        raise ValueError("provide either --m, or --ell with --k (and --parity)")
    report = wps.spin_stability_report(args.ell, args.parity, args.k)
    _emit(
        {
            "command": "spin-stability",
            "ell": args.ell,
            "parity": args.parity,
            "k": args.k,
            **report,
        }
    )
    return EXIT_OK


def _cmd_beta_check(args) -> int:
    report = geom.beta_check(grid=args.grid)
    ok = (
        report["seam_residual"] < args.tol
        and report["max_commutator"] < args.tol
        and report["degree"] in (1, -1)
        and report["degree_residue"] < 1e-3
    )
    _emit({"command": "beta-check", "passed": ok, **report})
    return EXIT_OK if ok else EXIT_BREACH


def _cmd_cocycle_check(args) -> int:
    report = geom.cocycle_check(samples=args.samples)
    ok = (
        report["cocycle_residual"] < args.tol
        and report["pairwise_commutator"] < args.tol
        and report["clutching_residual"] < args.tol
        and report["min_extension_denominator"] > 0.1
    )
    _emit({"command": "cocycle-check", "passed": ok, **report})
    return EXIT_OK if ok else EXIT_BREACH


def _cmd_verify(args) -> int:
    if args.cache_dir:
        os.environ[weyl.CACHE_ENV_VAR] = args.cache_dir
    results = verify.run_all(
        rank_cap=args.rank_cap, grid=args.grid, samples=args.samples
    )
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(
            f"[{status}] {res.index:2d} {res.name}: {res.detail} ({res.seconds:.1f}s)",
            file=sys.stderr,
        )
    _emit(
        {
            "command": "verify",
            "passed": all(r.passed for r in results),
            "criteria": [
                {
                    "index": r.index,
                    "name": r.name,
                    "passed": r.passed,
                    "detail": r.detail,
                    "seconds": r.seconds,
                }
                for r in results
            ],
        }
    )
    return EXIT_OK if all(r.passed for r in results) else EXIT_BREACH


def _cache_dir(args) -> Path | None:
    return Path(args.cache_dir) if args.cache_dir else None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liecomm",
        description="Invariants of spaces of commuting elements in compact Lie groups",
    )
    parser.add_argument("--version", action="version", version=f"liecomm {__version__}")
    parser.add_argument(
        "--json",
        action="store_true",
        help="emit JSON on stdout (the default; accepted for explicit scripting)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="pi_2 report and quotient degree for a simple type")
    p.add_argument("type", help="Lie type, e.g. E8, G2, SU(5), Spin(9), Sp(3)")
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("poincare", help="Poincare series coefficients of the n-tuple space")
    p.add_argument("type")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--deg", type=int, default=6, help="truncation degree")
    p.add_argument("--element-cap", type=int, default=weyl.DEFAULT_ELEMENT_CAP)
    p.add_argument("--cache-dir", default=None)
    p.set_defaults(func=_cmd_poincare)

    p = sub.add_parser("cells", help="cell census of the k-fold torus quotient")
    p.add_argument("type")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--rank-cap", type=int, default=4)
    p.add_argument("--cache-dir", default=None)
    p.set_defaults(func=_cmd_cells)

    p = sub.add_parser("wps-degree", help="weighted projective space degrees")
    p.add_argument("--weights", required=True, help="comma separated, e.g. 1,2,3")
    p.add_argument("--k", type=int, default=1, help="half the homology degree")
    p.add_argument("--subset", default=None, help="coordinate subset for the inclusion degree")
    p.set_defaults(func=_cmd_wps_degree)

    p = sub.add_parser("spin-stability", help="spin stabilization degrees")
    p.add_argument("--m", type=int, default=None, help="pi_2 stability verdict for m -> m+1")
    p.add_argument("--ell", type=int, default=None)
    p.add_argument("--parity", choices=("even", "odd"), default="even")
    p.add_argument("--k", type=int, default=None, help="homology degree")
    p.set_defaults(func=_cmd_spin_stability)

    p = sub.add_parser("beta-check", help="residuals of the prism-boundary generator")
    p.add_argument("--grid", type=int, default=50)
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=_cmd_beta_check)

    p = sub.add_parser("cocycle-check", help="residuals of the 4-sphere commutative cocycle")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=_cmd_cocycle_check)

    p = sub.add_parser("verify", help="run the full acceptance suite")
    p.add_argument("--rank-cap", type=int, default=6)
    p.add_argument("--grid", type=int, default=50)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--cache-dir", default=None)
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvariantBreachError as exc:
        print(f"liecomm: invariant breach: {exc}", file=sys.stderr)
        return EXIT_BREACH
    except _PRECONDITION_ERRORS as exc:
        print(f"liecomm: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
