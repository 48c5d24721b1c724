"""Command-line entry point.

Subcommands
-----------
  validate        check a multiplier, group table, or representation bundle
  classify        classify the orbit of a vector under a representation
  commutant       commutant / generated algebra / center dimensions
  certify-pair    commuting + dual-pair certification for a pair spec
  verify-duality  all duality clauses for one vector under a pair
  sweep           seeded random + adversarial duality sweep over a pair
  dilate          complete a frame-sequence vector to a complete frame vector
  gabor           lattice info, adjoint lattice, optional window analysis

Reports are JSON (CSV only for sweep summaries) and embed the tool version,
the effective configuration, the seed, and all tolerances, so any run can be
reproduced byte for byte.  Exit codes: 0 all checks pass, 1 a mathematical
inconsistency or counterexample was found, 2 invalid input or configuration.

Examples:
    framedual sweep --pair regular --group Z12 --multiplier trivial --n 200 --seed 7
    framedual classify --rep gabor --lattice 4,1,2 --window 1,0,1,0
    framedual validate --multiplier heisenberg --N 4
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

import numpy as np

from . import __version__
from . import serialize
from .duality import certify_dual_pair, duality_sweep, verify_duality
from .errors import (
    ConstructionFailureError,
    FrameDualError,
    InvalidParameterError,
    InvalidPairError,
    NoWitnessError,
    NotProjectiveError,
    ParameterizationError,
    RouteDisagreementError,
)
from .frames import FLAG_TOL, ROUTE_TOL, classify, dilate_to_complete
from .gabor import adjoint_lattice, zak_transform
from .groups import validate_multiplier
from .linalg import RANK_TOL
from .reps import verify_rep
from .vonneumann import center, commutant, double_commutant

EXIT_OK = 0
EXIT_INCONSISTENT = 1
EXIT_USAGE = 2


def _parse_vector(text: str) -> np.ndarray:
    """Inline comma list ("1,0,1,0" with python complex literals allowed) or
    @file.json holding a vector document."""
    text = text.strip()
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            return serialize.vector_from_json(json.load(fh))
    try:
        return np.array([complex(tok.strip().replace(" ", ""))
                         for tok in text.split(",") if tok.strip()], dtype=complex)
    except ValueError as exc:
        raise InvalidParameterError(f"cannot parse vector {text!r}: {exc}") from exc


def _maybe_load_json_arg(text: str):
    """Pass "@file.json" through as parsed JSON, anything else unchanged."""
    if isinstance(text, str) and text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            return json.load(fh)
    return text


def _rep_spec_from_args(args) -> dict:
    spec: dict = {"kind": args.rep}
    if args.rep == "regular":
        spec["group"] = _maybe_load_json_arg(args.group)
        spec["multiplier"] = _maybe_load_json_arg(args.multiplier)
        spec["side"] = args.side
    elif args.rep == "gabor":
        if not args.lattice:
            raise InvalidParameterError("--lattice N,a,b is required for gabor reps")
        spec["lattice"] = args.lattice
    elif args.rep == "character":
        if args.N is None or not args.freqs:
            raise InvalidParameterError("character reps need --N and --freqs")
        spec["n"] = args.N
        spec["freqs"] = [int(k) for k in args.freqs.split(",")]
    elif args.rep == "custom":
        if not args.rep_json:
            raise InvalidParameterError("custom reps need --rep-json FILE")
        spec["rep"] = _maybe_load_json_arg("@" + args.rep_json)
    return spec


def _pair_spec_from_args(args) -> dict:
    spec: dict = {"kind": args.pair}
    if args.pair == "regular":
        spec["group"] = _maybe_load_json_arg(args.group)
        spec["multiplier"] = _maybe_load_json_arg(args.multiplier)
    elif args.pair == "gabor":
        if not args.lattice:
            raise InvalidParameterError("--lattice N,a,b is required for gabor pairs")
        spec["lattice"] = args.lattice
    elif args.pair == "custom":
        if not (args.pi_json and args.sigma_json):
            raise InvalidParameterError("custom pairs need --pi-json and --sigma-json")
        spec["pi"] = _maybe_load_json_arg("@" + args.pi_json)
        spec["sigma"] = _maybe_load_json_arg("@" + args.sigma_json)
    return spec


def _tolerances(args) -> dict:
    return {
        "rank_tol": args.rank_tol,
        "flag_tol": args.flag_tol,
        "pair_tol": args.pair_tol,
        "route_tol": args.route_tol,
    }


def _emit(args, command: str, result: dict, csv_rows=None) -> None:
    """Write the report.  Volatile data (wall time) goes to stderr only, so
    reports for one configuration are byte-identical across runs."""
    report = {
        "meta": {
            "tool": "framedual",
            "version": __version__,
            "command": command,
            "seed": getattr(args, "seed", None),
            "tolerances": _tolerances(args),
            # jobs and output are execution details: the report content must
            # not depend on parallelism or destination
            "config": {k: v for k, v in sorted(vars(args).items())
                       if k not in ("func", "output", "jobs") and v is not None},
        },
        "result": result,
    }
    if args.format == "csv":
        if csv_rows is None:
            raise InvalidParameterError("csv format is only available for sweep reports")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(csv_rows)
        text = buf.getvalue()
    else:
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_validate(args) -> int:
    if args.group is not None:
        group_spec = args.group
    elif args.N is not None:
        group_spec = (f"Z{args.N}xZ{args.N}" if args.multiplier == "heisenberg"
                      else f"Z{args.N}")
    else:
        group_spec = "Z4"
    if args.rep_json:
        rep = serialize.rep_from_json(_maybe_load_json_arg("@" + args.rep_json))
        report = verify_rep(rep, tol=args.rep_tol)
        _emit(args, "validate", {"representation": serialize.rep_verification_to_json(report)})
        return EXIT_OK if report.passed else EXIT_INCONSISTENT
    group = serialize.parse_group_spec(_maybe_load_json_arg(group_spec))
    result: dict = {"group": {"label": group.label, "order": group.order}}
    code = EXIT_OK
    if args.multiplier:
        mu = serialize.parse_multiplier_spec(group, _maybe_load_json_arg(args.multiplier))
        report = validate_multiplier(mu, tol=args.unit_tol)
        result["multiplier"] = serialize.multiplier_validation_to_json(report)
        if not report.passed:
            code = EXIT_INCONSISTENT
    _emit(args, "validate", result)
    return code


def _cmd_classify(args) -> int:
    rep = serialize.resolve_rep_spec(_rep_spec_from_args(args))
    vec = _parse_vector(args.vector)
    cls = classify(rep, vec, rank_tol=args.rank_tol, flag_tol=args.flag_tol)
    _emit(args, "classify", {
        "representation": rep.label,
        "classification": serialize.classification_to_json(cls),
    })
    return EXIT_OK


def _cmd_commutant(args) -> int:
    rep = serialize.resolve_rep_spec(_rep_spec_from_args(args))
    comm = commutant(rep.matrices, rank_tol=args.rank_tol)
    alg = double_commutant(rep.matrices, rank_tol=args.rank_tol)
    ctr = center(alg, rank_tol=args.rank_tol, check_algebra=False)
    _emit(args, "commutant", {
        "representation": rep.label,
        "dim": rep.dim,
        "commutant_dim": comm.dim,
        "algebra_dim": alg.dim,
        "center_dim": ctr.dim,
        "is_factor": ctr.dim == 1,
    })
    return EXIT_OK


def _cmd_certify_pair(args) -> int:
    pi, sigma, label = serialize.resolve_pair_spec(_pair_spec_from_args(args))
    report = certify_dual_pair(pi, sigma, seed=args.seed, n_samples=args.n,
                               tol=args.pair_tol, rank_tol=args.rank_tol,
                               flag_tol=args.flag_tol)
    _emit(args, "certify-pair", {
        "pair": label,
        "report": serialize.dual_pair_report_to_json(report),
    })
    return EXIT_OK if report.commuting.is_pair else EXIT_INCONSISTENT


def _cmd_verify_duality(args) -> int:
    pi, sigma, label = serialize.resolve_pair_spec(_pair_spec_from_args(args))
    vec = _parse_vector(args.vector)
    verdict = verify_duality(pi, sigma, vec, rank_tol=args.rank_tol,
                             flag_tol=args.flag_tol, pair_tol=args.pair_tol)
    _emit(args, "verify-duality", {
        "pair": label,
        "verdict": serialize.verdict_to_json(verdict),
    })
    return EXIT_OK if verdict.theorem_consistent else EXIT_INCONSISTENT


def _cmd_sweep(args) -> int:
    pi, sigma, label = serialize.resolve_pair_spec(_pair_spec_from_args(args))
    report = duality_sweep(pi, sigma, n_vectors=args.n, seed=args.seed,
                           rank_tol=args.rank_tol, flag_tol=args.flag_tol,
                           pair_tol=args.pair_tol, jobs=args.jobs, label=label)
    _emit(args, "sweep", serialize.sweep_report_to_json(report),
          csv_rows=serialize.sweep_report_to_csv_rows(report))
    return EXIT_OK if report.n_inconsistent == 0 else EXIT_INCONSISTENT


def _cmd_dilate(args) -> int:
    rep = serialize.resolve_rep_spec(_rep_spec_from_args(args))
    vec = _parse_vector(args.vector)
    result = dilate_to_complete(rep, vec, mode=args.mode, seed=args.seed,
                                max_tries=args.max_tries, rank_tol=args.rank_tol,
                                flag_tol=args.flag_tol, route_tol=args.route_tol)
    _emit(args, "dilate", {
        "representation": rep.label,
        "method": "randomized search, certified per return",
        "dilation": serialize.dilation_to_json(result),
    })
    return EXIT_OK


def _cmd_gabor(args) -> int:
    lattice = serialize.parse_lattice_spec(args.lattice)
    adj = adjoint_lattice(lattice)
    result: dict = {
        "lattice": [lattice.n, lattice.a, lattice.b],
        "adjoint": [adj.n, adj.a, adj.b],
        "group_order": (lattice.n // lattice.a) * (lattice.n // lattice.b),
        "adjoint_group_order": lattice.a * lattice.b,
    }
    if args.window:
        window = _parse_vector(args.window)
        pi, sigma, label = serialize.resolve_pair_spec(
            {"kind": "gabor", "lattice": [lattice.n, lattice.a, lattice.b]})
        verdict = verify_duality(pi, sigma, window, rank_tol=args.rank_tol,
                                 flag_tol=args.flag_tol, pair_tol=args.pair_tol)
        result["pair"] = label
        result["window_verdict"] = serialize.verdict_to_json(verdict)
        if args.zak:
            result["zak"] = serialize.matrix_to_json(zak_transform(window, lattice.a))
    code = EXIT_OK
    if args.window and not result["window_verdict"]["theorem_consistent"]:
        code = EXIT_INCONSISTENT
    _emit(args, "gabor", result)
    return code


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", help="write the report to this path")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--rank-tol", type=float, default=RANK_TOL, dest="rank_tol")
    parser.add_argument("--flag-tol", type=float, default=FLAG_TOL, dest="flag_tol")
    parser.add_argument("--pair-tol", type=float, default=1e-8, dest="pair_tol")
    parser.add_argument("--route-tol", type=float, default=ROUTE_TOL, dest="route_tol")
    parser.add_argument("--config", help="JSON file whose keys override these flags")


def _add_rep_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--rep", choices=("regular", "gabor", "character", "custom"),
                        default="regular")
    parser.add_argument("--group", default="Z4",
                        help="group label like Z12 or Z2xZ4, or @cayley.json")
    parser.add_argument("--multiplier", default="trivial",
                        help="trivial | heisenberg | @table.json")
    parser.add_argument("--side", choices=("left", "right"), default="left")
    parser.add_argument("--lattice", help="gabor lattice as N,a,b")
    parser.add_argument("--N", type=int, help="modulus for character reps")
    parser.add_argument("--freqs", help="comma list of character frequencies")
    parser.add_argument("--rep-json", dest="rep_json", help="bundle file for custom reps")


def _add_pair_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--pair", choices=("regular", "gabor", "custom"),
                        default="regular")
    parser.add_argument("--group", default="Z4")
    parser.add_argument("--multiplier", default="trivial")
    parser.add_argument("--lattice", help="gabor lattice as N,a,b")
    parser.add_argument("--pi-json", dest="pi_json")
    parser.add_argument("--sigma-json", dest="sigma_json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="framedual",
        description="finite-dimensional frame duality workbench",
    )
    parser.add_argument("--version", action="version", version=f"framedual {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate multipliers, groups, or reps")
    p.add_argument("--multiplier")
    p.add_argument("--group")
    p.add_argument("--N", type=int)
    p.add_argument("--rep-json", dest="rep_json")
    p.add_argument("--unit-tol", type=float, default=1e-12, dest="unit_tol")
    p.add_argument("--rep-tol", type=float, default=1e-10, dest="rep_tol")
    _add_common(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("classify", help="classify one orbit")
    _add_rep_args(p)
    p.add_argument("--vector", "--window", dest="vector", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("commutant", help="commutant / algebra / center dimensions")
    _add_rep_args(p)
    _add_common(p)
    p.set_defaults(func=_cmd_commutant)

    p = sub.add_parser("certify-pair", help="commuting + dual pair certification")
    _add_pair_args(p)
    p.add_argument("--n", type=int, default=50, help="search draws per witness")
    _add_common(p)
    p.set_defaults(func=_cmd_certify_pair)

    p = sub.add_parser("verify-duality", help="duality clauses for one vector")
    _add_pair_args(p)
    p.add_argument("--vector", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_verify_duality)

    p = sub.add_parser("sweep", help="randomized duality sweep")
    _add_pair_args(p)
    p.add_argument("--n", type=int, default=200, help="random draws")
    p.add_argument("--jobs", type=int, default=1,
                   help="worker threads; reports are identical for any value")
    _add_common(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("dilate", help="dilate to a complete frame vector")
    _add_rep_args(p)
    p.add_argument("--vector", required=True)
    p.add_argument("--mode", choices=("frame", "parseval"), default="frame")
    p.add_argument("--max-tries", type=int, default=5, dest="max_tries")
    _add_common(p)
    p.set_defaults(func=_cmd_dilate)

    p = sub.add_parser("gabor", help="lattice info and optional window analysis")
    p.add_argument("--lattice", required=True, help="N,a,b")
    p.add_argument("--window")
    p.add_argument("--zak", action="store_true", help="include the window's Zak transform")
    _add_common(p)
    p.set_defaults(func=_cmd_gabor)

    return parser


def _apply_config(args) -> None:
    if getattr(args, "config", None):
        with open(args.config, "r", encoding="utf-8") as fh:
            overrides = json.load(fh)
        for key, value in overrides.items():
            attr = key.replace("-", "_")
            if not hasattr(args, attr):
                raise InvalidParameterError(f"unknown config key {key!r}")
            setattr(args, attr, value)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    started = time.perf_counter()
    try:
        _apply_config(args)
        code = args.func(args)
    except (InvalidParameterError, InvalidPairError, FileNotFoundError,
            json.JSONDecodeError, KeyError) as exc:
        print(f"framedual: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (RouteDisagreementError, ConstructionFailureError, NotProjectiveError,
            NoWitnessError, ParameterizationError, FrameDualError) as exc:
        print(f"framedual: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    elapsed = time.perf_counter() - started
    print(f"framedual: {args.command} finished in {elapsed:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
