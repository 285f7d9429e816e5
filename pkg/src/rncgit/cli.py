"""Command-line frontend with JSON/CSV output.

Exit codes: 0 on success, 1 when a verification clause is falsified, 2 on
input errors.  Output is deterministic for fixed input; the randomized
drivers take an explicit --seed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from .configs import Configuration, proj_equivalent
from .fcurves import FPartition, cont2_predicate, enumerate_sym_fcurves, fakhruddin_degree
from .gale import (
    dual_linearization,
    gale_transform,
    goppa_witness,
    self_association_matrix,
)
from .gitstab import (
    Linearization,
    cont_predicate,
    hassett_contracted,
    semistability,
    symcont_predicate,
    symmetric_linearization,
    walls,
)
from .nefcone import rho, verify_theorem_cb
from .sampling import random_constraints, random_subspace
from .scalars import format_rational, parse_param, parse_rational
from .trees import (
    NonGenericConstraints,
    SectionSpaceDimension,
    StableTree,
    SubspaceConstraint,
    default_aux,
    limit_config,
    degree_map_solve,
    semistable_partitions,
)

__all__ = ["run", "main"]


class _InputError(Exception):
    pass


def _emit(payload) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


def _parse_int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError as exc:
        raise _InputError(f"expected comma-separated integers, got {text!r}") from exc


def _parse_rational_list(text: str) -> List[Fraction]:
    try:
        return [parse_rational(x) for x in text.split(",") if x.strip() != ""]
    except ValueError as exc:
        raise _InputError(str(exc)) from exc


def _parse_blocks(text: str) -> FPartition:
    try:
        blocks = [frozenset(_parse_int_list(part)) for part in text.split("|")]
        return FPartition(tuple(blocks))
    except (ValueError, _InputError) as exc:
        raise _InputError(f"bad partition {text!r}: {exc}") from exc


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise _InputError(f"cannot read JSON from {path}: {exc}") from exc


def _load_config(path: str) -> Configuration:
    try:
        return Configuration.from_json(_load_json(path))
    except (KeyError, ValueError) as exc:
        raise _InputError(f"bad configuration file {path}: {exc}") from exc


def _load_tree(path: str) -> StableTree:
    try:
        return StableTree.from_json(_load_json(path))
    except (KeyError, ValueError, TypeError) as exc:
        raise _InputError(f"bad tree file {path}: {exc}") from exc


def _linearization_from_args(args, d: int, n: int) -> Linearization:
    if getattr(args, "weights", None):
        weights = _parse_rational_list(args.weights)
        if len(weights) != n:
            raise _InputError(f"expected {n} weights, got {len(weights)}")
        try:
            return Linearization(d, n, tuple(weights))
        except ValueError as exc:
            raise _InputError(str(exc)) from exc
    return symmetric_linearization(d, n)


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------


def _cmd_fakhruddin(args) -> int:
    n, k = args.n, args.k
    if args.all:
        print("partition,degree,certificate")
        for sizes in enumerate_sym_fcurves(n):
            cert = cont2_predicate(n, k, sizes)
            kind = cert.kind.value if cert else ""
            print(f"{'+'.join(str(s) for s in sizes)},{fakhruddin_degree(n, k, sizes)},{kind}")
        return 0
    if not args.partition:
        raise _InputError("need --partition or --all")
    sizes = tuple(sorted(_parse_int_list(args.partition)))
    try:
        print(fakhruddin_degree(n, k, sizes))
    except ValueError as exc:
        raise _InputError(str(exc)) from exc
    return 0


def _cmd_contract_check(args) -> int:
    n, d = args.n, args.d
    if args.sizes:
        sizes = tuple(sorted(_parse_int_list(args.sizes)))
        try:
            cert = symcont_predicate(n, d, sizes)
        except ValueError as exc:
            raise _InputError(str(exc)) from exc
        _emit({
            "n": n,
            "d": d,
            "sizes": list(sizes),
            "certificate": cert.to_json() if cert else None,
        })
        return 0
    if not args.blocks:
        raise _InputError("need --sizes for the symmetric test or --blocks for a labelled one")
    partition = _parse_blocks(args.blocks)
    if partition.n != n:
        raise _InputError(f"blocks cover {partition.n} marks, expected n = {n}")
    lin = _linearization_from_args(args, d, n)
    cert = cont_predicate(lin, partition)
    _emit({
        "n": n,
        "d": d,
        "blocks": [sorted(b) for b in partition.blocks],
        "certificate": cert.to_json() if cert else None,
        "hassett_contracted": hassett_contracted(lin, partition),
    })
    return 0


def _cmd_stability(args) -> int:
    config = _load_config(args.config)
    lin = _linearization_from_args(args, config.d, config.n)
    try:
        verdict = semistability(config, lin)
    except ValueError as exc:
        raise _InputError(str(exc)) from exc
    _emit(verdict.to_json())
    return 0


def _cmd_walls(args) -> int:
    lin = _linearization_from_args(args, args.d, args.n)
    found = walls(lin)
    _emit({
        "walls": [{"subset": list(subset), "level": k} for subset, k in found],
        "chamber_interior": not found,
    })
    return 0


def _cmd_limit_config(args) -> int:
    tree = _load_tree(args.tree)
    degrees = _parse_int_list(args.degrees)
    if len(degrees) != tree.r:
        raise _InputError(f"expected {tree.r} degrees, got {len(degrees)}")
    if args.aux:
        payload = _load_json(args.aux)
        try:
            aux = [[parse_rational(s) for s in block] for block in payload]
        except (TypeError, ValueError) as exc:
            raise _InputError(f"bad aux file: {exc}") from exc
    else:
        aux = default_aux(tree, degrees)
    try:
        config = limit_config(tree, degrees, aux)
    except (ValueError, SectionSpaceDimension) as exc:
        raise _InputError(str(exc)) from exc
    _emit(config.to_json())
    return 0


def _cmd_semistable_partitions(args) -> int:
    tree = _load_tree(args.tree)
    if args.d is None:
        raise _InputError("need --d (total degree of the target space)")
    lin = _linearization_from_args(args, args.d, tree.n)
    results = semistable_partitions(tree, lin)
    _emit({
        "partitions": [
            {"degrees": list(deg), "verdict": verdict.to_json()} for deg, verdict in results
        ],
        "multiple": len(results) > 1,
    })
    return 0


def _cmd_count_maps(args) -> int:
    tree = _load_tree(args.tree)
    d, e = args.d, args.e
    rng = random.Random(args.seed)
    if args.codims:
        codims = _parse_int_list(args.codims)
        if len(codims) != tree.n:
            raise _InputError(f"expected {tree.n} codimensions, got {len(codims)}")
    else:
        codims = None
    attempts = 0
    while True:
        attempts += 1
        try:
            if codims is not None:
                constraints = [
                    SubspaceConstraint(i + 1, random_subspace(rng, d, codims[i]))
                    for i in range(tree.n)
                ]
            else:
                constraints = random_constraints(rng, tree, d, e)
            maps = degree_map_solve(tree, e, constraints)
            break
        except NonGenericConstraints:
            if attempts >= args.retries:
                raise _InputError(
                    f"constraints stayed non-generic after {attempts} attempts"
                ) from None
        except ValueError as exc:
            raise _InputError(str(exc)) from exc
    solution = maps[0]
    _emit({
        "count": len(maps),
        "degree": solution.degree,
        "mark_images": {
            str(i): [format_rational(x) for x in img] for i, img in solution.mark_images.items()
        },
        "attempts": attempts,
    })
    return 0


def _cmd_gale(args) -> int:
    config = _load_config(args.config)
    try:
        dual = gale_transform(config)
    except ValueError as exc:
        raise _InputError(str(exc)) from exc
    payload = {"dual": dual.to_json()}
    if args.weights:
        lin = _linearization_from_args(args, config.d, config.n)
        try:
            payload["dual_weights"] = dual_linearization(lin).to_json()
        except ValueError as exc:
            raise _InputError(str(exc)) from exc
    _emit(payload)
    return 0


def _cmd_goppa_verify(args) -> int:
    ts = _parse_rational_list(args.params)
    if args.n is not None and args.n != len(ts):
        raise _InputError(f"--n is {args.n} but {len(ts)} parameters were given")
    try:
        source, dual, ok = goppa_witness(ts, args.d)
    except ValueError as exc:
        raise _InputError(str(exc)) from exc
    _emit({
        "n": len(ts),
        "d": args.d,
        "source": source.to_json(),
        "dual": dual.to_json(),
        "ok": ok,
    })
    return 0 if ok else 1


def _cmd_self_assoc(args) -> int:
    ts = _parse_rational_list(args.params)
    try:
        matrix = self_association_matrix(ts)
    except ValueError as exc:
        raise _InputError(str(exc)) from exc
    print(json.dumps(matrix.to_strings()))
    is_zero = matrix.is_zero()
    print(f"self-associated: {'true' if is_zero else 'false'}")
    return 0 if is_zero else 1


def _cmd_nefcone_report(args) -> int:
    if args.sweep is not None:
        reports = []
        for n in range(4, args.sweep + 1):
            for d in range(1, rho(n) + 1):
                reports.append(verify_theorem_cb(n, d))
        _emit({
            "reports": [r.to_json() for r in reports],
            "passed": all(r.passed for r in reports),
        })
        return 0 if all(r.passed for r in reports) else 1
    if args.n is None:
        raise _InputError("need --n or --sweep")
    ds = [args.d] if args.d is not None else list(range(1, rho(args.n) + 1))
    reports = []
    for d in ds:
        try:
            reports.append(verify_theorem_cb(args.n, d))
        except ValueError as exc:
            raise _InputError(str(exc)) from exc
    _emit({
        "reports": [r.to_json() for r in reports],
        "passed": all(r.passed for r in reports),
    })
    return 0 if all(r.passed for r in reports) else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rncgit",
        description=(
            "Exact computations for point configurations on rational normal "
            "curves: GIT stability, limit configurations, Gale duality, and "
            "conformal-blocks F-curve degrees."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fakhruddin", help="intersection degree of D_k with an F-curve")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--partition", help="comma-separated leg sizes, e.g. 1,1,1,3")
    p.add_argument("--all", action="store_true", help="CSV table over all symmetric F-curves")
    p.set_defaults(func=_cmd_fakhruddin)

    p = sub.add_parser("contract-check", help="contraction certificates for an F-curve")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--sizes", help="leg sizes for the symmetric test")
    p.add_argument("--blocks", help="labelled blocks such as 1,2|3|4|5,6")
    p.add_argument("--weights", help="comma-separated weights (default symmetric)")
    p.set_defaults(func=_cmd_contract_check)

    p = sub.add_parser("stability", help="GIT verdict of a configuration")
    p.add_argument("--config", required=True, help="configuration JSON file")
    p.add_argument("--weights", help="comma-separated weights (default symmetric)")
    p.set_defaults(func=_cmd_stability)

    p = sub.add_parser("walls", help="hypersimplex walls through a weight vector")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--weights", help="comma-separated weights (default symmetric)")
    p.set_defaults(func=_cmd_walls)

    p = sub.add_parser("limit-config", help="configuration induced by a degree partition")
    p.add_argument("--tree", required=True, help="stable tree JSON file")
    p.add_argument("--degrees", required=True, help="comma-separated degrees per component")
    p.add_argument("--aux", help="JSON file with auxiliary points per component")
    p.set_defaults(func=_cmd_limit_config)

    p = sub.add_parser("semistable-partitions", help="degree partitions surviving GIT")
    p.add_argument("--tree", required=True)
    p.add_argument("--d", type=int, help="total degree")
    p.add_argument("--weights", help="comma-separated weights (default symmetric)")
    p.set_defaults(func=_cmd_semistable_partitions)

    p = sub.add_parser("count-maps", help="count degree-e maps with incidence constraints")
    p.add_argument("--tree", required=True)
    p.add_argument("--d", type=int, required=True, help="ambient projective dimension")
    p.add_argument("--e", type=int, required=True, help="total map degree")
    p.add_argument("--codims", help="comma-separated constraint codimensions per mark")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--retries", type=int, default=25)
    p.set_defaults(func=_cmd_count_maps)

    p = sub.add_parser("gale", help="Gale transform of a configuration")
    p.add_argument("--config", required=True)
    p.add_argument("--weights", help="also report the paired dual weights")
    p.set_defaults(func=_cmd_gale)

    p = sub.add_parser("goppa-verify", help="dual-curve witness for points on a curve")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--params", required=True, help="comma-separated distinct parameters")
    p.set_defaults(func=_cmd_goppa_verify)

    p = sub.add_parser("self-assoc", help="self-association certificate for 2m parameters")
    p.add_argument("--params", required=True)
    p.set_defaults(func=_cmd_self_assoc)

    p = sub.add_parser("nefcone-report", help="ray-matching consistency report")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--sweep", type=int, help="run all n up to this bound")
    p.set_defaults(func=_cmd_nefcone_report)

    return parser


def run(argv: Sequence[str]) -> int:
    """Execute one CLI invocation; returns the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))
