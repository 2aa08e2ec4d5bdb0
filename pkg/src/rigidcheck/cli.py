"""Command-line interface.

Subcommands: `analyze` (rigidity of a hypergraph under a chosen map),
`tensor` (completability of a partial symmetric tensor, optional numeric
fit), `packing` (the subset-packing sufficient condition), and `examples`
(the built-in regression suite).

Exit codes for analyze/tensor: 0 globally rigid, 10 locally rigid only,
20 flexible, 30 locally rigid but the global certificate failed, 2 input
error. packing: 0 all conditions hold, 1 a condition fails, 2 input error.
examples: 0 all cases pass, 1 a case mismatches.

Given identical inputs, flags, and seed, JSON output is byte-identical.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .cases import case_ids, run_suite
from .engine import (
    DEFAULT_SEED,
    EngineConfig,
    EngineError,
    global_rigidity_prod,
    is_locally_rigid,
    packing_check,
)
from .hypergraph import HypergraphError, load_hypergraph
from .linalg import LinalgError
from .polymap import PolyMap, PolyMapError, h_prod, inner_product, parse_poly, sq_euclid
from .tensor import TensorError, analyze_completability, fit_completion, load_tensor

EXIT_GLOBAL = 0
EXIT_LOCAL_ONLY = 10
EXIT_FLEXIBLE = 20
EXIT_INCONCLUSIVE = 30
EXIT_INPUT = 2


class CliError(ValueError):
    pass


def _default_seed() -> int:
    env = os.environ.get("RIGIDCHECK_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise CliError(f"RIGIDCHECK_SEED must be an integer, got {env!r}") from None
    return DEFAULT_SEED


def _common_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--seed", type=int, default=None, help="root seed (env RIGIDCHECK_SEED, then a fixed default)")
    sp.add_argument("--trials", type=int, default=3, help="independent (point, prime) trials per rank")
    sp.add_argument("--domain", choices=("modp", "exact"), default="modp", help="certification arithmetic")
    sp.add_argument("--json", action="store_true", help="machine-readable output")


def _config(args) -> EngineConfig:
    seed = args.seed if args.seed is not None else _default_seed()
    return EngineConfig(seed=seed, trials=args.trials, domain=args.domain)


def _build_map(spec: str, k: int, dim: int | None, where: str) -> tuple[PolyMap, str]:
    if spec == "prod":
        return h_prod(k), "prod"
    if spec == "sqdist":
        if dim is None:
            raise CliError(f"--dim is required for {where} with --map sqdist")
        return sq_euclid(dim), "sqdist"
    if spec == "inner":
        if dim is None:
            raise CliError(f"--dim is required for {where} with --map inner")
        return inner_product(dim), "inner"
    if spec.startswith("poly:"):
        if dim is None:
            raise CliError(f"--dim is required for {where} with --map poly:<expr>")
        return parse_poly(spec[len("poly:"):], k, dim), "poly"
    raise CliError(f"unknown map spec {spec!r} (want prod, sqdist, inner, or poly:<expr>)")


def _emit(payload: dict, as_json: bool, lines) -> None:
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _condition_lines(conditions) -> list[str]:
    out = []
    for c in conditions:
        mark = "ok " if c["holds"] else "FAIL"
        wit = f" -- {c['witness']}" if c.get("witness") else ""
        out.append(f"  [{mark}] {c['name']}{wit}")
    return out


# -- analyze -----------------------------------------------------------------


def cmd_analyze(args) -> int:
    cfg = _config(args)
    G = load_hypergraph(args.file)
    if args.map == "prod":
        d = args.rank if args.rank is not None else 1
        rep = global_rigidity_prod(G, d, cfg)
        payload = rep.to_dict()
        lines = [
            f"instance: n={G.n} k={G.k} m={G.m}",
            f"map: prod (rank {d})",
            f"ranks: jacobian {rep.ranks['jacobian']}, reference {rep.ranks['reference']}",
            f"shadow size: {rep.shadow_size}",
            f"kernel dims: column {rep.kernel_dims['right']}, row {rep.kernel_dims['left']}",
            "conditions:",
            *_condition_lines(rep.conditions),
            f"verdict: {rep.verdict}",
        ]
        _emit(payload, args.json, lines)
        return {
            "globally-rigid": EXIT_GLOBAL,
            "inconclusive-global": EXIT_INCONCLUSIVE,
            "flexible": EXIT_FLEXIBLE,
        }[rep.verdict]
    g, label = _build_map(args.map, G.k, args.dim, "analyze")
    rep = is_locally_rigid(g, G, cfg, map_label=label)
    verdict = "locally-rigid" if rep.locally_rigid else "flexible"
    payload = rep.to_dict()
    payload["verdict"] = verdict
    lines = [
        f"instance: n={G.n} k={G.k} m={G.m}",
        f"map: {label} (d={g.d})",
        f"ranks: jacobian {rep.jacobian_rank}, reference {rep.reference_rank}",
        f"verdict: {verdict}",
    ]
    _emit(payload, args.json, lines)
    return EXIT_LOCAL_ONLY if rep.locally_rigid else EXIT_FLEXIBLE


# -- tensor ------------------------------------------------------------------


def cmd_tensor(args) -> int:
    cfg = _config(args)
    T = load_tensor(args.file)
    if args.rank is not None:
        if args.rank < 1:
            raise CliError("--rank must be >= 1")
        T.d = args.rank
    if args.fit and not T.valued_entries():
        raise CliError("fit requires values")
    rep = analyze_completability(T, cfg)
    payload = rep.to_dict()
    lines = [
        f"tensor: order {T.k}, size {T.n}, target rank {T.d}, observed {len(T.entries)}",
        f"verdict: {rep.verdict}",
        f"interpretation: {rep.interpretation}",
        "conditions:",
        *_condition_lines(rep.rigidity.conditions),
    ]
    if args.fit:
        fit = fit_completion(T, seed=cfg.seed)
        payload["fit"] = fit.to_dict()
        lines += [
            f"fit residual (max abs on observed): {fit.residual:.3e}",
            f"fit converged: {fit.converged}",
        ]
    _emit(payload, args.json, lines)
    return {
        "globally-rigid": EXIT_GLOBAL,
        "inconclusive-global": EXIT_INCONCLUSIVE,
        "flexible": EXIT_FLEXIBLE,
    }[rep.verdict]


# -- packing -----------------------------------------------------------------


def _load_partition(path: str) -> list[list[str]]:
    subsets: list[list[str]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            subsets.append(line.split())
    if not subsets:
        raise CliError(f"{path}: partition file lists no vertex subsets")
    return subsets


def cmd_packing(args) -> int:
    cfg = _config(args)
    G = load_hypergraph(args.file)
    subsets = _load_partition(args.partition)
    h, label = _build_map(args.map, G.k, args.dim, "packing")
    t = args.copies if args.copies is not None else len(subsets)
    rep = packing_check(h, t, G, subsets, cfg)
    payload = rep.to_dict()
    payload["map"] = label
    lines = [
        f"instance: n={G.n} k={G.k} m={G.m}; subsets: {len(subsets)}",
        "conditions:",
        *_condition_lines(rep.conditions),
        f"all conditions hold: {rep.ok}",
    ]
    _emit(payload, args.json, lines)
    return 0 if rep.ok else 1


# -- examples ----------------------------------------------------------------


def cmd_examples(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    try:
        suite = run_suite(seed, only=args.case)
    except KeyError:
        raise CliError(
            f"unknown case {args.case!r}; available: {', '.join(case_ids())}"
        ) from None
    lines = []
    width = max(len(r["id"]) for r in suite["cases"])
    for r in suite["cases"]:
        status = "PASS" if r["pass"] else "FAIL"
        lines.append(f"{r['id']:<{width}}  {status}  {r['title']}")
        if not r["pass"]:
            lines.append(f"{'':<{width}}  expected {r['expected']}")
            lines.append(f"{'':<{width}}  observed {r['observed']}")
    lines.append(f"all cases pass: {suite['all_pass']}")
    _emit(suite, args.json, lines)
    return 0 if suite["all_pass"] else 1


# -- entry point ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rigidcheck",
        description="Local and global rigidity of k-uniform hypergraphs; "
        "completability of partial symmetric tensors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("analyze", help="rigidity analysis of a hypergraph JSON file")
    sp.add_argument("file", help="hypergraph JSON file")
    sp.add_argument("--map", required=True, help="prod | sqdist | inner | poly:<expr>")
    sp.add_argument("--rank", type=int, default=None, help="target rank d for --map prod (default 1)")
    sp.add_argument("--dim", type=int, default=None, help="coordinate dimension for sqdist/inner/poly")
    _common_flags(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("tensor", help="completability of a partial symmetric tensor file")
    sp.add_argument("file", help="tensor text file (header 'k n d')")
    sp.add_argument("--rank", type=int, default=None, help="override the target rank from the file")
    sp.add_argument("--fit", action="store_true", help="fit a numeric rank-d completion")
    _common_flags(sp)
    sp.set_defaults(func=cmd_tensor)

    sp = sub.add_parser("packing", help="subset-packing sufficient condition for local rigidity")
    sp.add_argument("file", help="hypergraph JSON file")
    sp.add_argument("partition", help="text file: one vertex subset per line")
    sp.add_argument("--map", required=True, help="multilinear map: prod | inner | poly:<expr>")
    sp.add_argument("--dim", type=int, default=None, help="coordinate dimension for inner/poly")
    sp.add_argument("--copies", type=int, default=None, help="number of blocks t (default: subset count)")
    _common_flags(sp)
    sp.set_defaults(func=cmd_packing)

    sp = sub.add_parser("examples", help="run the built-in regression suite")
    sp.add_argument("--case", default=None, help="run a single case by id")
    _common_flags(sp)
    sp.set_defaults(func=cmd_examples)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        CliError,
        EngineError,
        HypergraphError,
        LinalgError,
        PolyMapError,
        TensorError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def console() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console()
