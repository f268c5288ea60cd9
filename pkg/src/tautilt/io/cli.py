"""Command-line interface.

Exit codes: 0 success, 1 a verification or consistency check failed,
2 usage error, 3 quiver parse or cycle error, 4 unsupported algebra,
5 module outside the supported pool, 6 time budget exceeded.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import Sequence

from ..catalog import CHECKS, verify
from ..graph import build_mutation_quiver, tilting_subquiver
from ..indec import IndecPool, PoolError, UnsupportedAlgebra, enumerate_indecomposables
from ..quiver import Quiver, QuiverError, coxeter_matrix, parse_quiver, preset, representation_type
from ..tilting import (
    EngineError, Pair, bongartz_completion_extension, bongartz_completion_torsion,
    complements_of_almost_complete, enumerate_support_tau_tilting, exchange_sequence, is_partial_tilting,
    is_support_tau_tilting, mutate,
)
from .export import (
    dumps, edges_csv, graph_dot, graph_json, item_json, pair_json, pairs_csv, pairs_json, record_json,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_PARSE, EXIT_UNSUPPORTED, EXIT_POOL, EXIT_BUDGET = range(7)
E7E8_ENV = "TAUTILT_ENABLE_E7E8"

log = logging.getLogger("tautilt")


class UsageError(Exception):
    pass


# -- input ---------------------------------------------------------------------------------

def load_quiver(args) -> Quiver:
    if args.preset:
        try:
            q = preset(args.preset)
        except QuiverError as exc:
            raise UsageError(str(exc)) from None
    else:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
        q = parse_quiver(text)
    if q.name in ("E7", "E8") and not (args.enable_e7e8 or os.environ.get(E7E8_ENV) == "1"):
        raise UnsupportedAlgebra(f"{q.name} is behind --enable-e7e8")
    return q


def load_pool(args, q: Quiver) -> IndecPool:
    finite = representation_type(q) == "finite"
    if not finite and args.depth is None:
        raise UsageError(f"{q.name} is representation-infinite; pass --depth")
    return enumerate_indecomposables(q, depth=None if finite else args.depth, workers=args.workers)


def parse_dims(text: str, n: int) -> tuple[int, ...]:
    try:
        dims = tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        raise UsageError(f"bad dimension vector {text!r}") from None
    if len(dims) != n or any(d < 0 for d in dims):
        raise UsageError(f"dimension vector {text!r} needs {n} non-negative entries")
    return dims


def vertex_index(q: Quiver, name: str) -> int:
    if name not in q.vertices:
        raise UsageError(f"unknown vertex {name!r}")
    return q.vertices.index(name)


def module_ids(args, pool: IndecPool) -> list[int]:
    return sorted({pool.find(parse_dims(m, pool.n)) for m in args.module or []})


def emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands --------------------------------------------------------------------------------

def cmd_enumerate(args) -> int:
    q = load_quiver(args)
    pool = load_pool(args, q)
    pairs = enumerate_support_tau_tilting(pool)
    if args.tilting_only:
        pairs = [p for p in pairs if not p.support]
    if args.format == "csv":
        emit(args, pairs_csv(pool, pairs))
    elif args.format == "json":
        emit(args, dumps(pairs_json(pool, pairs)))
    else:
        raise UsageError("enumerate writes json or csv")
    return EXIT_OK


def cmd_graph(args) -> int:
    q = load_quiver(args)
    pool = load_pool(args, q)
    mq = build_mutation_quiver(pool, depth=None if pool.exhaustive else args.depth)
    if args.tilting_only:
        mq = tilting_subquiver(mq)
    if args.format == "dot":
        emit(args, graph_dot(mq))
    elif args.format == "csv":
        emit(args, edges_csv(mq))
    else:
        emit(args, dumps(graph_json(mq)))
    return EXIT_OK


def _pair_from_args(args, pool: IndecPool) -> Pair:
    support = [vertex_index(pool.quiver, s) for s in args.support or []]
    pair = Pair.of(module_ids(args, pool), support)
    if not is_support_tau_tilting(pool, pair):
        raise UsageError("the given modules and support do not form a support tau-tilting pair")
    return pair


def cmd_mutate(args) -> int:
    q = load_quiver(args)
    pool = load_pool(args, q)
    pair = _pair_from_args(args, pool)
    if (args.at is None) == (args.at_vertex is None):
        raise UsageError("give exactly one of --at or --at-vertex")
    if args.at is not None:
        new, rec = mutate(pool, pair, module=pool.find(parse_dims(args.at, pool.n)))
    else:
        new, rec = mutate(pool, pair, vertex=vertex_index(q, args.at_vertex))
    emit(args, dumps({"algebra": q.name, "from": pair_json(pool, pair), "to": pair_json(pool, new),
                      "exchange": record_json(pool, rec)}))
    return EXIT_OK


def cmd_bongartz(args) -> int:
    q = load_quiver(args)
    pool = load_pool(args, q)
    ms = module_ids(args, pool)
    torsion = bongartz_completion_torsion(pool, ms)
    out = {"algebra": q.name, "input": [list(pool[i].dim) for i in ms], "torsion": pair_json(pool, torsion)}
    if is_partial_tilting(pool, ms):
        ext = bongartz_completion_extension(pool, ms)
        out["extension"] = pair_json(pool, ext)
        out["agree"] = ext == torsion
    emit(args, dumps(out))
    return EXIT_OK if out.get("agree", True) else EXIT_FAILED


def cmd_complements(args) -> int:
    q = load_quiver(args)
    pool = load_pool(args, q)
    ms = module_ids(args, pool)
    c = complements_of_almost_complete(pool, ms)
    out = {
        "algebra": q.name,
        "almost_complete": [list(pool[i].dim) for i in c.almost],
        "complements": [list(pool[i].dim) for i in c.complements],
        "faithful": c.faithful,
        "bongartz": list(pool[c.bongartz].dim) if c.bongartz is not None else None,
    }
    ok = True
    if len(c.complements) == 2:
        seq = exchange_sequence(pool, *c.complements, ms)
        out["exchange_sequence"] = {"start": item_json(pool, ("module", seq.x))["module"],
                                    "middle": [list(pool[j].dim) for j in sorted(seq.middle_ids)],
                                    "end": item_json(pool, ("module", seq.y))["module"],
                                    "checks": seq.checks}
        ok = seq.ok
    emit(args, dumps(out))
    return EXIT_OK if ok else EXIT_FAILED


def cmd_coxeter(args) -> int:
    q = load_quiver(args)
    phi = coxeter_matrix(q)
    if args.format == "csv":
        emit(args, "".join(",".join(map(str, row)) + "\n" for row in phi))
    else:
        emit(args, dumps({"algebra": q.name, "coxeter": [list(r) for r in phi]}))
    return EXIT_OK


def cmd_verify(args) -> int:
    q = load_quiver(args)
    checks = None if args.all or not args.check else args.check
    enabled = args.enable_e7e8 or os.environ.get(E7E8_ENV) == "1"
    report = verify(q, checks, depth=args.depth, enable_e7e8=enabled, budget=args.budget,
                    workers=args.workers, seed=args.seed)
    emit(args, dumps(report.to_json()))
    log.info("%s", report.summary())
    if report.status != "complete":
        return EXIT_BUDGET
    return EXIT_OK if report.passed else EXIT_FAILED


COMMANDS = {
    "enumerate": cmd_enumerate, "graph": cmd_graph, "mutate": cmd_mutate, "bongartz": cmd_bongartz,
    "complements": cmd_complements, "coxeter": cmd_coxeter, "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", help="named quiver: A<n>, D<n>, E6-E8, K2, W4, W2<m>")
    src.add_argument("--input", help="quiver DSL file")
    common.add_argument("--depth", type=int, help="tau-orbit / mutation depth for infinite types")
    common.add_argument("--format", choices=("json", "dot", "csv"), default="json")
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--enable-e7e8", action="store_true", help="allow the E7 and E8 presets")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="tautilt", description="Support tau-tilting computations for path algebras.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("enumerate", "graph"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--tilting-only", action="store_true")
    p = sub.add_parser("mutate", parents=[common])
    p.add_argument("--module", action="append", help="summand dimension vector, e.g. 1,1 (repeatable)")
    p.add_argument("--support", action="append", help="support-projective vertex (repeatable)")
    p.add_argument("--at", help="summand to exchange (dimension vector)")
    p.add_argument("--at-vertex", help="support vertex to exchange")
    for name in ("bongartz", "complements"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--module", action="append", help="summand dimension vector (repeatable)")
    sub.add_parser("coxeter", parents=[common])
    p = sub.add_parser("verify", parents=[common])
    p.add_argument("--check", action="append", choices=sorted(CHECKS))
    p.add_argument("--all", action="store_true", help="run every check applicable to the algebra")
    p.add_argument("--budget", type=float, help="time budget in seconds")
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    if args.depth is not None and args.depth < 1:
        print("error: --depth must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QuiverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UnsupportedAlgebra as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except PoolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_POOL
    except EngineError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
