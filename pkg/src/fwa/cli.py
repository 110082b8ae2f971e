"""``fwa``: analyse featured weighted automata from JSON files.

Exit codes: 0 success, 1 malformed input, 2 semantic error.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
import time

from .automata import buchi_value, featured_buchi_value, featured_reach_value, project, reach_value
from .energy import BOT, ENERGY, V_FALSE, render_indicator, threshold
from .features import render_guard
from .fwalgo import featured_floyd_warshall, floyd_warshall
from .generate import bench_automaton
from .gplift import lift1
from .io import (
    DocumentError,
    SemanticError,
    build,
    format_table,
    load_file,
    parse_product,
    render_product,
    result_document,
)
from .kleene import TROP, parse_rational

QUERIES = ("reach", "buchi", "minreach")


def _reach_indicator(f):
    """Initial energies from which the reach value is defined."""
    if f.is_bottom:
        return V_FALSE
    return threshold(f.lb, f.lb_closed)


def _render_min_energy(v) -> str:
    return "unreachable" if v.is_false else render_indicator(v)


def _render_bool(b) -> str:
    return "true" if b else "false"


def _check_query(alg, args, algo="matrix", strict=False):
    if algo == "floydwarshall" and (alg is not TROP or args.query == "buchi"):
        raise SemanticError("--algo floydwarshall needs a tropical reach/minreach query")
    if strict and algo != "floydwarshall":
        raise SemanticError("--strict-fig1 applies to --algo floydwarshall only")
    if args.x0 is not None and alg is not ENERGY:
        raise SemanticError("--x0 applies to energy automata only")
    if args.query == "buchi" and alg is not ENERGY:
        raise SemanticError(f"buchi query needs an energy automaton, got {alg.name}")
    if args.query == "minreach" and alg not in (TROP, ENERGY):
        raise SemanticError(f"minreach query needs a tropical or energy automaton, got {alg.name}")


def _finisher(alg, query, x0):
    """Map from a per-product reach/Büchi value to the reported value, and
    its renderer."""
    if query == "buchi":
        if x0 is not None:
            return (lambda v: v(x0)), _render_bool
        return (lambda v: v), alg.vrender
    if alg is ENERGY and query == "minreach":
        return _reach_indicator, _render_min_energy
    if alg is ENERGY and x0 is not None:
        return (lambda f: f(x0) is not BOT), _render_bool
    return (lambda v: v), alg.render


def _emit(doc, fmt):
    if fmt == "json":
        print(json.dumps(doc, indent=2))
    else:
        print(format_table(doc))


def _load(path):
    built = build(load_file(path))
    return built.automaton, built


def cmd_value(args) -> int:
    F, _ = _load(args.file)
    alg = F.algebra
    _check_query(alg, args, args.algo, args.strict_fig1)
    if args.query == "buchi":
        value = featured_buchi_value(F)
    elif args.algo == "floydwarshall":
        value = featured_floyd_warshall(F, strict_fig1=args.strict_fig1)
    else:
        value = featured_reach_value(F)
    fn, render = _finisher(alg, args.query, args.x0)
    doc = result_document(args.query, alg.name, lift1(value, fn), render, per_product=args.enumerate)
    _emit(doc, args.format)
    return 0


def cmd_project(args) -> int:
    F, _ = _load(args.file)
    alg = F.algebra
    product = parse_product(args.product, F.model)
    _check_query(alg, args)
    A = project(F, F.model.index(product))
    raw = buchi_value(A) if args.query == "buchi" else reach_value(A)
    fn, render = _finisher(alg, args.query, args.x0)
    doc = {
        "query": args.query,
        "semiring": alg.name,
        "product": render_product(F.model, product),
        "symbolic": [{"guard": render_guard(F.model.characteristic_guard(product)), "value": render(fn(raw))}],
    }
    _emit(doc, args.format)
    return 0


def cmd_validate(args) -> int:
    F, built = _load(args.file)
    for w in built.warnings:
        print(f"warning: {w}", file=sys.stderr)
    for n in built.notes:
        print(f"note: {n}", file=sys.stderr)
    model = F.model
    print("OK")
    print(
        f"features: {len(model.features)}, products: {len(model)}"
        f"{' (all)' if model.is_complete else ''}, states: {len(F.states)}, transitions: {len(F.guarded)}"
    )
    return 0


BENCH_FIELDS = [
    "instance",
    "seed",
    "features",
    "products",
    "states",
    "transitions",
    "family_matrix_s",
    "family_fw_s",
    "per_product_matrix_s",
    "per_product_fw_s",
    "speedup_matrix",
    "speedup_fw",
    "agree",
]


def bench_rows(features: int, states: int, transitions: int | None, instances: int, seed: int):
    """One row per random instance; timings via ``time.perf_counter``."""
    for inst in range(instances):
        rng = random.Random(seed + inst)
        F = bench_automaton(rng, features, states, transitions)
        t0 = time.perf_counter()
        fam_m = featured_reach_value(F)
        t1 = time.perf_counter()
        fam_fw = featured_floyd_warshall(F)
        t2 = time.perf_counter()
        per_m = [reach_value(project(F, i)) for i in range(len(F.model))]
        t3 = time.perf_counter()
        per_fw = [floyd_warshall(project(F, i)) for i in range(len(F.model))]
        t4 = time.perf_counter()
        agree = all(fam_m.at(i) == fam_fw.at(i) == per_m[i] == per_fw[i] for i in range(len(F.model)))
        yield {
            "instance": inst,
            "seed": seed + inst,
            "features": features,
            "products": len(F.model),
            "states": states,
            "transitions": len(F.guarded),
            "family_matrix_s": f"{t1 - t0:.4f}",
            "family_fw_s": f"{t2 - t1:.4f}",
            "per_product_matrix_s": f"{t3 - t2:.4f}",
            "per_product_fw_s": f"{t4 - t3:.4f}",
            "speedup_matrix": f"{(t3 - t2) / (t1 - t0):.2f}",
            "speedup_fw": f"{(t4 - t3) / (t2 - t1):.2f}",
            "agree": agree,
        }


def cmd_bench(args) -> int:
    out = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=BENCH_FIELDS)
        writer.writeheader()
        for row in bench_rows(args.features, args.states, args.transitions, args.instances, args.seed):
            writer.writerow(row)
            out.flush()
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _rational(text):
    try:
        x = parse_rational(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None
    if x < 0:
        raise argparse.ArgumentTypeError("initial energy must be nonnegative")
    return x


def _query_flags(p):
    p.add_argument("--query", choices=QUERIES, default="reach")
    p.add_argument("--x0", type=_rational, help="initial energy (energy automata)")
    p.add_argument("--format", choices=("table", "json"), default="table")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fwa", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("value", help="symbolic value of a featured automaton")
    p.add_argument("file")
    _query_flags(p)
    p.add_argument("--algo", choices=("matrix", "floydwarshall"), default="matrix")
    p.add_argument("--enumerate", action="store_true", help="add the per-product table")
    p.add_argument("--strict-fig1", action="store_true", help="no empty-path base case")
    p.set_defaults(func=cmd_value)

    p = sub.add_parser("project", help="value of the automaton projected to one product")
    p.add_argument("file")
    p.add_argument("--product", required=True, help="comma-separated features (empty for none)")
    _query_flags(p)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("validate", help="check a file and report diagnostics")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("bench", help="family-based vs per-product timings (CSV)")
    p.add_argument("--features", type=int, default=10)
    p.add_argument("--states", type=int, default=20)
    p.add_argument("--transitions", type=int, default=None, help="default: 2 * states")
    p.add_argument("--instances", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", help="CSV file (default: stdout)")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DocumentError, SemanticError) as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
