"""Command-line interface.

Commands: solve, verify, gen, bench, check. Exit codes: 0 success, 2 parse or
usage error, 3 disconnected instance, 4 failed verification or certificate
violation. Tree files reuse the instance format's edge lines, with the
summary carried in `# key value` comments, so `verify` consumes `solve`
output directly.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bench import run_instance, rows_to_csv
from .certify import RatioCertificate
from .clawfree import apply_operation1, approx_7_12
from .errors import (BudgetExceededError, CertificateViolationError,
                     DisconnectedGraphError, GraphFormatError, MwistError,
                     NotClawFreeError, RetriesExhaustedError)
from .generators import GenSpec, generate
from .graphs import (SpanningTree, VertexWeightedGraph, find_claw, internal_weight,
                     load_graph, normalize_leaf_weights, save_graph, spanning_tree)
from .half import approx_half, upper_bound_certificate
from .matching import max_weight_matching
from .oracle import OracleBudget, exact_mwist

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DISCONNECTED = 3
EXIT_CERTIFICATE = 4


def _select_auto(g: VertexWeightedGraph) -> str:
    return "clawfree712" if g.n >= 5 and find_claw(g) is None else "half"


def _solve_with(g: VertexWeightedGraph, algo: str,
                budget: OracleBudget) -> tuple[SpanningTree, RatioCertificate]:
    if algo == "half":
        return approx_half(g)
    if algo == "clawfree712":
        return approx_7_12(g)
    if algo == "exact":
        tree, opt = exact_mwist(g, budget)
        cert = RatioCertificate(opt, opt, (1, 1), optimum=opt, algorithm="exact").check()
        return tree, cert
    raise GraphFormatError(f"unknown algorithm {algo!r}")


def _format_result(g: VertexWeightedGraph, tree: SpanningTree,
                   cert: RatioCertificate, algo: str) -> str:
    _, delta = normalize_leaf_weights(g)
    lines = ["# mwist tree",
             f"# algorithm {algo}",
             f"# w_tree {cert.tree_weight}",
             f"# w_upper {cert.upper_bound}",
             f"# bound {cert.ratio[0]} {cert.ratio[1]}",
             f"# leaf_weight_zeroed {delta}"]
    if cert.optimum is not None:
        lines.append(f"# opt {cert.optimum}")
    lines.extend(f"{u} {v}" for u, v in tree.edges)
    return "\n".join(lines) + "\n"


def cmd_solve(args) -> int:
    g = load_graph(args.instance)
    algo = args.algo
    if algo == "auto":
        algo = _select_auto(g)
    try:
        tree, cert = _solve_with(g, algo, OracleBudget(max_vertices=args.oracle_budget))
    except NotClawFreeError as exc:
        print(f"error: {exc}; rerun with --algo half", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    text = _format_result(g, tree, cert, algo if cert.algorithm != "exact-fallback"
                          else "exact-fallback")
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.verbose:
        print(f"w_tree={cert.tree_weight} w_upper={cert.upper_bound} "
              f"bound={cert.ratio[0]}/{cert.ratio[1]} algorithm={algo}",
              file=sys.stderr)
    return EXIT_OK


def _parse_tree_file(path) -> tuple[dict, list[tuple[int, int]]]:
    claims: dict[str, str] = {}
    edges: list[tuple[int, int]] = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) >= 2:
                claims[parts[0]] = " ".join(parts[1:])
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"bad tree edge line {raw!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return claims, edges


def _certified_upper(g: VertexWeightedGraph, algorithm: str) -> int:
    if algorithm in ("half", "auto"):
        return upper_bound_certificate(g)
    if algorithm in ("clawfree712", "exact-fallback"):
        _tree, cert = approx_7_12(g)
        return cert.upper_bound
    if algorithm == "exact":
        _tree, opt = exact_mwist(g)
        return opt
    raise GraphFormatError(f"unknown algorithm {algorithm!r} in tree file")


def cmd_verify(args) -> int:
    g = load_graph(args.instance)
    claims, edges = _parse_tree_file(args.tree)
    try:
        tree = spanning_tree(g, edges)
    except MwistError as exc:
        print(f"invalid-tree: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATE
    w_tree = internal_weight(g, tree)
    problems = []
    if "w_tree" in claims and int(claims["w_tree"]) != w_tree:
        problems.append(f"claimed w_tree {claims['w_tree']}, recomputed {w_tree}")
    num, den = (1, 2)
    if "bound" in claims:
        num, den = map(int, claims["bound"].split())
    algorithm = claims.get("algorithm", "half")
    upper = _certified_upper(g, algorithm)
    if "w_upper" in claims and int(claims["w_upper"]) != upper:
        problems.append(f"claimed w_upper {claims['w_upper']}, recomputed {upper}")
    if den * w_tree < num * upper:
        problems.append(f"bound violated: {den}*{w_tree} < {num}*{upper}")
    if problems:
        for p in problems:
            print(f"mismatch: {p}", file=sys.stderr)
        return EXIT_CERTIFICATE
    print(f"OK: w_tree={w_tree} w_upper={upper} bound={num}/{den}")
    return EXIT_OK


def cmd_gen(args) -> int:
    spec = GenSpec(family=args.family, n=args.n, m=args.m,
                   weights=args.weights, seed=args.seed)
    g = generate(spec)
    if args.out:
        save_graph(g, args.out)
        if args.verbose:
            print(f"wrote n={g.n} m={g.m} to {args.out}", file=sys.stderr)
    else:
        from .graphs import format_graph
        sys.stdout.write(format_graph(g))
    return EXIT_OK


def cmd_bench(args) -> int:
    paths: list[Path] = []
    for item in args.inputs:
        p = Path(item)
        if p.is_dir():
            paths.extend(sorted(p.glob("*.graph")))
        else:
            paths.append(p)
    budget = OracleBudget(max_vertices=args.oracle_budget) if args.oracle else None
    rows = []
    for p in paths:
        g = load_graph(p)
        rows.append(run_instance(g, p.stem, oracle_budget=budget))
    text = rows_to_csv(rows)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_check(args) -> int:
    g = load_graph(args.instance)
    claw = find_claw(g)
    if claw is None:
        print("claw_free: yes")
    else:
        center, leaves = claw
        print(f"claw_free: no (center {center}, leaves {leaves[0]} {leaves[1]} {leaves[2]})")
    normalized, delta = normalize_leaf_weights(g)
    print(f"leaf_weight_zeroed: {delta}")
    reduced, records = apply_operation1(normalized)
    if not records:
        print("reductions: none")
    else:
        print(f"reductions: {len(records)}")
        for rec in records:
            print(f"  cut {rec.cut_vertex} removes {list(rec.removed)} "
                  f"recovers {rec.local_weight}")
        print(f"reduced_size: n={reduced.n} m={reduced.m}")
    print(f"w_mstar: {max_weight_matching(normalized).weight}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mwist",
        description="Approximation algorithms for maximum-weight internal spanning trees")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one instance")
    p.add_argument("instance")
    p.add_argument("--algo", choices=["half", "clawfree712", "exact", "auto"],
                   default="auto")
    p.add_argument("--oracle-budget", type=int, default=10)
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="re-check a solve result")
    p.add_argument("instance")
    p.add_argument("tree")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("--family", choices=["random_gnm", "line_graph", "planted_hangers",
                                        "path", "cycle", "star"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--weights", default="uniform:0:9")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run solvers over instance files")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--oracle", action="store_true",
                   help="also solve exactly when small enough")
    p.add_argument("--oracle-budget", type=int, default=10)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("check", help="report structure: claw-freeness, reductions")
    p.add_argument("instance")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GraphFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except RetriesExhaustedError as exc:
        print(f"generation failed: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DisconnectedGraphError as exc:
        print(f"disconnected: {exc}", file=sys.stderr)
        return EXIT_DISCONNECTED
    except CertificateViolationError as exc:
        print(f"certificate violation: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATE
    except ValueError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
