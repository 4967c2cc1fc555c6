"""Command line front end: solve, kernelize, reduce, lift, verify, gen, bench.

Graph files use the ``p edge`` format, formulas the ``p pcnf`` format.
Solution files hold one 1-indexed vertex id per line.  Reports are
``key: value`` lines on stdout, or a single JSON object with ``--json``.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path
from typing import Callable, Sequence

from . import gs, md
from .errors import ParseError, VcMetricError
from .graph import Graph, read_graph, vertex_cover_exact, write_graph
from .instances import Instance
from .reduce_gs import build_gs_instance, gs_explicit_vc, gs_lift_assignment, gs_reduction_aware_solve
from .reduce_md import build_md_instance, md_explicit_vc, md_lift_assignment, md_reduction_aware_solve
from .sat import (
    MIN_REDUCTION_ROOT,
    PART_NAMES,
    clause_satisfied,
    dumps_pcnf,
    loads_pcnf,
    pad_to_square,
    parse_pcnf,
)

SOLVERS: dict[str, dict[str, Callable]] = {
    "md": {"brute": md.md_bruteforce, "xp": md.md_xp_solve, "fpt": md.md_fpt_solve},
    "gs": {"brute": gs.gs_bruteforce, "xp": gs.gs_xp_solve, "fpt": gs.gs_fpt_solve},
}
CHECKERS = {"md": md.is_resolving, "gs": gs.is_geodetic}
KERNELIZERS = {"md": md.md_kernelize, "gs": gs.gs_kernelize}
REDUCTIONS = {
    "md": (build_md_instance, md_reduction_aware_solve, md_lift_assignment, md_explicit_vc),
    "gs": (build_gs_instance, gs_reduction_aware_solve, gs_lift_assignment, gs_explicit_vc),
}


class Report:
    """Ordered key/value report printed as text lines or as JSON."""

    def __init__(self, as_json: bool) -> None:
        self.as_json = as_json
        self.fields: dict[str, object] = {}

    def __setitem__(self, key: str, value: object) -> None:
        self.fields[key] = value

    def emit(self, out=None) -> None:
        out = out or sys.stdout
        if self.as_json:
            print(json.dumps(self.fields, sort_keys=False), file=out)
            return
        for key, value in self.fields.items():
            if isinstance(value, (list, tuple)):
                value = " ".join(map(str, value))
            elif isinstance(value, dict):
                value = json.dumps(value)
            print(f"{key}: {value}", file=out)


def read_solution(path: str | Path, n: int) -> list[int]:
    ids = []
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            v = int(line)
        except ValueError:
            raise ParseError("solution lines must hold one integer", lineno, str(path)) from None
        if not 1 <= v <= n:
            raise ParseError(f"vertex id out of range 1..{n}", lineno, str(path))
        ids.append(v - 1)
    return sorted(set(ids))


def write_solution(vertices: Sequence[int], path: str | Path) -> None:
    Path(path).write_text("".join(f"{v + 1}\n" for v in vertices), encoding="utf-8")


def one_based(vertices: Sequence[int]) -> list[int]:
    return [v + 1 for v in vertices]


# ----------------------------------------------------------------- sidecar map


def write_map(path: str | Path, problem: str, original, art, min_root: int) -> None:
    data = {
        "problem": problem,
        "k": art.k,
        "min_root": min_root,
        "formula": dumps_pcnf(original),
        "compiled_formula": dumps_pcnf(art.formula),
        "roles": {str(v + 1): role for v, role in enumerate(art.roles)},
        "buckets": [
            {
                "part": PART_NAMES[p],
                "bucket": i,
                "variables": art.formula.bucket_variables(p, i),
                "vertices": [
                    {"id": v + 1, "pattern": "".join("1" if b else "0" for b in pat)}
                    for v, pat in entries
                ],
            }
            for (p, i), entries in sorted(art.buckets.items())
        ],
    }
    Path(path).write_text(json.dumps(data, indent=1) + "\n", encoding="utf-8")


def load_map(path: str | Path):
    """Rebuild ``(problem, original formula, artifact)`` from a sidecar map."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        problem = data["problem"]
        original = loads_pcnf(data["formula"], str(path))
        min_root = int(data.get("min_root", MIN_REDUCTION_ROOT))
    except (ValueError, KeyError) as exc:
        raise ParseError(f"malformed map file: {exc}", None, str(path)) from None
    if problem not in REDUCTIONS:
        raise ParseError(f"unknown problem '{problem}' in map", None, str(path))
    build = REDUCTIONS[problem][0]
    art = build(pad_to_square(original), min_root=min_root)
    if art.k != data.get("k", art.k):
        raise ParseError("map budget does not match the rebuilt instance", None, str(path))
    return problem, original, art


# ------------------------------------------------------------------- commands


def cmd_solve(args: argparse.Namespace, rep: Report) -> int:
    if args.method == "reduction-aware":
        if not args.map:
            raise SystemExit("solve --method reduction-aware needs --map")
        problem, _, art = load_map(args.map)
        g, k = art.g, art.k
        start = time.perf_counter()
        sol = REDUCTIONS[problem][1](art)
    else:
        if args.graph is None or args.k is None:
            raise SystemExit("solve needs --graph and --k")
        problem = args.problem
        g, k = read_graph(args.graph), args.k
        if k < 0:
            raise SystemExit("--k must be non-negative")
        start = time.perf_counter()
        if args.method == "brute":
            best = SOLVERS[problem]["brute"](g)
            sol = best if len(best) <= k else None
        else:
            cert = SOLVERS[problem][args.method](Instance(g, k))
            sol = list(cert.vertices) if cert is not None else None
    elapsed = time.perf_counter() - start
    rep["problem"] = problem
    rep["method"] = args.method
    rep["n"] = g.n
    rep["k"] = k
    rep["answer"] = "YES" if sol is not None else "NO"
    if sol is not None:
        if not CHECKERS[problem](g, sol) or len(sol) > k:
            raise AssertionError("solver produced an invalid certificate")
        rep["size"] = len(sol)
        rep["solution"] = one_based(sol)
        rep["verified"] = True
        if args.out:
            write_solution(sol, args.out)
    rep["seconds"] = round(elapsed, 4)
    return 0


def cmd_kernelize(args: argparse.Namespace, rep: Report) -> int:
    g = read_graph(args.graph)
    kern = KERNELIZERS[args.problem](Instance(g, args.k))
    rep["problem"] = args.problem
    rep["n"] = g.n
    rep["k"] = args.k
    rep["kernel_n"] = kern.reduced.g.n
    rep["kernel_k"] = kern.reduced.k
    rep["trivial_no"] = kern.is_trivial_no
    rep["removed"] = [f"{a + 1}~{b + 1}" for a, b in kern.removed]
    rep["id_map"] = one_based(kern.id_map)
    if args.out:
        write_graph(
            kern.reduced.g,
            args.out,
            [f"kernel of {args.graph} for {args.problem}, k={kern.reduced.k}"],
        )
    return 0


def cmd_reduce(args: argparse.Namespace, rep: Report) -> int:
    original = parse_pcnf(args.cnf)
    psi = pad_to_square(original)
    build, _, _, explicit_vc = REDUCTIONS[args.problem]
    art = build(psi, min_root=args.min_root)
    vc = explicit_vc(art)
    rep["problem"] = args.problem
    rep["n"] = art.formula.n_per_part
    rep["m"] = art.formula.m
    rep["vertices"] = art.g.n
    rep["edges"] = art.g.m
    rep["k"] = art.k
    rep["explicit_vc"] = len(vc)
    if args.out:
        write_graph(art.g, args.out, [f"{args.problem} instance from {args.cnf}, k={art.k}"])
    if args.map:
        write_map(args.map, args.problem, original, art, args.min_root)
    return 0


def cmd_lift(args: argparse.Namespace, rep: Report) -> int:
    problem, original, art = load_map(args.map)
    sol = read_solution(args.solution, art.g.n)
    pi = REDUCTIONS[problem][2](art, sol)
    ok = [clause_satisfied(c, pi) for c in original.clauses]
    rep["problem"] = problem
    rep["assignment"] = [x if pi[x] else -x for x in original.variables]
    rep["clauses_satisfied"] = f"{sum(ok)}/{len(ok)}"
    rep["satisfies"] = all(ok)
    return 0


def cmd_verify(args: argparse.Namespace, rep: Report) -> int:
    g = read_graph(args.graph)
    sol = read_solution(args.solution, g.n)
    good = CHECKERS[args.problem](g, sol)
    if args.k is not None:
        good = good and len(sol) <= args.k
    rep["problem"] = args.problem
    rep["size"] = len(sol)
    rep["answer"] = "YES" if good else "NO"
    return 0


def random_connected_graph(n: int, p: float, rng: random.Random) -> Graph:
    """Rejection-sample G(n, p) until connected."""
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    while True:
        g = Graph.from_edges(n, [e for e in pairs if rng.random() < p])
        if g.is_connected():
            return g


def cmd_gen(args: argparse.Namespace, rep: Report) -> int:
    if args.n < 1 or not 0.0 < args.p <= 1.0:
        raise SystemExit("gen needs --n >= 1 and 0 < --p <= 1")
    g = random_connected_graph(args.n, args.p, random.Random(args.seed))
    comment = f"random connected G({args.n}, {args.p}) seed={args.seed}"
    if args.out:
        write_graph(g, args.out, [comment])
    else:
        from .graph import dumps_graph

        sys.stdout.write(dumps_graph(g, [comment]))
        return 0
    rep["n"] = g.n
    rep["m"] = g.m
    return 0


BENCH_SUITES = {
    # suite -> (vertex counts, edge probability, graphs per size)
    "tiny": ((6, 8), 0.35, 3),
    "small": ((8, 10, 12), 0.3, 4),
    "medium": ((10, 14, 18), 0.25, 4),
}


def cmd_bench(args: argparse.Namespace, rep: Report) -> int:
    sizes, p, per = BENCH_SUITES[args.suite]
    rng = random.Random(args.seed)
    rows = []
    for n in sizes:
        for idx in range(per):
            g = random_connected_graph(n, p, rng)
            vc = len(vertex_cover_exact(g))
            for problem in ("md", "gs"):
                start = time.perf_counter()
                best = len(SOLVERS[problem]["brute"](g))
                cert = SOLVERS[problem]["fpt"](Instance(g, best))
                kern = KERNELIZERS[problem](Instance(g, best))
                rows.append(
                    {
                        "instance": f"n{n}-{idx}",
                        "problem": problem,
                        "n": n,
                        "vc": vc,
                        "opt": best,
                        "kernel_n": kern.reduced.g.n,
                        "fpt_ok": cert is not None and cert.size <= best,
                        "seconds": round(time.perf_counter() - start, 4),
                    }
                )
    if rep.as_json:
        rep["suite"] = args.suite
        rep["rows"] = rows
        return 0
    header = ("instance", "problem", "n", "vc", "opt", "kernel_n", "fpt_ok", "seconds")
    print("  ".join(f"{h:>9}" for h in header))
    for row in rows:
        print("  ".join(f"{str(row[h]):>9}" for h in header))
    return 0


# ------------------------------------------------------------------- argparse


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vcmetric",
        description="Metric dimension and geodetic set solvers, kernels and SAT reductions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, problem: bool = True) -> None:
        if problem:
            p.add_argument("--problem", choices=("md", "gs"), default="md")
        p.add_argument("--json", action="store_true", help="print the report as JSON")

    p = sub.add_parser("solve", help="decide (G, k) and print a certificate")
    common(p)
    p.add_argument("--graph")
    p.add_argument("--k", type=int)
    p.add_argument("--method", choices=("brute", "xp", "fpt", "reduction-aware"), default="fpt")
    p.add_argument("--map", help="sidecar map (reduction-aware method only)")
    p.add_argument("--out", help="write the solution file here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("kernelize", help="apply the twin reduction rules")
    common(p)
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", help="write the kernel graph here")
    p.set_defaults(func=cmd_kernelize)

    p = sub.add_parser("reduce", help="compile a partitioned 3-CNF into a graph instance")
    common(p)
    p.add_argument("--cnf", required=True)
    p.add_argument("--out", help="graph file to write")
    p.add_argument("--map", help="sidecar map to write")
    p.add_argument(
        "--min-root",
        type=int,
        default=MIN_REDUCTION_ROOT,
        help="pad to at least this many buckets per part (1 gives the unsound single-bucket graph)",
    )
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("lift", help="read an assignment off a solution of a reduced instance")
    common(p, problem=False)
    p.add_argument("--map", required=True)
    p.add_argument("--solution", required=True)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("verify", help="check a solution file")
    common(p)
    p.add_argument("--graph", required=True)
    p.add_argument("--solution", required=True)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="random connected graph")
    common(p, problem=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="kernel size and solver time on random graphs")
    common(p, problem=False)
    p.add_argument("suite", nargs="?", choices=sorted(BENCH_SUITES), default="tiny")
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    rep = Report(args.json)
    try:
        code = args.func(args, rep)
    except VcMetricError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if rep.fields:
        rep.emit()
    return code


if __name__ == "__main__":
    sys.exit(main())
