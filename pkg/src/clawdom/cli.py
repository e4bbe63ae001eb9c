"""``clawdom`` command line.

Exit codes: 0 for YES / success, 1 for NO / failed check, 2 for errors.
Solutions go to standard output in the solution format; traces and
diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import formats
from .clique import find_k_clique_tclawfree
from .csp import build_csp, dump_csp, merge_parallel_constraints
from .errors import ClawdomError, NotClawFree, NotTClawFree
from .generators import (
    complement_of_triangle_free,
    line_graph,
    random_bipartite,
    random_graph,
    random_red_blue,
    random_tclawfree,
    random_unit_interval,
)
from .graph import dominates, find_induced_star
from .mis import maximum_independent_set
from .oracle import brute_max_clique, brute_mds, brute_mids, brute_rbds
from .packs import dump_packs
from .reductions import crbds_to_ds, rbds_to_crbds
from .solver import SearchStats, default_workers, make_level, solve

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def _claw_line(exc) -> str:
    return "claw " + " ".join(str(v + 1) for v in (exc.center, *exc.leaves))


def _answer(vertices) -> int:
    sys.stdout.write(formats.format_solution(vertices))
    return EXIT_NO if vertices is None else EXIT_YES


def cmd_solve(args) -> int:
    g = formats.read_graph(args.file)
    trace = None
    if args.trace:
        trace = _err
        if g.n and find_induced_star(g, 3) is None:
            root = make_level(g, args.k)
            for line in dump_packs(g, root.pd):
                _err(line)
    workers = 1 if args.deterministic else default_workers()
    try:
        sol = solve(
            g,
            args.k,
            trace=trace,
            workers=workers,
            deterministic=args.deterministic or workers == 1,
            on_leaf=_dump_leaf if args.trace else None,
        )
    except NotClawFree as exc:
        print(_claw_line(exc))
        _err(f"error: input is not claw-free: {exc}")
        return EXIT_ERROR
    return _answer(None if sol is None else sol.vertices)


def _dump_leaf(ctx) -> None:
    inst = merge_parallel_constraints(build_csp(ctx))
    for line in dump_csp(inst, ctx.graph.label):
        _err(line)


def cmd_oracle(args) -> int:
    if args.problem == "rbds":
        inst = formats.read_rbds(args.file)
        k = inst.k if args.k is None else args.k
        ans = brute_rbds(inst, k)
        return _answer(ans.witness if ans.feasible else None)
    g = formats.read_graph(args.file)
    if args.problem == "clique":
        ans = brute_max_clique(g)
        if args.k is not None and ans.optimum < args.k:
            return _answer(None)
        witness = sorted(ans.witness)[: args.k] if args.k is not None else ans.witness
        return _answer(witness)
    kmax = g.n if args.k is None else args.k
    ans = (brute_mds if args.problem == "mds" else brute_mids)(g, kmax)
    return _answer(ans.witness if ans.feasible else None)


def cmd_clique(args) -> int:
    g = formats.read_graph(args.file)
    try:
        found = find_k_clique_tclawfree(g, args.t, args.k)
    except NotTClawFree as exc:
        print(_claw_line(exc))
        _err(f"error: input has an induced K_1,{args.t}: {exc}")
        return EXIT_ERROR
    return _answer(found)


def cmd_reduce(args) -> int:
    inst = formats.read_rbds(args.input)
    if args.direction == "rbds-to-crbds":
        result = rbds_to_crbds(inst)
        if result.instance is None:
            print(f"trivially {'YES' if result.shortcut else 'NO'} (shortcut)")
            return EXIT_YES if result.shortcut else EXIT_NO
        text = formats.format_rbds(result.instance)
    else:
        red = crbds_to_ds(inst)
        comments = [
            f"k {red.k}",
            f"blue {red.blue_range.start + 1}..{red.blue_range.stop}",
            f"red {red.red_range.start + 1}..{red.red_range.stop}",
            f"apex {red.apex_range.start + 1}..{red.apex_range.stop}",
        ]
        text = formats.format_graph(red.graph, comments)
        print(f"k {red.k}")
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_YES


def cmd_gen(args) -> int:
    seed, n = args.seed, args.n
    if args.family == "rbds":
        inst = random_red_blue(n, args.blues or n, args.density, args.k, seed)
        text = formats.format_rbds(inst)
    else:
        if args.family == "line":
            g = line_graph(random_graph(n, args.density, seed))
        elif args.family == "cotriangle":
            g = complement_of_triangle_free(random_bipartite(n, args.density, seed))
        elif args.family == "unit-interval":
            g = random_unit_interval(n, args.density, seed)
        else:
            g = random_tclawfree(n, args.t, seed)
        text = formats.format_graph(g)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_YES


def cmd_verify(args) -> int:
    g = formats.read_graph(args.file)
    if args.what == "claw-free":
        star = find_induced_star(g, args.t)
        if star is None:
            print(f"ok K_1,{args.t}-free")
            return EXIT_YES
        print("claw " + " ".join(str(v + 1) for v in (star[0], *sorted(star[1]))))
        return EXIT_NO
    sol = formats.read_solution(args.solution)
    if sol is None:
        print("ok NO answer (nothing to verify)")
        return EXIT_YES
    if any(v >= g.n for v in sol):
        print("fail vertex id out of range")
        return EXIT_NO
    if not dominates(g, sol):
        print("fail not dominating")
        return EXIT_NO
    if args.k is not None and len(sol) > args.k:
        print(f"fail size {len(sol)} exceeds {args.k}")
        return EXIT_NO
    print(f"ok dominating set of size {len(sol)}")
    return EXIT_YES


BENCH_SUITES = {
    # (family, n, density) rows; k is ceil(|I| / 2) so the search has to branch
    "small": [("line", 8, 0.4), ("cotriangle", 14, 0.3), ("unit-interval", 18, 0.5)],
    "medium": [("line", 11, 0.3), ("cotriangle", 26, 0.2), ("unit-interval", 36, 0.55)],
}


def cmd_bench(args) -> int:
    rows = BENCH_SUITES[args.suite]
    idx = 0
    for rep in range(args.repeat):
        for family, n, density in rows:
            seed = args.seed + 1000 * rep + idx
            if family == "line":
                g = line_graph(random_graph(n, density, seed))
            elif family == "cotriangle":
                g = complement_of_triangle_free(random_bipartite(n, density, seed))
            else:
                g = random_unit_interval(n, density, seed)
            k = max(1, (len(maximum_independent_set(g)) + 1) // 2)
            stats = SearchStats()
            start = time.perf_counter()
            sol = solve(g, k, stats=stats)
            ms = (time.perf_counter() - start) * 1000
            print(
                f"bench instance={idx} family={family} seed={seed} n={g.n} m={g.m} k={k} "
                f"answer={'NO' if sol is None else 'YES'} nodes={stats.nodes} "
                f"families={stats.families} levels={stats.levels} time_ms={ms:.2f}"
            )
            idx += 1
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="clawdom", description="Dominating set and clique tools for claw-free graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="k-dominating set on a claw-free graph")
    s.add_argument("file")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--trace", action="store_true", help="print guesses and debug dumps to stderr")
    s.add_argument("--deterministic", action="store_true", help="sequential canonical search")
    s.set_defaults(func=cmd_solve)

    o = sub.add_parser("oracle", help="brute-force reference answers")
    o.add_argument("problem", choices=["mds", "mids", "clique", "rbds"])
    o.add_argument("file")
    o.add_argument("--k", type=int)
    o.set_defaults(func=cmd_oracle)

    c = sub.add_parser("clique", help="k-clique on a K_1,t-free graph")
    c.add_argument("file")
    c.add_argument("--t", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.set_defaults(func=cmd_clique)

    r = sub.add_parser("reduce", help="red-blue reduction gadgets")
    r.add_argument("direction", choices=["rbds-to-crbds", "crbds-to-ds"])
    r.add_argument("input")
    r.add_argument("--out")
    r.set_defaults(func=cmd_reduce)

    gp = sub.add_parser("gen", help="seeded instance generators")
    gp.add_argument("family", choices=["line", "cotriangle", "unit-interval", "tclawfree", "rbds"])
    gp.add_argument("--n", type=int, required=True, help="vertices (base graph vertices for 'line', reds for 'rbds')")
    gp.add_argument("--t", type=int, default=3)
    gp.add_argument("--density", type=float, default=0.5)
    gp.add_argument("--seed", type=int, default=0)
    gp.add_argument("--k", type=int, default=2, help="budget written into rbds instances")
    gp.add_argument("--blues", type=int, help="blue vertices for 'rbds' (default: --n)")
    gp.add_argument("--out")
    gp.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="check claw-freeness or a solution file")
    vs = v.add_subparsers(dest="what", required=True)
    vc = vs.add_parser("claw-free")
    vc.add_argument("file")
    vc.add_argument("--t", type=int, default=3)
    vc.set_defaults(func=cmd_verify)
    vsol = vs.add_parser("solution")
    vsol.add_argument("solution")
    vsol.add_argument("file")
    vsol.add_argument("--k", type=int)
    vsol.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="timed solver runs on generated instances")
    b.add_argument("suite", choices=sorted(BENCH_SUITES))
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--repeat", type=int, default=1)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ClawdomError, OSError, ValueError) as exc:
        _err(f"error: {exc}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
