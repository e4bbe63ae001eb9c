"""Process-parallel exploration of the top-level branches of the solver.

Each task rebuilds the root context from ``(g, k)`` and explores one
top-level branch: a vertex of ``I`` in the solution, or one pack family
of the ``I``-avoiding branch.  The decision is schedule-independent; the
witness is whichever verified solution arrives first.
"""

from __future__ import annotations

from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait

from .graph import Graph


def _tasks(g: Graph, k: int):
    from .solver import enumerate_pack_families, make_level, step_bounds

    root = make_level(g, k)
    verdict = step_bounds(root)
    if verdict.kind != "continue":
        return root, verdict, []
    tasks = [("pick", i) for i, _ in enumerate(sorted(root.I))]
    tasks += [("family", B) for B in enumerate_pack_families(root)]
    return root, verdict, tasks


def _run_task(g: Graph, k: int, task):
    from .solver import _Search, branch_on_I, make_level

    root = make_level(g, k)
    search = _Search()
    children = list(branch_on_I(root))
    kind, arg = task
    if kind == "pick":
        return search.level(children[arg])
    return search.family(children[-1], arg)


def solve_parallel(g: Graph, k: int, workers: int):
    from .solver import _Search, _assemble, _root_context

    if g.n == 0 or k == 0:
        return _Search().level(_root_context(g, k))
    root, verdict, tasks = _tasks(g, k)
    if verdict.kind == "yes":
        return _assemble(root, root.I)
    if verdict.kind == "no":
        return None
    with ProcessPoolExecutor(max_workers=workers) as pool:
        pending = {pool.submit(_run_task, g, k, task) for task in tasks}
        try:
            while pending:
                done, pending = wait(pending, return_when=FIRST_COMPLETED)
                for fut in done:
                    found = fut.result()
                    if found is not None:
                        return found
        finally:
            for fut in pending:
                fut.cancel()
    return None
