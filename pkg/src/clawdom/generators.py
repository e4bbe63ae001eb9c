"""Seeded generators of claw-free and t-claw-free graphs.

All randomness comes from :class:`~clawdom.rng.SplitMix64`, so the same
(generator, parameters, seed) triple yields the same graph everywhere.
"""

from __future__ import annotations

from itertools import combinations

from .errors import GenerationFailed, HasTriangle, InternalContradiction, NoEdges
from .graph import Graph, bits, build_graph, find_induced_star
from .reductions import RedBlueInstance, red_blue
from .rng import SplitMix64

MAX_RETRIES = 1000


def _assert_free(g: Graph, t: int, what: str) -> Graph:
    star = find_induced_star(g, t)
    if star is not None:
        raise InternalContradiction(f"{what} produced an induced K_1,{t} at vertex {star[0]}")
    return g


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = SplitMix64(seed)
    return build_graph(n, [(u, v) for u, v in combinations(range(n), 2) if rng.chance(p)])


def random_bipartite(n: int, p: float, seed: int) -> Graph:
    """Random sides, then each cross pair becomes an edge with probability ``p``."""
    rng = SplitMix64(seed)
    side = [rng.chance(0.5) for _ in range(n)]
    edges = [(u, v) for u, v in combinations(range(n), 2) if side[u] != side[v] and rng.chance(p)]
    return build_graph(n, edges)


def line_graph(h: Graph) -> Graph:
    """One vertex per edge of ``h`` (in sorted edge order); adjacent when the edges meet."""
    edges = h.edges()
    if not edges:
        raise NoEdges("the line graph of an edgeless graph is empty")
    at: dict[int, list[int]] = {}
    for i, (u, v) in enumerate(edges):
        at.setdefault(u, []).append(i)
        at.setdefault(v, []).append(i)
    pairs = {(i, j) for group in at.values() for i, j in combinations(group, 2)}
    return _assert_free(build_graph(len(edges), pairs), 3, "line_graph")


def find_triangle(g: Graph) -> tuple[int, int, int] | None:
    for u, v in g.edges():
        common = g.masks[u] & g.masks[v] & ~((2 << v) - 1)
        if common:
            return (u, v, next(bits(common)))
    return None


def complement_of_triangle_free(h: Graph) -> Graph:
    """Complement of a triangle-free graph; three independent neighbours would be a triangle of ``h``."""
    tri = find_triangle(h)
    if tri is not None:
        raise HasTriangle(tri)
    return _assert_free(h.complement(), 3, "complement_of_triangle_free")


def random_unit_interval(n: int, density: float, seed: int) -> Graph:
    """Unit intervals with left ends separated by ``(1 - density) * (1 + U)`` gaps, ids shuffled.

    Two intervals overlap when their left ends differ by less than 1, so
    density 1 gives ``K_n`` and density 0 the edgeless graph.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    rng = SplitMix64(seed)
    xs = [0.0]
    for _ in range(n - 1):
        xs.append(xs[-1] + (1.0 - density) * (1.0 + rng.random()))
    order = list(range(n))
    rng.shuffle(order)
    edges = [(order[i], order[j]) for i, j in combinations(range(n), 2) if xs[j] - xs[i] < 1.0]
    return _assert_free(build_graph(n, edges), 3, "random_unit_interval")


def random_tclawfree(
    n: int,
    t: int,
    seed: int,
    cliques: int | None = None,
    noise: float = 0.05,
) -> Graph:
    """Random graph with no induced ``K_{1,t}``.

    Each vertex joins at most ``t - 1`` random cliques, so every
    neighbourhood is a union of ``t - 1`` cliques.  A few noise edges
    are added on top; attempts that create a ``K_{1,t}`` are rejected.
    """
    if t < 3:
        raise ValueError("t must be at least 3")
    if n < 1:
        raise ValueError("n must be positive")
    rng = SplitMix64(seed)
    count = cliques if cliques is not None else max(1, n // 2)
    for _ in range(MAX_RETRIES):
        members: list[set[int]] = [set() for _ in range(count)]
        for v in range(n):
            for c in rng.sample(range(count), min(count, rng.between(1, t - 1))):
                members[c].add(v)
        edges = {(u, v) for group in members for u, v in combinations(sorted(group), 2)}
        for u, v in combinations(range(n), 2):
            if rng.chance(noise):
                edges.add((u, v))
        g = build_graph(n, edges)
        if find_induced_star(g, t) is None:
            return g
    raise GenerationFailed(f"no K_1,{t}-free graph after {MAX_RETRIES} attempts (n={n}, seed={seed})")


def random_red_blue(n_red: int, n_blue: int, p: float, k: int, seed: int) -> RedBlueInstance:
    rng = SplitMix64(seed)
    edges = [(r, b) for r in range(n_red) for b in range(n_blue) if rng.chance(p)]
    return red_blue(n_red, n_blue, edges, k)
