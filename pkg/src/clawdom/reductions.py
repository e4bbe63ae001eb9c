"""Reduction gadgets: Red-Blue Dominating Set to Dominating Set on 4-claw-free graphs.

The chain is

* red-blue instance ``(R, B, k)``  ->  colourful instance with ``k`` coloured
  copies of ``R`` (a solution needs one red of each colour);
* colourful instance  ->  graph where ``R`` and ``B`` are cliques and colour
  ``i`` gets an apex adjacent to exactly its reds.

Every apex forces one solution vertex into its closed neighbourhood, so
a size-``k`` dominating set has one vertex per colour and none in ``B``.
Vertex layout of the final graph: blues ``0..|B|-1``, then reds, then
apexes in colour order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalContradiction, LiftFailed
from .graph import Graph, build_graph, dominates, find_induced_star, to_mask


@dataclass(frozen=True)
class RedBlueInstance:
    graph: Graph
    reds: frozenset[int]
    blues: frozenset[int]
    k: int
    colors: dict | None = None

    def __post_init__(self):
        if self.reds & self.blues or (self.reds | self.blues) != frozenset(range(self.graph.n)):
            raise ValueError("reds and blues must partition the vertices")
        for u, v in self.graph.edges():
            if (u in self.reds) == (v in self.reds):
                raise ValueError(f"edge {u}-{v} does not join a red and a blue vertex")
        if self.k < 0:
            raise ValueError("k must be nonnegative")
        if self.colors is not None:
            if set(self.colors) != set(self.reds):
                raise ValueError("colouring must cover exactly the red vertices")
            if any(not 1 <= c <= self.k for c in self.colors.values()):
                raise ValueError(f"colours must lie in 1..{self.k}")

    @property
    def n_red(self) -> int:
        return len(self.reds)

    @property
    def n_blue(self) -> int:
        return len(self.blues)

    def colour_class(self, c: int) -> list[int]:
        return sorted(r for r in self.reds if self.colors[r] == c)


def red_blue(n_red: int, n_blue: int, edges, k: int, colors: dict | None = None) -> RedBlueInstance:
    """Instance with reds ``0..n_red-1`` and blues ``n_red..``; ``edges`` are (red, blue index) pairs."""
    graph = build_graph(n_red + n_blue, [(r, n_red + b) for r, b in edges])
    return RedBlueInstance(graph, frozenset(range(n_red)), frozenset(range(n_red, n_red + n_blue)), k, colors)


@dataclass(frozen=True)
class ReductionCertificate:
    """Explicit id tables between the source and the target of a reduction.

    ``backward_map[target_id]`` is the source id (or ``None`` for an added
    vertex); ``forward_map[source_id]`` lists the target ids it became.
    """

    forward_map: tuple[tuple[int, ...], ...]
    backward_map: tuple[int | None, ...]


@dataclass(frozen=True)
class ColourfulResult:
    instance: RedBlueInstance | None
    certificate: ReductionCertificate | None
    shortcut: bool | None = None


def rbds_to_crbds(inst: RedBlueInstance) -> ColourfulResult:
    """Colour ``k`` copies of the reds; tiny ``R`` (or ``k = 0``) is answered directly."""
    k = inst.k
    reds = sorted(inst.reds)
    blues = sorted(inst.blues)
    if k == 0:
        return ColourfulResult(None, None, shortcut=not blues)
    if len(reds) < k:
        all_reds = to_mask(reds)
        covered = all(inst.graph.masks[b] & all_reds for b in blues)
        return ColourfulResult(None, None, shortcut=covered)
    nr = len(reds)
    red_index = {r: i for i, r in enumerate(reds)}
    blue_index = {b: j for j, b in enumerate(blues)}
    edges = []
    for r, b in inst.graph.edges():
        if r in inst.blues:
            r, b = b, r
        for copy in range(k):
            edges.append((copy * nr + red_index[r], blue_index[b]))
    colors = {copy * nr + i: copy + 1 for copy in range(k) for i in range(nr)}
    out = red_blue(k * nr, len(blues), edges, k, colors)
    backward = tuple(reds[i % nr] for i in range(k * nr)) + tuple(blues)
    forward: list[tuple[int, ...]] = [()] * inst.graph.n
    for r in reds:
        forward[r] = tuple(copy * nr + red_index[r] for copy in range(k))
    for b in blues:
        forward[b] = (k * nr + blue_index[b],)
    return ColourfulResult(out, ReductionCertificate(tuple(forward), backward))


@dataclass(frozen=True)
class DsReduction:
    graph: Graph
    k: int
    certificate: ReductionCertificate
    blue_range: range
    red_range: range
    apex_range: range
    colour_of: dict

    def apex(self, c: int) -> int:
        return self.apex_range[c - 1]

    def colour_class(self, c: int) -> list[int]:
        return [v for v in self.red_range if self.colour_of[v] == c]


def crbds_to_ds(inst: RedBlueInstance) -> DsReduction:
    """Graph whose size-``k`` dominating sets are the colourful solutions (plus apexes)."""
    if inst.colors is None:
        raise ValueError("the instance needs a colouring")
    k = inst.k
    for c in range(1, k + 1):
        if not inst.colour_class(c):
            raise ValueError(f"colour class {c} is empty")
    reds = sorted(inst.reds)
    blues = sorted(inst.blues)
    nb, nr = len(blues), len(reds)
    new_id = {b: j for j, b in enumerate(blues)}
    new_id.update({r: nb + i for i, r in enumerate(reds)})
    apex0 = nb + nr
    edges = []
    for group in (range(nb), range(nb, nb + nr)):
        edges += [(u, v) for u in group for v in group if u < v]
    edges += [(new_id[u], new_id[v]) for u, v in inst.graph.edges()]
    colour_of = {}
    for r in reds:
        c = inst.colors[r]
        colour_of[new_id[r]] = c
        edges.append((new_id[r], apex0 + c - 1))
    g = build_graph(apex0 + k, edges)
    star = find_induced_star(g, 4)
    if star is not None:
        raise InternalContradiction(f"reduced graph has an induced K_1,4 at {star[0]}")
    backward: list[int | None] = [None] * g.n
    forward: list[tuple[int, ...]] = [()] * inst.graph.n
    for old, new in new_id.items():
        backward[new] = old
        forward[old] = (new,)
    cert = ReductionCertificate(tuple(forward), tuple(backward))
    return DsReduction(
        g, k, cert, range(nb), range(nb, nb + nr), range(apex0, apex0 + k), colour_of
    )


def lift_ds_solution(D, red: DsReduction, inst: RedBlueInstance) -> frozenset[int]:
    """Turn a size-``k`` dominating set of the reduced graph into a colourful solution of ``inst``.

    Apexes are replaced by the least reduced id of their colour class.
    """
    D = frozenset(D)
    if len(D) != red.k or not dominates(red.graph, D):
        raise LiftFailed("input is not a size-k dominating set of the reduced graph")
    picked = set()
    for v in D:
        if v in red.apex_range:
            v = red.colour_class(v - red.apex_range.start + 1)[0]
        elif v not in red.red_range:
            raise LiftFailed(f"solution vertex {v} is blue")
        picked.add(red.certificate.backward_map[v])
    lifted = frozenset(picked)
    colours = {inst.colors[r] for r in lifted}
    blue_mask = to_mask(inst.blues)
    covered = 0
    for r in lifted:
        covered |= inst.graph.masks[r]
    if len(lifted) != red.k or colours != set(range(1, red.k + 1)) or blue_mask & ~covered:
        raise LiftFailed(f"lifted set {sorted(lifted)} is not a colourful red-blue dominating set")
    return lifted


def lift_colourful_solution(D, result: ColourfulResult, source: RedBlueInstance) -> frozenset[int]:
    """Map a colourful solution back to the uncoloured source instance."""
    reds = frozenset(result.certificate.backward_map[r] for r in D)
    covered = 0
    for r in reds:
        covered |= source.graph.masks[r]
    if len(reds) > source.k or to_mask(source.blues) & ~covered:
        raise LiftFailed(f"{sorted(reds)} does not dominate the blues of the source")
    return reds
