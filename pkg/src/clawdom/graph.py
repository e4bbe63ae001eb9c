"""Immutable undirected graphs over dense vertex ids backed by adjacency bitsets.

Vertex sets cross the public API as ``frozenset[int]``; internally every
neighbourhood is a Python ``int`` used as a bitset (bit ``v`` set means vertex
``v`` is present).  Both views are available on :class:`Graph`.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field

from .errors import EndpointOutOfRange, SelfLoop

VertexSet = frozenset


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def to_set(mask: int) -> frozenset[int]:
    return frozenset(bits(mask))


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    ``labels[i]`` is the original id of vertex ``i`` when the graph was
    obtained as an induced subgraph; ``None`` means the identity map.
    """

    n: int
    masks: tuple[int, ...]
    labels: tuple[int, ...] | None = None
    _m: int = field(default=-1, repr=False, compare=False)

    def __post_init__(self):
        if len(self.masks) != self.n:
            raise ValueError("one adjacency mask per vertex is required")
        if self._m < 0:
            object.__setattr__(self, "_m", sum(popcount(x) for x in self.masks) // 2)

    @property
    def m(self) -> int:
        return self._m

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def neighbors(self, v: int) -> frozenset[int]:
        return to_set(self.masks[v])

    def closed(self, v: int) -> int:
        """Closed neighbourhood of ``v`` as a mask."""
        return self.masks[v] | (1 << v)

    def closed_of(self, mask: int) -> int:
        """``N[X]`` for the vertex set ``X`` given as a mask."""
        out = mask
        for v in bits(mask):
            out |= self.masks[v]
        return out

    def degree(self, v: int) -> int:
        return popcount(self.masks[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        """All edges as ``(min, max)`` pairs, sorted."""
        return [(u, v) for u in range(self.n) for v in bits(self.masks[u] >> (u + 1) << (u + 1))]

    def label(self, v: int) -> int:
        return v if self.labels is None else self.labels[v]

    def original(self, vertices: Iterable[int]) -> frozenset[int]:
        return frozenset(self.label(v) for v in vertices)

    def complement(self) -> Graph:
        full = self.full
        return Graph(self.n, tuple(full & ~self.masks[v] & ~(1 << v) for v in range(self.n)), self.labels)


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from an edge list; repeated or reversed pairs are merged."""
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    masks = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise EndpointOutOfRange(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return Graph(n, tuple(masks))


def from_masks(masks: Iterable[int], labels: Iterable[int] | None = None) -> Graph:
    masks = tuple(masks)
    return Graph(len(masks), masks, None if labels is None else tuple(labels))


def _as_mask(S) -> int:
    return S if isinstance(S, int) else to_mask(S)


def is_clique(g: Graph, S) -> bool:
    mask = _as_mask(S)
    return all(mask & ~g.closed(v) == 0 for v in bits(mask))


def is_independent(g: Graph, S) -> bool:
    mask = _as_mask(S)
    return all(mask & g.masks[v] == 0 for v in bits(mask))


def dominates(g: Graph, D, target=None) -> bool:
    """True iff every vertex of ``target`` (default: all of V) is in ``N[D]``."""
    covered = g.closed_of(_as_mask(D))
    want = g.full if target is None else _as_mask(target)
    return want & ~covered == 0


def induced_subgraph(g: Graph, S) -> Graph:
    """``G[S]`` with vertices renumbered densely in increasing id order.

    Labels always refer back to the ids of the *original* graph, so chains of
    induced subgraphs keep mapping to the root.
    """
    mask = _as_mask(S)
    keep = list(bits(mask))
    index = {v: i for i, v in enumerate(keep)}
    new_masks = []
    for v in keep:
        row = 0
        for u in bits(g.masks[v] & mask):
            row |= 1 << index[u]
        new_masks.append(row)
    return Graph(len(keep), tuple(new_masks), tuple(g.label(v) for v in keep))


def find_induced_star(g: Graph, t: int) -> tuple[int, frozenset[int]] | None:
    """Find an induced ``K_{1,t}``: a vertex with ``t`` pairwise nonadjacent neighbours.

    Returns the lowest center and, for it, the lexicographically least leaf
    set, or ``None`` when the graph is ``t``-claw-free.
    """
    if t < 1:
        raise ValueError("star order t must be at least 1")
    masks = g.masks

    def extend(chosen: list[int], cand: int) -> list[int] | None:
        if len(chosen) == t:
            return chosen
        if popcount(cand) < t - len(chosen):
            return None
        for v in bits(cand):
            # only later candidates, nonadjacent to v
            rest = cand & ~masks[v] & ~((2 << v) - 1)
            found = extend(chosen + [v], rest)
            if found is not None:
                return found
        return None

    for c in range(g.n):
        if popcount(masks[c]) < t:
            continue
        leaves = extend([], masks[c])
        if leaves is not None:
            return c, frozenset(leaves)
    return None


def is_t_claw_free(g: Graph, t: int) -> bool:
    return find_induced_star(g, t) is None


def connected_components(g: Graph, within: int | None = None) -> list[int]:
    """Components of ``G[within]`` as masks, ordered by their lowest vertex."""
    rest = g.full if within is None else within
    comps = []
    while rest:
        seed = rest & -rest
        comp = frontier = seed
        while frontier:
            grow = 0
            for v in bits(frontier):
                grow |= g.masks[v]
            grow &= rest & ~comp
            comp |= grow
            frontier = grow
        comps.append(comp)
        rest &= ~comp
    return comps
