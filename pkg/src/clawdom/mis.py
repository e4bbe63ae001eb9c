"""Exact maximum independent set by branch and bound.

The FPT solver only needs *some* maximum independent set of a claw-free
graph.  This oracle works on any graph; it is exponential in the worst case
but fast at the sizes the package targets.
"""

from __future__ import annotations

import enum

from .errors import InstanceTooLarge
from .graph import Graph, bits, lowest, popcount, to_set

DEFAULT_MAX_N = 512


class MisStrategy(enum.Enum):
    EXACT_BRANCH_AND_BOUND = "exact-branch-and-bound"


def _clique_cover_bound(masks: tuple[int, ...], cand: int) -> int:
    """Size of a greedy clique cover of ``cand``; bounds any independent set in it."""
    count = 0
    while cand:
        v = lowest(cand)
        clique = 1 << v
        common = masks[v] & cand
        while common:
            u = lowest(common)
            clique |= 1 << u
            common &= masks[u]
        cand &= ~clique
        count += 1
    return count


def maximum_independent_set(
    g: Graph,
    strategy: MisStrategy = MisStrategy.EXACT_BRANCH_AND_BOUND,
    max_n: int = DEFAULT_MAX_N,
) -> frozenset[int]:
    """Return the lexicographically least maximum independent set of ``g``.

    Branches on the lowest undecided vertex, "take it" before "skip it", and
    only accepts strictly larger sets, so the first maximum set found is the
    lexicographically least one.
    """
    if strategy is not MisStrategy.EXACT_BRANCH_AND_BOUND:
        raise ValueError(f"unsupported strategy {strategy}")
    if g.n > max_n:
        raise InstanceTooLarge(f"n={g.n} exceeds the MIS bound {max_n}")
    masks = g.masks
    best_mask = 0
    best_size = 0

    # greedy lower bound in id order is itself the "take-first" leftmost leaf
    greedy = 0
    cand = g.full
    while cand:
        v = lowest(cand)
        greedy |= 1 << v
        cand &= ~masks[v] & ~(1 << v)
    best_mask, best_size = greedy, popcount(greedy)

    def search(chosen: int, size: int, cand: int) -> None:
        nonlocal best_mask, best_size
        if not cand:
            if size > best_size:
                best_mask, best_size = chosen, size
            return
        if size + popcount(cand) <= best_size:
            return
        if size + _clique_cover_bound(masks, cand) <= best_size:
            return
        v = lowest(cand)
        bit = 1 << v
        search(chosen | bit, size + 1, cand & ~masks[v] & ~bit)
        # a vertex with no candidate neighbour belongs to every maximum completion
        if masks[v] & cand:
            search(chosen, size, cand & ~bit)

    search(0, 0, g.full)
    return to_set(best_mask)


def is_maximal_independent(g: Graph, S) -> bool:
    mask = S if isinstance(S, int) else sum(1 << v for v in S)
    for v in bits(mask):
        if g.masks[v] & mask:
            return False
    return g.closed_of(mask) == g.full
