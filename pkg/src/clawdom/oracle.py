"""Brute-force reference solvers.

These are deliberately naive: plain subset enumeration in increasing size
and then lexicographic order, with the answer re-verified before it is
returned.  They are the ground truth the clever algorithms are tested against.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb

from .errors import InstanceTooLarge, InternalContradiction
from .graph import Graph, bits, dominates, is_clique, is_independent, to_mask

# 2**24 subsets is a full sweep of a 24-vertex graph
MAX_DOMINATION_SUBSETS = 1 << 24
MAX_CLIQUE_N = 32


@dataclass(frozen=True)
class OracleAnswer:
    feasible: bool
    witness: frozenset[int] | None = None
    optimum: int | None = None

    def __post_init__(self):
        if self.feasible and self.witness is None:
            raise ValueError("a feasible answer needs a witness")


def _guard_subsets(n: int, kmax: int) -> None:
    total = sum(comb(n, i) for i in range(kmax + 1))
    if total > MAX_DOMINATION_SUBSETS:
        raise InstanceTooLarge(f"{total} candidate subsets (n={n}, kmax={kmax}) exceed the oracle budget")


def _smallest(g: Graph, kmax: int, accept) -> OracleAnswer:
    if kmax < 0:
        return OracleAnswer(False)
    kmax = min(kmax, g.n)
    _guard_subsets(g.n, kmax)
    full = g.full
    masks = g.masks
    for size in range(kmax + 1):
        for combo in combinations(range(g.n), size):
            covered = 0
            for v in combo:
                covered |= masks[v] | (1 << v)
            if covered == full and accept(combo):
                witness = frozenset(combo)
                if not dominates(g, witness):
                    raise InternalContradiction("oracle witness does not dominate")
                return OracleAnswer(True, witness, size)
    return OracleAnswer(False)


def brute_mds(g: Graph, kmax: int) -> OracleAnswer:
    """Least minimum dominating set among sets of size at most ``kmax``."""
    return _smallest(g, kmax, lambda combo: True)


def brute_mids(g: Graph, kmax: int) -> OracleAnswer:
    """Least minimum *independent* dominating set of size at most ``kmax``."""
    answer = _smallest(g, kmax, lambda combo: is_independent(g, combo))
    if answer.feasible and not is_independent(g, answer.witness):
        raise InternalContradiction("oracle witness is not independent")
    return answer


def brute_max_clique(g: Graph) -> OracleAnswer:
    """Maximum clique by exhaustive extension; the witness is lexicographically least."""
    if g.n > MAX_CLIQUE_N:
        raise InstanceTooLarge(f"n={g.n} exceeds the clique oracle bound {MAX_CLIQUE_N}")
    if g.n == 0:
        return OracleAnswer(True, frozenset(), 0)
    best: list[int] = []

    def grow(chosen: list[int], cand: int) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        for v in bits(cand):
            chosen.append(v)
            grow(chosen, cand & g.masks[v] & ~((2 << v) - 1))
            chosen.pop()

    grow([], g.full)
    witness = frozenset(best)
    if not is_clique(g, witness):
        raise InternalContradiction("oracle clique witness is not a clique")
    return OracleAnswer(True, witness, len(best))


def brute_rbds(rb, k: int, colourful: bool | None = None) -> OracleAnswer:
    """Red-blue domination: a set of reds dominating every blue.

    The plain variant looks for at most ``k`` reds (equivalently exactly ``k``
    when ``|R| >= k``).  The colourful variant, used by default when the
    instance carries colours, needs one red of every colour ``1..k``.
    """
    g = rb.graph
    blues = to_mask(rb.blues)
    reds = sorted(rb.reds)
    if colourful is None:
        colourful = rb.colors is not None

    def covers(combo) -> bool:
        covered = 0
        for r in combo:
            covered |= g.masks[r]
        return blues & ~covered == 0

    if colourful:
        if rb.colors is None:
            raise ValueError("colourful search needs a colouring")
        classes = [[r for r in reds if rb.colors[r] == c] for c in range(1, k + 1)]
        total = 1
        for cls in classes:
            total *= len(cls)
        if total > MAX_DOMINATION_SUBSETS:
            raise InstanceTooLarge(f"{total} colourful selections exceed the oracle budget")
        for combo in product(*classes):
            if covers(combo):
                return OracleAnswer(True, frozenset(combo), len(combo))
        return OracleAnswer(False)

    kmax = min(max(k, -1), len(reds))
    if kmax < 0:
        return OracleAnswer(False)
    _guard_subsets(len(reds), kmax)
    for size in range(kmax + 1):
        for combo in combinations(reds, size):
            if covers(combo):
                return OracleAnswer(True, frozenset(combo), size)
    return OracleAnswer(False)
