"""k-Clique on graphs without an induced ``K_{1,t}``.

A vertex whose degree reaches ``(k+t-2)^(t-1)`` must see a ``(k-1)``-clique:
its neighbourhood has no independent set of size ``t``, and Ramsey's bound
then forces the clique.  Every other vertex has a small neighbourhood in
which all ``(k-1)``-subsets can be tried.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass

from .errors import InternalContradiction, NotTClawFree
from .graph import Graph, bits, find_induced_star, is_clique, popcount

INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class CliqueQuery:
    t: int
    k: int

    def __post_init__(self):
        if self.t < 1 or self.k < 1:
            raise ValueError(f"need t >= 1 and k >= 1, got t={self.t}, k={self.k}")

    @property
    def threshold(self) -> int:
        return ramsey_threshold(self.t, self.k)


def ramsey_threshold(t: int, k: int) -> int:
    """``(k + t - 2) ** (t - 1)``, refusing values beyond a signed 64-bit integer."""
    if t < 1 or k < 1:
        raise ValueError(f"need t >= 1 and k >= 1, got t={t}, k={k}")
    value = (k + t - 2) ** (t - 1)
    if value > INT64_MAX:
        raise OverflowError(f"threshold for t={t}, k={k} exceeds 64 bits")
    return value


def cliques_in(g: Graph, pool: int, size: int) -> Iterator[tuple[int, ...]]:
    """Cliques of ``size`` vertices inside ``pool``, in colexicographic order.

    A partial set is dropped as soon as it contains a non-edge: candidates
    for the next (smaller) element are restricted to common neighbours.
    """
    if size == 0:
        yield ()
        return
    chosen: list[int] = []

    def rec(cand: int, need: int) -> Iterator[tuple[int, ...]]:
        if need == 0:
            yield tuple(sorted(chosen))
            return
        for v in bits(cand):
            below = cand & ((1 << v) - 1)
            if popcount(below) < need - 1:
                continue
            chosen.append(v)
            yield from rec(below & g.masks[v], need - 1)
            chosen.pop()

    yield from rec(pool, size)


def heavy_vertices(g: Graph, t: int, k: int) -> list[int]:
    threshold = ramsey_threshold(t, k)
    return [v for v in range(g.n) if g.degree(v) >= threshold]


def find_k_clique_tclawfree(g: Graph, t: int, k: int) -> frozenset[int] | None:
    """A verified ``k``-clique of ``g``, or ``None``; ``g`` must be ``K_{1,t}``-free."""
    query = CliqueQuery(t, k)
    star = find_induced_star(g, t)
    if star is not None:
        raise NotTClawFree(star[0], star[1])
    threshold = query.threshold
    for v in range(g.n):
        deg = g.degree(v)
        if deg < k - 1:
            continue
        found = next(cliques_in(g, g.masks[v], k - 1), None)
        if found is None:
            if deg >= threshold:
                raise InternalContradiction(f"vertex {v} of degree {deg} sees no {k - 1}-clique")
            continue
        witness = frozenset(found) | {v}
        if len(witness) != k or not is_clique(g, witness):
            raise InternalContradiction("clique witness failed verification")
        return witness
    return None
