"""Packs: the partition of ``V \\ I`` by neighbourhood in a maximum independent set.

A pack is keyed by the tuple of its legs: ``(a,)`` for the 1-pack ``V_a`` and
``(a, b)`` with ``a < b`` for the 2-pack ``V_{a,b}``.  Sorting keys gives the
canonical order used everywhere for deterministic branching.

1-pack vertices are further split by how many *other* 1-packs they see:
T0 (none), T1 (exactly one) and T2 (two or more).  Clusters are the
connected components of the T2 vertices under edges between different
1-packs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ClawWitness, NotMaximal, StructureViolation
from .graph import (
    Graph,
    bits,
    connected_components,
    find_induced_star,
    from_masks,
    is_clique,
    to_mask,
    to_set,
)

PackKey = tuple


@dataclass(frozen=True)
class PackDecomposition:
    independent_set: frozenset[int]
    one_packs: dict[int, frozenset[int]]
    two_packs: dict[tuple[int, int], frozenset[int]]
    vertex_to_pack: dict[int, PackKey]
    pack_masks: dict[PackKey, int] = field(repr=False)

    @property
    def keys(self) -> list[PackKey]:
        """All nonempty packs in canonical order."""
        return sorted(self.pack_masks)

    def members(self, key: PackKey) -> frozenset[int]:
        return to_set(self.pack_masks.get(key, 0))

    def mask(self, key: PackKey) -> int:
        return self.pack_masks.get(key, 0)

    def packs_with_leg(self, a: int) -> list[PackKey]:
        return [key for key in self.keys if a in key]


def decompose_packs(g: Graph, I) -> PackDecomposition:
    I = frozenset(I)
    imask = to_mask(I)
    one: dict[int, set[int]] = {}
    two: dict[tuple[int, int], set[int]] = {}
    where: dict[int, PackKey] = {}
    for v in range(g.n):
        if v in I:
            continue
        legs = tuple(bits(g.masks[v] & imask))
        if not legs:
            raise NotMaximal(v)
        if len(legs) > 2:
            raise ClawWitness(v, legs[:3])
        if len(legs) == 1:
            one.setdefault(legs[0], set()).add(v)
        else:
            two.setdefault(legs, set()).add(v)
        where[v] = legs
    one_f = {a: frozenset(s) for a, s in sorted(one.items())}
    two_f = {ab: frozenset(s) for ab, s in sorted(two.items())}
    pack_masks = {(a,): to_mask(s) for a, s in one_f.items()}
    pack_masks.update({ab: to_mask(s) for ab, s in two_f.items()})
    return PackDecomposition(I, one_f, two_f, where, pack_masks)


@dataclass(frozen=True)
class OnePackClassification:
    t0: dict[int, frozenset[int]]
    t1: dict[tuple[int, int], frozenset[int]]
    t2: dict[int, frozenset[int]]
    clusters: list[frozenset[int]]
    cluster_of: dict[int, int] = field(repr=False)
    t0_masks: dict[int, int] = field(repr=False)
    t1_masks: dict[tuple[int, int], int] = field(repr=False)
    t2_masks: dict[int, int] = field(repr=False)
    cluster_masks: list[int] = field(repr=False)

    def t1_mask(self, a: int, b: int) -> int:
        return self.t1_masks.get((a, b), 0)

    def t1_partners(self, a: int) -> list[int]:
        return sorted(b for (x, b) in self.t1_masks if x == a)


def _claw(g: Graph):
    star = find_induced_star(g, 3)
    return None if star is None else (star[0], tuple(sorted(star[1])))


def classify_one_packs(g: Graph, pd: PackDecomposition) -> OnePackClassification:
    one_masks = {a: pd.mask((a,)) for a in pd.one_packs}
    t0: dict[int, int] = {}
    t1: dict[tuple[int, int], int] = {}
    t2: dict[int, int] = {}
    for a, pack in one_masks.items():
        for v in bits(pack):
            seen = [b for b, other in one_masks.items() if b != a and g.masks[v] & other]
            if not seen:
                t0[a] = t0.get(a, 0) | 1 << v
            elif len(seen) == 1:
                key = (a, seen[0])
                t1[key] = t1.get(key, 0) | 1 << v
            else:
                t2[a] = t2.get(a, 0) | 1 << v

    t2_all = 0
    for m in t2.values():
        t2_all |= m
    pack_of = pd.vertex_to_pack
    # G_T2: T2 vertices, edges only between different 1-packs
    cross = []
    for v in range(g.n):
        if t2_all >> v & 1:
            row = 0
            for u in bits(g.masks[v] & t2_all):
                if pack_of[u] != pack_of[v]:
                    row |= 1 << u
            cross.append(row)
        else:
            cross.append(0)
    comps = connected_components(from_masks(cross), t2_all)
    cluster_of = {v: i for i, comp in enumerate(comps) for v in bits(comp)}

    # tone-tone: N(T1(a,b)) ∩ V_b = T1(b,a), and N(T2(a)) ∩ V_b ⊆ T2(b)
    for (a, b), m in t1.items():
        seen = g.closed_of(m) & one_masks[b]
        if seen != t1.get((b, a), 0):
            raise StructureViolation(f"T1 reciprocity fails for packs {a} and {b}", _claw(g))
    for a, m in t2.items():
        for b, other in one_masks.items():
            if b != a and g.closed_of(m) & other & ~t2.get(b, 0):
                raise StructureViolation(f"T2 vertices of pack {a} see non-T2 vertices of pack {b}", _claw(g))
    for comp in comps:
        if not is_clique(g, comp):
            raise StructureViolation("a cluster does not induce a clique", _claw(g))

    def as_sets(d):
        return {key: to_set(m) for key, m in sorted(d.items())}

    return OnePackClassification(
        t0=as_sets(t0),
        t1=as_sets(t1),
        t2=as_sets(t2),
        clusters=[to_set(c) for c in comps],
        cluster_of=cluster_of,
        t0_masks=dict(sorted(t0.items())),
        t1_masks=dict(sorted(t1.items())),
        t2_masks=dict(sorted(t2.items())),
        cluster_masks=comps,
    )


def cluster_domination_profile(g: Graph, pd: PackDecomposition, cls: OnePackClassification, v: int) -> frozenset[int]:
    """``N[v] \\ N[a]`` for a T2 vertex ``v`` of ``V_a``; equals ``C \\ V_a`` for its cluster ``C``."""
    if v not in cls.cluster_of:
        raise ValueError(f"vertex {v} is not a T2 vertex")
    (a,) = pd.vertex_to_pack[v]
    profile = g.closed(v) & ~g.closed(a)
    cluster = cls.cluster_masks[cls.cluster_of[v]]
    if profile != cluster & ~pd.mask((a,)):
        raise StructureViolation(f"domination profile of {v} differs from its cluster", _claw(g))
    return to_set(profile)


def pack_invariant_violations(g: Graph, pd: PackDecomposition) -> list[str]:
    """Check the pack structure directly; returns human-readable violations."""
    problems = []
    covered = 0
    for key, m in pd.pack_masks.items():
        if covered & m:
            problems.append(f"pack {key} overlaps another pack")
        covered |= m
        imask = to_mask(pd.independent_set)
        for v in bits(m):
            if tuple(bits(g.masks[v] & imask)) != key:
                problems.append(f"vertex {v} in pack {key} has the wrong I-neighbourhood")
        if len(key) == 1 and not is_clique(g, m):
            problems.append(f"1-pack {key} is not a clique")
    if covered != g.full & ~to_mask(pd.independent_set):
        problems.append("packs do not cover V \\ I")
    # a 2-pack only sees packs sharing one of its legs
    for u, v in g.edges():
        pu, pv = pd.vertex_to_pack.get(u), pd.vertex_to_pack.get(v)
        if pu is None or pv is None or pu == pv:
            continue
        if (len(pu) == 2 or len(pv) == 2) and not set(pu) & set(pv):
            problems.append(f"edge {u}-{v} joins packs {pu} and {pv} without a common leg")
    return problems


def dump_packs(g: Graph, pd: PackDecomposition) -> list[str]:
    """Debug lines ``pack 1 <a>: v...`` / ``pack 2 <a> <b>: v...`` in 1-based original ids."""
    lines = []
    for key in pd.keys:
        legs = " ".join(str(g.label(x) + 1) for x in key)
        members = " ".join(str(g.label(v) + 1) for v in bits(pd.mask(key)))
        lines.append(f"pack {len(key)} {legs}: {members}")
    return lines
