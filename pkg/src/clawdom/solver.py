"""Branching FPT algorithm for k-Dominating Set on claw-free graphs.

Outline of one search level (a graph, a budget ``k`` and the vertices
already committed by earlier levels):

1. take a maximum independent set ``I``; ``|I| <= k`` answers YES and
   ``|I| > 2k`` answers NO;
2. branch on a vertex of ``I`` in the solution (delete its closed
   neighbourhood, recurse with ``k - 1``) or on the solution avoiding ``I``;
3. in the second case guess the family ``B`` of packs holding the solution
   and maintain an Active/Passive/Done partition of the vertices: Active
   vertices may still be picked, Passive ones still need a dominator, Done
   ones are taken care of;
4. shrink the partition with safe moves and bounded guesses until a binary
   CSP of maximum degree two describes what is left, then solve that CSP.

Step numbers in :class:`GuessRecord` follow the numbering of the original
algorithm description (3 = branch on ``I``, 4 = pack family, 11-16 = 1-pack
guesses, 19 = domination guess, 20 = two-clique split).
"""

from __future__ import annotations

import enum
import os
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field, replace
from itertools import combinations

from .csp import build_csp, dominator_packs, merge_parallel_constraints, passive_packs, solve_degree2
from .errors import BudgetNegative, InternalContradiction, NotClawFree
from .graph import (
    Graph,
    bits,
    connected_components,
    dominates,
    find_induced_star,
    from_masks,
    induced_subgraph,
    is_clique,
    lowest,
    to_mask,
)
from .mis import maximum_independent_set
from .packs import OnePackClassification, PackDecomposition, classify_one_packs, decompose_packs
from .rng import SplitMix64


class VertexState(enum.Enum):
    ACTIVE = "active"
    PASSIVE = "passive"
    DONE = "done"


@dataclass(frozen=True)
class GuessRecord:
    step: int
    choice: str

    def line(self, depth: int) -> str:
        return f"step={self.step} choice={self.choice} depth={depth}"


@dataclass(frozen=True)
class Solution:
    vertices: frozenset[int]
    kind: str = "dominating set"
    transcript: dict = field(default_factory=dict)


class Verdict:
    YES = "yes"
    NO = "no"
    CONTINUE = "continue"

    def __init__(self, kind: str, witness: frozenset[int] | None = None):
        self.kind = kind
        self.witness = witness

    def __eq__(self, other):
        return isinstance(other, Verdict) and (self.kind, self.witness) == (other.kind, other.witness)

    def __repr__(self):
        return f"Verdict({self.kind!r}, {self.witness!r})"


YES_NO_CONTINUE = (Verdict.YES, Verdict.NO, Verdict.CONTINUE)


@dataclass(frozen=True)
class BranchContext:
    """One node of the search.

    ``graph`` is the graph of the current level (an induced subgraph of
    ``root`` whose labels map back to root ids); ``forced`` holds root ids
    committed by earlier levels.  State masks are over the level graph.
    """

    graph: Graph
    k: int
    forced: frozenset[int]
    I: frozenset[int]
    pd: PackDecomposition
    cls: OnePackClassification
    root: Graph
    k_total: int
    B: tuple = ()
    active: int = 0
    passive: int = 0
    guess_log: tuple[GuessRecord, ...] = ()
    cluster_assignments: tuple = ()

    @property
    def family(self) -> frozenset:
        return frozenset(self.B)

    @property
    def imask(self) -> int:
        return to_mask(self.I)

    @property
    def done(self) -> int:
        return self.graph.full & ~(self.active | self.passive)

    def state(self, v: int) -> VertexState:
        if self.active >> v & 1:
            return VertexState.ACTIVE
        if self.passive >> v & 1:
            return VertexState.PASSIVE
        return VertexState.DONE

    def pack(self, key) -> int:
        return self.pd.mask(key)

    def family_with_leg(self, a: int) -> list:
        return [key for key in self.B if a in key]

    def tag(self, v: int) -> str:
        return str(self.graph.label(v) + 1)

    def key_text(self, key) -> str:
        return ",".join(self.tag(a) for a in key)

    def with_guess(self, step: int, choice: str, **changes) -> BranchContext:
        return replace(self, guess_log=self.guess_log + (GuessRecord(step, choice),), **changes)


def _to_done(ctx: BranchContext, mask: int) -> BranchContext:
    if not (ctx.active | ctx.passive) & mask:
        return ctx
    return replace(ctx, active=ctx.active & ~mask, passive=ctx.passive & ~mask)


# ---------------------------------------------------------------- levels


def make_level(
    graph: Graph,
    k: int,
    forced: frozenset[int] = frozenset(),
    root: Graph | None = None,
    k_total: int | None = None,
    guess_log: tuple = (),
) -> BranchContext:
    """Context at the start of a level: computes ``I`` and its pack structure."""
    I = maximum_independent_set(graph)
    pd = decompose_packs(graph, I)
    cls = classify_one_packs(graph, pd)
    return BranchContext(
        graph=graph,
        k=k,
        forced=forced,
        I=I,
        pd=pd,
        cls=cls,
        root=graph if root is None else root,
        k_total=k if k_total is None else k_total,
        guess_log=guess_log,
    )


def step_bounds(ctx: BranchContext) -> Verdict:
    """Small ``I`` is itself a dominating set; large ``I`` rules out a solution."""
    size = len(ctx.I)
    if size <= ctx.k:
        return Verdict(Verdict.YES, ctx.forced | ctx.graph.original(ctx.I))
    if size > 2 * ctx.k:
        return Verdict(Verdict.NO)
    return Verdict(Verdict.CONTINUE)


def branch_on_I(ctx: BranchContext) -> Iterator[BranchContext]:
    """One child level per vertex of ``I`` in the solution, then the ``I``-avoiding branch."""
    g = ctx.graph
    for v in sorted(ctx.I):
        sub = induced_subgraph(g, g.full & ~g.closed(v))
        log = ctx.guess_log + (GuessRecord(3, f"pick:{ctx.tag(v)}"),)
        forced = ctx.forced | {g.label(v)}
        if sub.n == 0 or ctx.k - 1 <= 0:
            # no pack structure needed: the child is decided by its size alone
            yield _leaf_level(sub, ctx.k - 1, forced, ctx, log)
        else:
            yield make_level(sub, ctx.k - 1, forced, ctx.root, ctx.k_total, log)
    yield ctx.with_guess(3, "disjoint")


def _leaf_level(sub: Graph, k: int, forced, parent: BranchContext, log) -> BranchContext:
    empty = frozenset()
    pd = PackDecomposition(empty, {}, {}, {}, {})
    cls = OnePackClassification({}, {}, {}, [], {}, {}, {}, {}, [])
    return BranchContext(sub, k, forced, empty, pd, cls, parent.root, parent.k_total, guess_log=log)


def enumerate_pack_families(ctx: BranchContext) -> Iterator[tuple]:
    """Families of at most ``k`` nonempty packs covering every vertex of ``I`` once or twice.

    Ordered by size, then lexicographically by the sorted pack keys.
    """
    keys = ctx.pd.keys
    legs = sorted(ctx.I)
    for r in range(1, min(ctx.k, len(keys)) + 1):
        counts = {a: 0 for a in legs}
        chosen: list = []

        def rec(start: int, uncovered: int) -> Iterator[tuple]:
            if len(chosen) == r:
                if uncovered == 0:
                    yield tuple(chosen)
                return
            remaining = r - len(chosen)
            if uncovered > 2 * remaining:
                return
            for idx in range(start, len(keys) - remaining + 1):
                key = keys[idx]
                if any(counts[a] >= 2 for a in key):
                    continue
                gained = sum(1 for a in key if counts[a] == 0)
                for a in key:
                    counts[a] += 1
                chosen.append(key)
                yield from rec(idx + 1, uncovered - gained)
                chosen.pop()
                for a in key:
                    counts[a] -= 1

        yield from rec(0, len(legs))


def init_partition(ctx: BranchContext, B) -> BranchContext:
    """Active = union of ``B``, Done = ``I``, Passive = the rest."""
    B = tuple(sorted(B))
    active = 0
    for key in B:
        active |= ctx.pd.mask(key)
    passive = ctx.graph.full & ~ctx.imask & ~active
    fam = "|".join(ctx.key_text(key) for key in B)
    return ctx.with_guess(4, f"family:{fam}", B=B, active=active, passive=passive, cluster_assignments=())


# ---------------------------------------------------------------- safe state


def propagate_safe_state(ctx: BranchContext) -> BranchContext:
    """Deterministic moves that make every dominating candidate dominate Active ∪ Done."""
    g = ctx.graph
    # a 1-pack vertex seeing nothing beyond N[a] is never needed
    for key in ctx.B:
        if len(key) == 1:
            (a,) = key
            useless = 0
            for v in bits(ctx.pack(key)):
                if g.closed(v) & ~g.closed(a) == 0:
                    useless |= 1 << v
            ctx = _to_done(ctx, useless)
    # an alone 2-pack must be dominated by its own chosen vertex
    for key in ctx.B:
        if len(key) == 2 and all(len(ctx.family_with_leg(a)) == 1 for a in key):
            pack = ctx.pack(key)
            bad = 0
            for v in bits(pack & ctx.active):
                if pack & ~g.closed(v):
                    bad |= 1 << v
            ctx = _to_done(ctx, bad)
    # two chosen vertices on a shared leg a dominate all of N[a]
    for a in sorted(ctx.I):
        if len(ctx.family_with_leg(a)) == 2:
            for key in ctx.pd.packs_with_leg(a):
                if key not in ctx.family:
                    ctx = _to_done(ctx, ctx.pack(key))
    return ctx


def check_liveness(ctx: BranchContext) -> Verdict:
    """NO when a guessed pack has no active vertex or a passive vertex has no active neighbour."""
    for key in ctx.B:
        if not ctx.pack(key) & ctx.active:
            return Verdict(Verdict.NO)
    masks = ctx.graph.masks
    for v in bits(ctx.passive):
        if not masks[v] & ctx.active:
            return Verdict(Verdict.NO)
    return Verdict(Verdict.CONTINUE)


def _alive(ctx: BranchContext) -> bool:
    return check_liveness(ctx).kind == Verdict.CONTINUE


# ---------------------------------------------------------------- 1-packs


def _outside_with_passive(ctx: BranchContext) -> list[int]:
    """Legs ``a`` whose 1-pack is outside ``B`` and still has passive vertices."""
    return [a for a in sorted(ctx.pd.one_packs) if (a,) not in ctx.family and ctx.pack((a,)) & ctx.passive]


def _unique_dominator(ctx: BranchContext, a: int) -> tuple:
    owners = ctx.family_with_leg(a)
    if len(owners) != 1 or len(owners[0]) != 2:
        raise InternalContradiction(f"1-pack {a} outside the family has owners {owners}")
    return owners[0]


def _guess_t_sets(ctx: BranchContext, legs: list[int]) -> Iterator[BranchContext]:
    if not legs:
        yield ctx
        return
    a, rest = legs[0], legs[1:]
    cls = ctx.cls
    options = [(f"T1:{ctx.tag(a)}>{ctx.tag(b)}", cls.t1_mask(a, b)) for b in cls.t1_partners(a)]
    options.append((f"T2:{ctx.tag(a)}", cls.t2_masks.get(a, 0)))
    pack = ctx.pack((a,))
    for text, part in options:
        if not part & ctx.active:
            continue
        child = _to_done(ctx, pack & ~part).with_guess(11, text)
        if _alive(child):
            yield from _guess_t_sets(child, rest)


def _extend_t0(ctx: BranchContext) -> BranchContext:
    """Only the 2-pack owner can dominate T0 and unreachable T1 parts of an outside 1-pack."""
    g, cls = ctx.graph, ctx.cls
    for a in _outside_with_passive(ctx):
        owner = _unique_dominator(ctx, a)
        ext = cls.t0_masks.get(a, 0)
        for c in cls.t1_partners(a):
            if not cls.t1_mask(c, a) & ctx.active:
                ext |= cls.t1_mask(a, c)
        need = ext & ctx.passive
        if not need:
            continue
        bad = 0
        for v in bits(ctx.pack(owner) & ctx.active):
            if need & ~g.closed(v):
                bad |= 1 << v
        ctx = _to_done(ctx, bad | need)
    return ctx


def _guess_t1_targets(ctx: BranchContext, legs: list[int]) -> Iterator[BranchContext]:
    if not legs:
        yield ctx
        return
    a, rest = legs[0], legs[1:]
    g, cls = ctx.graph, ctx.cls
    pack = ctx.pack((a,))
    if not pack & ctx.passive:
        yield from _guess_t1_targets(ctx, rest)
        return
    owner = _unique_dominator(ctx, a)
    (b,) = [x for x in owner if x != a]
    others = [c for c in cls.t1_partners(a) if c != b]
    if not any(cls.t1_mask(a, c) & ctx.passive for c in others):
        yield from _guess_t1_targets(ctx, rest)
        return
    owner_active = ctx.pack(owner) & ctx.active

    # the owner's chosen vertex sees some vertex of T1(a, c)
    for c in others:
        target = cls.t1_mask(a, c)
        keep = 0
        for v in bits(owner_active):
            if g.masks[v] & target:
                keep |= 1 << v
        if not keep:
            continue
        covered = pack & ~target & ctx.passive
        for v in bits(keep):
            if covered & ~g.closed(v):
                raise InternalContradiction(f"owner vertex {v} misses part of 1-pack {a} outside T1")
        child = _to_done(ctx, (owner_active & ~keep) | covered)
        child = child.with_guess(13, f"hit:{ctx.tag(a)}>{ctx.tag(c)}")
        if _alive(child):
            yield from _guess_t1_targets(child, rest)

    # the owner's chosen vertex sees none of them: each V_c must cover T1(a, c) itself
    every = 0
    for c in others:
        every |= cls.t1_mask(a, c)
    seeing = 0
    for v in bits(owner_active):
        if g.masks[v] & every:
            seeing |= 1 << v
    child = _to_done(ctx, seeing)
    dead = False
    for c in others:
        need = cls.t1_mask(a, c) & child.passive
        if not need:
            continue
        if (c,) not in child.family:
            dead = True
            break
        bad = 0
        for v in bits(child.pack((c,)) & child.active):
            if need & ~g.closed(v):
                bad |= 1 << v
        child = _to_done(child, bad | need)
    if not dead:
        child = child.with_guess(13, f"miss:{ctx.tag(a)}")
        if _alive(child):
            yield from _guess_t1_targets(child, rest)


def _guess_t2_owner(ctx: BranchContext, legs: list[int]) -> Iterator[BranchContext]:
    if not legs:
        yield ctx
        return
    a, rest = legs[0], legs[1:]
    g, cls = ctx.graph, ctx.cls
    t2 = cls.t2_masks.get(a, 0)
    if not (ctx.pack((a,)) & ctx.passive and t2 & ctx.passive):
        yield from _guess_t2_owner(ctx, rest)
        return
    owner = _unique_dominator(ctx, a)
    owner_active = ctx.pack(owner) & ctx.active
    spread = len({cls.cluster_of[v] for v in bits(t2)})
    step = 14 if spread >= 2 else 15
    full_cover = 0
    for v in bits(owner_active):
        if t2 & ~g.closed(v) == 0:
            full_cover |= 1 << v
        elif step == 14 and g.closed(v) & t2:
            raise InternalContradiction(f"owner vertex {v} sees part of a multi-cluster T2 set")
    dominating = _to_done(ctx, (owner_active & ~full_cover) | (t2 & ctx.passive))
    dominating = dominating.with_guess(step, f"covers:{ctx.tag(a)}")
    if _alive(dominating):
        yield from _guess_t2_owner(dominating, rest)
    missing = _to_done(ctx, full_cover).with_guess(step, f"misses:{ctx.tag(a)}")
    if _alive(missing):
        yield from _guess_t2_owner(missing, rest)


def _assign_clusters(ctx: BranchContext) -> Iterator[BranchContext]:
    pending = [i for i, c in enumerate(ctx.cls.cluster_masks) if c & ctx.passive]
    if len(pending) > ctx.k:
        return
    one_family = [key for key in ctx.B if len(key) == 1]

    def rec(c: BranchContext, idx: int, used: frozenset) -> Iterator[BranchContext]:
        if idx == len(pending):
            yield c
            return
        i = pending[idx]
        cluster = c.cls.cluster_masks[i]
        for key in one_family:
            if key in used:
                continue
            pack = c.pack(key)
            if not pack & cluster & c.active:
                continue
            child = _to_done(c, (pack & ~cluster) | (cluster & ~pack & c.passive))
            child = child.with_guess(
                16,
                f"cluster:{i}>{c.key_text(key)}",
                cluster_assignments=c.cluster_assignments + ((i, key),),
            )
            if _alive(child):
                yield from rec(child, idx + 1, used | {key})

    yield from rec(ctx, 0, frozenset())


def _useless_cluster_pack(ctx: BranchContext) -> bool:
    """A T2-restricted 1-pack guessed to dominate no cluster (the solution could use its leg)."""
    assigned = {key for _, key in ctx.cluster_assignments}
    for key in ctx.B:
        if len(key) == 1 and key not in assigned:
            act = ctx.pack(key) & ctx.active
            if act and act & ~ctx.cls.t2_masks.get(key[0], 0) == 0:
                return True
    return False


def _check_one_pack_end_state(ctx: BranchContext) -> None:
    cls = ctx.cls
    for a in ctx.pd.one_packs:
        pack = ctx.pack((a,))
        if (a,) in ctx.family:
            act = pack & ctx.active
            parts = [cls.t1_mask(a, b) for b in cls.t1_partners(a)] + list(cls.cluster_masks)
            if act and not any(act & ~part == 0 for part in parts):
                raise InternalContradiction(f"active part of 1-pack {a} is not inside one T1 set or cluster")
        else:
            pas = pack & ctx.passive
            parts = [cls.t1_mask(a, c) for c in cls.t1_partners(a)]
            if pas and not any(pas & ~part == 0 for part in parts):
                raise InternalContradiction(f"passive part of 1-pack {a} is not inside one T1 set")


def branch_one_packs(ctx: BranchContext) -> Iterator[BranchContext]:
    """All guesses about 1-packs, from choosing a T-part per guessed 1-pack to cluster owners."""
    one_family = [key[0] for key in ctx.B if len(key) == 1]
    for c11 in _guess_t_sets(ctx, one_family):
        c12 = _extend_t0(c11)
        if not _alive(c12):
            continue
        for c13 in _guess_t1_targets(c12, _outside_with_passive(c12)):
            for c15 in _guess_t2_owner(c13, _outside_with_passive(c13)):
                for c16 in _assign_clusters(c15):
                    if _useless_cluster_pack(c16) or not _alive(c16):
                        continue
                    _check_one_pack_end_state(c16)
                    yield c16


# ---------------------------------------------------------------- passive cleaning


def normalize_passive(ctx: BranchContext) -> BranchContext:
    """Exhaustively settle passive vertices that only one guessed pack can dominate."""
    g, pd = ctx.graph, ctx.pd
    active, passive = ctx.active, ctx.passive
    changed = True
    while changed:
        changed = False
        for v in bits(passive):
            nbrs = g.masks[v] & active
            if not nbrs:
                continue
            key = pd.vertex_to_pack[lowest(nbrs)]
            pack = pd.mask(key)
            if nbrs & ~pack:
                continue
            passive &= ~(1 << v)
            active &= ~(pack & active & ~g.closed(v))
            changed = True
    out = replace(ctx, active=active, passive=passive)
    if _alive(out):
        _check_two_dominators(out)
    return out


def _check_two_dominators(ctx: BranchContext) -> None:
    g = ctx.graph
    for w_key in passive_packs(ctx):
        doms = dominator_packs(ctx, w_key)
        if len(doms) != 2:
            raise InternalContradiction(f"pack {w_key} has {len(doms)} dominator packs")
        for v in bits(ctx.pack(w_key) & ctx.passive):
            for key in doms:
                if not g.masks[v] & ctx.pack(key) & ctx.active:
                    raise InternalContradiction(f"passive vertex {v} misses dominator pack {key}")
        for key in ctx.B:
            if set(key) & set(w_key) and key not in doms:
                raise InternalContradiction(f"pack {key} shares a leg with {w_key} but cannot dominate it")


# ---------------------------------------------------------------- domination guesses


def _near(ctx: BranchContext, x_key, w_key) -> int:
    """Active vertices of ``X`` with a neighbour in ``W ∩ Passive``."""
    target = ctx.pack(w_key) & ctx.passive
    out = 0
    for v in bits(ctx.pack(x_key) & ctx.active):
        if ctx.graph.masks[v] & target:
            out |= 1 << v
    return out


def _mixed_pair(ctx: BranchContext):
    for w_key in passive_packs(ctx):
        for x_key in dominator_packs(ctx, w_key):
            near = _near(ctx, x_key, w_key)
            if near != ctx.pack(x_key) & ctx.active:
                return w_key, x_key, near
    return None


def branch_dom_guess(ctx: BranchContext) -> Iterator[BranchContext]:
    """Guess, per (outside pack W, dominator X), whether X's chosen vertex dominates anything in W.

    Repeats until every active vertex of every dominator has a passive
    neighbour in the pack it constrains.
    """
    ctx = normalize_passive(ctx)
    if not _alive(ctx):
        return
    found = _mixed_pair(ctx)
    if found is None:
        yield ctx
        return
    w_key, x_key, near = found
    x_active = ctx.pack(x_key) & ctx.active
    pair = f"{ctx.key_text(x_key)}>{ctx.key_text(w_key)}"
    some = _to_done(ctx, x_active & ~near).with_guess(19, f"some:{pair}")
    none = _to_done(ctx, near).with_guess(19, f"none:{pair}")
    for child in (some, none):
        if _alive(child):
            yield from branch_dom_guess(child)


# ---------------------------------------------------------------- degree reduction


def csp_degrees(ctx: BranchContext) -> dict:
    inst = merge_parallel_constraints(build_csp(ctx))
    return {var: len(nb) for var, nb in inst.neighbours().items()}


def _private_neighbours_ok(ctx: BranchContext, keys, vh: int) -> bool:
    g = ctx.graph
    union = 0
    for key in keys:
        union |= ctx.pack(key)
    for key in keys:
        own = ctx.pack(key)
        for v in bits(own & vh):
            if not any(g.masks[n] & vh & ~own == 0 for n in bits(g.masks[v] & ~union)):
                return False
    return True


def two_clique_split(ctx: BranchContext, x_key, w1, w2) -> tuple[int, int] | None:
    """``(K1, K2)`` for an eligible triple, or ``None`` when the triple is not eligible."""
    g, pd = ctx.graph, ctx.pd
    vh = (ctx.pack(x_key) & ctx.active) | ((ctx.pack(w1) | ctx.pack(w2)) & ctx.passive)
    if not _private_neighbours_ok(ctx, (x_key, w1, w2), vh):
        return None
    cross = []
    for v in range(g.n):
        row = 0
        if vh >> v & 1:
            for u in bits(g.masks[v] & vh):
                if pd.vertex_to_pack[u] != pd.vertex_to_pack[v]:
                    row |= 1 << u
        cross.append(row)
    comps = connected_components(from_masks(cross), vh)
    if len(comps) > 2:
        raise InternalContradiction(f"two-clique split of {x_key}, {w1}, {w2} has {len(comps)} parts")
    for comp in comps:
        if not is_clique(g, comp):
            raise InternalContradiction("a two-clique split part is not a clique")
        for key in (x_key, w1, w2):
            if not comp & ctx.pack(key):
                raise InternalContradiction("a two-clique split part misses one of the packs")
    return comps[0], comps[1] if len(comps) == 2 else 0


def _eligible_triple(ctx: BranchContext, high: list):
    outside = passive_packs(ctx)
    for x_key in high:
        for a in x_key:
            cands = [w for w in outside if a in w]
            for w1, w2 in combinations(cands, 2):
                split = two_clique_split(ctx, x_key, w1, w2)
                if split is not None:
                    return (x_key, w1, w2), split
    return None


def reduce_csp_degree(ctx: BranchContext) -> Iterator[BranchContext]:
    """Two-clique splits until every CSP variable is bound to at most two others."""
    degrees = csp_degrees(ctx)
    high = [key for key in ctx.B if degrees[key] >= 3]
    if not high:
        yield ctx
        return
    found = _eligible_triple(ctx, high)
    if found is None:
        raise InternalContradiction(f"CSP degree stays above two at {high} with no eligible triple")
    (x_key, w1, w2), (k1, k2) = found
    outside = ctx.pack(w1) | ctx.pack(w2)
    triple = f"{ctx.key_text(x_key)}/{ctx.key_text(w1)}/{ctx.key_text(w2)}"
    for side, (keep, drop) in enumerate(((k1, k2), (k2, k1)), start=1):
        child = _to_done(ctx, (drop & ctx.pack(x_key)) | (outside & keep & ctx.passive))
        child = normalize_passive(child.with_guess(20, f"K{side}:{triple}"))
        if not _alive(child):
            continue
        if outside & child.passive:
            raise InternalContradiction(f"passive vertices survive the split of {triple}")
        for settled in branch_dom_guess(child):
            yield from reduce_csp_degree(settled)


# ---------------------------------------------------------------- finishing


def _assemble(ctx: BranchContext, level_vertices) -> Solution:
    level_vertices = frozenset(level_vertices)
    vertices = ctx.forced | ctx.graph.original(level_vertices)
    transcript = {
        "level_dominated": dominates(ctx.graph, level_vertices),
        "dominates": dominates(ctx.root, vertices),
        "within_budget": len(vertices) <= ctx.k_total,
    }
    if not all(transcript.values()):
        raise InternalContradiction(f"assembled solution fails verification: {transcript}")
    return Solution(vertices, transcript=transcript)


def finish_via_csp(ctx: BranchContext) -> Solution | None:
    """Solve the auxiliary CSP; a solution is a dominating candidate dominating the level graph."""
    assignment = solve_degree2(build_csp(ctx))
    if assignment is None:
        return None
    return _assemble(ctx, assignment.values())


# ---------------------------------------------------------------- safety checks


def sample_dominating_candidates(ctx: BranchContext, count: int, rng: SplitMix64) -> list[frozenset[int]]:
    """Random dominating candidates: one active vertex per guessed pack, shared legs nonadjacent."""
    g = ctx.graph
    choices = [list(bits(ctx.pack(key) & ctx.active)) for key in ctx.B]
    if any(not c for c in choices):
        return []
    linked = [(i, j) for i, j in combinations(range(len(ctx.B)), 2) if set(ctx.B[i]) & set(ctx.B[j])]
    out = []
    for _ in range(count * 4):
        pick = [c[rng.below(len(c))] for c in choices]
        if all(not g.has_edge(pick[i], pick[j]) for i, j in linked):
            out.append(frozenset(pick))
            if len(out) == count:
                break
    return out


def assert_safe(ctx: BranchContext, count: int = 200, seed: int = 0) -> None:
    target = ctx.active | ctx.done
    for cand in sample_dominating_candidates(ctx, count, SplitMix64(seed)):
        if not dominates(ctx.graph, cand, target):
            raise InternalContradiction(f"candidate {sorted(cand)} does not dominate Active ∪ Done")


# ---------------------------------------------------------------- driver


@dataclass
class SearchStats:
    levels: int = 0
    families: int = 0
    nodes: int = 0
    leaves: int = 0


class _Search:
    def __init__(
        self,
        trace: Callable[[str], None] | None = None,
        checks: bool = False,
        target_log: tuple | None = None,
        on_leaf: Callable[[BranchContext], None] | None = None,
    ):
        self.trace = trace
        self.checks = checks
        self.target_log = target_log
        self.on_leaf = on_leaf
        self.stats = SearchStats()
        self.found_leaf: BranchContext | None = None

    def admit(self, parent: BranchContext, child: BranchContext) -> bool:
        if self.target_log is not None:
            log = child.guess_log
            if log != self.target_log[: len(log)]:
                return False
        self.stats.nodes += 1
        if self.trace is not None:
            for depth in range(len(parent.guess_log), len(child.guess_log)):
                self.trace(child.guess_log[depth].line(depth))
        return True

    def level(self, ctx: BranchContext) -> Solution | None:
        self.stats.levels += 1
        if ctx.graph.n == 0:
            return _assemble(ctx, ())
        if ctx.k <= 0:
            return None
        verdict = step_bounds(ctx)
        if verdict.kind == Verdict.YES:
            return _assemble(ctx, ctx.I)
        if verdict.kind == Verdict.NO:
            return None
        for child in branch_on_I(ctx):
            if not self.admit(ctx, child):
                continue
            if child.guess_log[-1].choice == "disjoint":
                found = self.disjoint(child)
            else:
                found = self.level(child)
            if found is not None:
                return found
        return None

    def disjoint(self, ctx: BranchContext) -> Solution | None:
        for B in enumerate_pack_families(ctx):
            found = self.family(ctx, B)
            if found is not None:
                return found
        return None

    def family(self, ctx: BranchContext, B) -> Solution | None:
        start = init_partition(ctx, B)
        if not self.admit(ctx, start):
            return None
        self.stats.families += 1
        start = propagate_safe_state(start)
        if not _alive(start):
            return None
        if self.checks:
            assert_safe(start)
        for c1 in branch_one_packs(start):
            if not self.admit(start, c1):
                continue
            if self.checks:
                assert_safe(c1)
            for c2 in branch_dom_guess(c1):
                if not self.admit(c1, c2):
                    continue
                for c3 in reduce_csp_degree(c2):
                    if not self.admit(c2, c3):
                        continue
                    if self.checks:
                        assert_safe(c3)
                    self.stats.leaves += 1
                    if self.on_leaf is not None:
                        self.on_leaf(c3)
                    if self.target_log is not None and c3.guess_log == self.target_log:
                        self.found_leaf = c3
                        return None
                    found = finish_via_csp(c3)
                    if found is not None:
                        return found
        return None


def _check_input(g: Graph, k: int) -> None:
    if k < 0:
        raise BudgetNegative(f"budget k={k} is negative")
    claw = find_induced_star(g, 3)
    if claw is not None:
        raise NotClawFree(claw[0], claw[1])


def solve(
    g: Graph,
    k: int,
    *,
    trace: Callable[[str], None] | None = None,
    checks: bool = False,
    workers: int = 1,
    deterministic: bool = True,
    stats: SearchStats | None = None,
    on_leaf: Callable[[BranchContext], None] | None = None,
) -> Solution | None:
    """Dominating set of size at most ``k`` in a claw-free graph, or ``None``.

    With ``deterministic`` (the default) the search is sequential in
    canonical order and the witness is reproducible.  Otherwise up to
    ``workers`` processes explore the top-level branches and the first
    verified witness wins.
    """
    _check_input(g, k)
    if not deterministic and workers > 1 and trace is None:
        from .parallel import solve_parallel

        return solve_parallel(g, k, workers)
    search = _Search(trace=trace, checks=checks, on_leaf=on_leaf)
    root = _root_context(g, k)
    found = search.level(root)
    if stats is not None:
        stats.__dict__.update(search.stats.__dict__)
    return found


def _root_context(g: Graph, k: int) -> BranchContext:
    if g.n == 0 or k == 0:
        return _leaf_level(g, k, frozenset(), _bare_context(g, k), ())
    return make_level(g, k)


def _bare_context(g: Graph, k: int) -> BranchContext:
    empty = frozenset()
    pd = PackDecomposition(empty, {}, {}, {}, {})
    cls = OnePackClassification({}, {}, {}, [], {}, {}, {}, {}, [])
    return BranchContext(g, k, empty, empty, pd, cls, g, k)


def replay(g: Graph, k: int, guess_log) -> BranchContext | None:
    """Re-run the search following ``guess_log`` and return the leaf context it names."""
    search = _Search(target_log=tuple(guess_log))
    search.level(_root_context(g, k))
    return search.found_leaf


def default_workers() -> int:
    raw = os.environ.get("CLAWDOM_THREADS")
    if raw:
        return max(1, int(raw))
    return os.cpu_count() or 1


__all__ = [
    "BranchContext",
    "GuessRecord",
    "SearchStats",
    "Solution",
    "Verdict",
    "VertexState",
    "assert_safe",
    "branch_dom_guess",
    "branch_on_I",
    "branch_one_packs",
    "check_liveness",
    "csp_degrees",
    "enumerate_pack_families",
    "finish_via_csp",
    "init_partition",
    "make_level",
    "normalize_passive",
    "propagate_safe_state",
    "reduce_csp_degree",
    "replay",
    "sample_dominating_candidates",
    "solve",
    "step_bounds",
    "two_clique_split",
]
