"""Binary CSP with one variable per guessed pack, and its degree-2 solver.

Values of a variable are the active vertices of its pack.  Independence
constraints tie packs sharing a leg (their chosen vertices must be
nonadjacent); dominating constraints tie the two packs that can still
dominate the passive vertices of a pack outside the guessed family.
Allowed pairs are stored extensionally.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

from .errors import DegreeTooHigh, InternalContradiction
from .graph import bits

INDEPENDENCE = "independence"
DOMINATING = "dominating"


@dataclass(frozen=True)
class Constraint:
    x: tuple
    y: tuple
    allowed: frozenset[tuple[int, int]]
    tag: tuple

    def __post_init__(self):
        if self.x == self.y:
            raise ValueError("constraint endpoints must be distinct variables")

    def permits(self, x_value: int, y_value: int) -> bool:
        return (x_value, y_value) in self.allowed


@dataclass(frozen=True)
class CspInstance:
    variables: tuple
    values: dict
    constraints: tuple[Constraint, ...]

    def index(self, var) -> int:
        return self.variables.index(var)

    def neighbours(self) -> dict:
        out = {var: set() for var in self.variables}
        for c in self.constraints:
            out[c.x].add(c.y)
            out[c.y].add(c.x)
        return out

    def max_degree(self) -> int:
        return max((len(s) for s in self.neighbours().values()), default=0)

    def satisfied_by(self, assignment: dict) -> bool:
        if set(assignment) != set(self.variables):
            return False
        if any(assignment[v] not in self.values[v] for v in self.variables):
            return False
        return all(c.permits(assignment[c.x], assignment[c.y]) for c in self.constraints)


def dominator_packs(ctx, w_key) -> list:
    """Packs of the guessed family holding active neighbours of ``W ∩ Passive``."""
    g, pd = ctx.graph, ctx.pd
    nbrs = g.closed_of(pd.mask(w_key) & ctx.passive) & ctx.active
    return sorted({pd.vertex_to_pack[v] for v in bits(nbrs)})


def passive_packs(ctx) -> list:
    """Packs outside the family that still contain passive vertices."""
    return [key for key in ctx.pd.keys if key not in ctx.family and ctx.pd.mask(key) & ctx.passive]


def build_csp(ctx) -> CspInstance:
    """The auxiliary CSP of a normalized branch context.

    Requires that every pack in ``passive_packs(ctx)`` has exactly two
    dominator packs, which holds after exhaustive passive cleaning.
    """
    g, pd = ctx.graph, ctx.pd
    variables = tuple(ctx.B)
    values = {x: tuple(bits(pd.mask(x) & ctx.active)) for x in variables}
    constraints = []
    for i, x in enumerate(variables):
        for y in variables[i + 1:]:
            if set(x) & set(y):
                allowed = frozenset(
                    (v, w) for v in values[x] for w in values[y] if not g.has_edge(v, w)
                )
                constraints.append(Constraint(x, y, allowed, (INDEPENDENCE,)))
    for w_key in passive_packs(ctx):
        doms = dominator_packs(ctx, w_key)
        if len(doms) != 2:
            raise InternalContradiction(f"pack {w_key} has dominator packs {doms}, expected two")
        y, z = doms
        need = pd.mask(w_key) & ctx.passive
        allowed = frozenset(
            (v, w)
            for v in values[y]
            for w in values[z]
            if need & ~(g.closed(v) | g.closed(w)) == 0
        )
        constraints.append(Constraint(y, z, allowed, (DOMINATING, w_key)))
    return CspInstance(variables, values, tuple(constraints))


def merge_parallel_constraints(inst: CspInstance) -> CspInstance:
    """Keep one constraint per unordered variable pair, intersecting allowed sets."""
    order = {var: i for i, var in enumerate(inst.variables)}
    merged: dict[tuple, tuple[frozenset, list]] = {}
    for c in inst.constraints:
        if order[c.x] <= order[c.y]:
            x, y, allowed = c.x, c.y, c.allowed
        else:
            x, y, allowed = c.y, c.x, frozenset((b, a) for a, b in c.allowed)
        if (x, y) in merged:
            prev, tags = merged[(x, y)]
            merged[(x, y)] = (prev & allowed, tags + [c.tag])
        else:
            merged[(x, y)] = (allowed, [c.tag])
    constraints = []
    for (x, y), (allowed, tags) in sorted(merged.items(), key=lambda kv: (order[kv[0][0]], order[kv[0][1]])):
        tag = tags[0] if len(tags) == 1 else ("merged", *tags)
        constraints.append(Constraint(x, y, allowed, tag))
    return CspInstance(inst.variables, inst.values, tuple(constraints))


def _prune_path(path: list, lists: dict, relation: Callable[[object, object], Callable]) -> dict | None:
    """Forward list pruning along ``path`` and backward extraction of lowest values."""
    lists = {var: list(vals) for var, vals in lists.items()}
    for prev, cur in zip(path, path[1:]):
        ok = relation(prev, cur)
        lists[cur] = [y for y in lists[cur] if any(ok(x, y) for x in lists[prev])]
        if not lists[cur]:
            return None
    if not lists[path[0]]:
        return None
    chosen = {path[-1]: lists[path[-1]][0]}
    for i in range(len(path) - 2, -1, -1):
        ok = relation(path[i], path[i + 1])
        nxt = chosen[path[i + 1]]
        support = [x for x in lists[path[i]] if ok(x, nxt)]
        if not support:
            raise InternalContradiction("pruned path lost support during extraction")
        chosen[path[i]] = support[0]
    return chosen


def solve_degree2(inst: CspInstance) -> dict | None:
    """Solve a CSP whose merged constraint graph has maximum degree two.

    Components are paths or cycles.  Paths are solved by forward pruning
    and backward extraction; cycles by trying each value of their least
    variable and solving the remaining path.
    """
    inst = merge_parallel_constraints(inst)
    order = {var: i for i, var in enumerate(inst.variables)}
    nbrs = inst.neighbours()
    for var in inst.variables:
        if len(nbrs[var]) > 2:
            raise DegreeTooHigh(var)
    table = {}
    for c in inst.constraints:
        table[(c.x, c.y)] = c.allowed
        table[(c.y, c.x)] = frozenset((b, a) for a, b in c.allowed)

    def relation(p, q):
        allowed = table[(p, q)]
        return lambda x, y: (x, y) in allowed

    values = {var: sorted(inst.values[var]) for var in inst.variables}
    assignment: dict = {}
    seen: set = set()
    for start in inst.variables:
        if start in seen:
            continue
        comp = []
        stack = [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in nbrs[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        comp.sort(key=order.get)
        if len(comp) == 1:
            if not values[comp[0]]:
                return None
            assignment[comp[0]] = values[comp[0]][0]
            continue
        ends = [v for v in comp if len(nbrs[v]) == 1]
        if ends:
            path = _walk(min(ends, key=order.get), nbrs)
            part = _prune_path(path, {v: values[v] for v in path}, relation)
        else:
            part = _solve_cycle(comp, nbrs, values, relation, order)
        if part is None:
            return None
        assignment.update(part)
    if not inst.satisfied_by(assignment):
        raise InternalContradiction("degree-2 solver produced a violating assignment")
    return assignment


def _walk(start, nbrs) -> list:
    path = [start]
    prev = None
    cur = start
    while True:
        nxt = [u for u in nbrs[cur] if u != prev]
        if not nxt or (len(path) > 1 and nxt[0] == start):
            return path
        prev, cur = cur, nxt[0]
        path.append(cur)


def _solve_cycle(comp, nbrs, values, relation, order) -> dict | None:
    pivot = comp[0]
    left, right = sorted(nbrs[pivot], key=order.get)
    # cycle pivot -> right -> ... -> left -> pivot, opened at the pivot
    path = [right]
    prev, cur = pivot, right
    while cur != left:
        (nxt,) = [u for u in nbrs[cur] if u != prev]
        prev, cur = cur, nxt
        path.append(cur)
    to_right = relation(pivot, right)
    from_left = relation(left, pivot)
    for x in values[pivot]:
        lists = {v: values[v] for v in path}
        lists[right] = [y for y in lists[right] if to_right(x, y)]
        lists[left] = [y for y in lists[left] if from_left(y, x)]
        if not lists[right] or not lists[left]:
            continue
        part = _prune_path(path, lists, relation)
        if part is not None:
            part[pivot] = x
            return part
    return None


def dump_csp(inst: CspInstance, label: Callable[[int], int] = lambda v: v) -> list[str]:
    """Debug lines ``v <pack> : <values>`` and ``c <p1> <p2> <tag> : <pairs>`` (1-based ids)."""

    def pack(key) -> str:
        return ",".join(str(label(a) + 1) for a in key)

    lines = []
    for var in inst.variables:
        vals = " ".join(str(label(v) + 1) for v in inst.values[var])
        lines.append(f"v {pack(var)} : {vals}")
    for c in inst.constraints:
        tag = c.tag[0] if c.tag[0] != DOMINATING else f"dominating({pack(c.tag[1])})"
        pairs = " ".join(f"{label(a) + 1}-{label(b) + 1}" for a, b in sorted(c.allowed))
        lines.append(f"c {pack(c.x)} {pack(c.y)} {tag} : {pairs}")
    return lines
