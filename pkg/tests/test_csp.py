from __future__ import annotations

from dataclasses import replace
from itertools import product

import pytest

from clawdom.csp import (
    DOMINATING,
    INDEPENDENCE,
    Constraint,
    CspInstance,
    build_csp,
    dump_csp,
    merge_parallel_constraints,
    solve_degree2,
)
from clawdom.errors import DegreeTooHigh
from clawdom.graph import build_graph
from clawdom.solver import init_partition, make_level

from corpus import csp_feasible_by_enumeration, random_degree2_csp

X, Y, Z, W = (0,), (1,), (2,), (3,)


def test_constraint_needs_distinct_endpoints():
    with pytest.raises(ValueError):
        Constraint(X, X, frozenset(), ("t",))


def test_two_variable_instance():
    inst = CspInstance((X, Y), {X: (10, 11), Y: (20,)}, (Constraint(X, Y, frozenset({(11, 20)}), ("t",)),))
    assert solve_degree2(inst) == {X: 11, Y: 20}


def _differ(x, y, vals):
    return Constraint(x, y, frozenset((a, b) for a in vals for b in vals if a != b), ("differ",))


def test_odd_cycle_is_not_two_colourable():
    vals = (0, 1)
    inst = CspInstance((X, Y, Z), {X: vals, Y: vals, Z: vals}, (_differ(X, Y, vals), _differ(Y, Z, vals), _differ(Z, X, vals)))
    assert solve_degree2(inst) is None


def test_even_cycle_is_two_colourable():
    vals = (0, 1)
    cons = (_differ(X, Y, vals), _differ(Y, Z, vals), _differ(Z, W, vals), _differ(W, X, vals))
    sol = solve_degree2(CspInstance((X, Y, Z, W), {v: vals for v in (X, Y, Z, W)}, cons))
    assert sol == {X: 0, Y: 1, Z: 0, W: 1}


def test_merging_intersects_parallel_constraints():
    a = Constraint(X, Y, frozenset({(1, 2), (1, 3)}), ("a",))
    b = Constraint(Y, X, frozenset({(3, 1), (4, 1)}), ("b",))
    merged = merge_parallel_constraints(CspInstance((X, Y), {X: (1,), Y: (2, 3, 4)}, (a, b)))
    assert len(merged.constraints) == 1
    (c,) = merged.constraints
    assert (c.x, c.y, c.allowed) == (X, Y, frozenset({(1, 3)}))
    assert c.tag == ("merged", ("a",), ("b",))


def test_empty_intersection_is_unsatisfiable():
    a = Constraint(X, Y, frozenset({(1, 2)}), ("a",))
    b = Constraint(X, Y, frozenset({(1, 3)}), ("b",))
    inst = CspInstance((X, Y), {X: (1,), Y: (2, 3)}, (a, b))
    assert merge_parallel_constraints(inst).constraints[0].allowed == frozenset()
    assert solve_degree2(inst) is None


def test_degree_three_rejected():
    full = frozenset({(0, 0)})
    cons = tuple(Constraint(X, v, full, ("t",)) for v in (Y, Z, W))
    with pytest.raises(DegreeTooHigh):
        solve_degree2(CspInstance((X, Y, Z, W), {v: (0,) for v in (X, Y, Z, W)}, cons))


def test_no_variables():
    assert solve_degree2(CspInstance((), {}, ())) == {}


def test_random_instances_match_enumeration():
    for seed in range(300):
        inst = random_degree2_csp(seed)
        sol = solve_degree2(inst)
        assert (sol is not None) == csp_feasible_by_enumeration(inst), seed
        if sol is not None:
            assert inst.satisfied_by(sol)


def _context(g, family):
    return init_partition(make_level(g, len(family)), family)


def test_shared_leg_gives_independence_constraint():
    # leg 0 with 1-pack {1} and 2-pack {3}; leg 2 with 1-pack {4}
    g = build_graph(5, [(0, 1), (0, 3), (2, 3), (2, 4), (1, 3)])
    ctx = _context(g, [(0,), (0, 2)])
    ctx = replace(ctx, passive=0)
    inst = build_csp(ctx)
    assert [c.tag for c in inst.constraints] == [(INDEPENDENCE,)]
    assert inst.constraints[0].allowed == frozenset()


def test_dominating_constraint_lists_covering_pairs():
    # I = {0, 1} with 1-packs {2}, {3} and the 2-pack {4} seeing both
    g = build_graph(5, [(0, 2), (1, 3), (0, 4), (1, 4), (2, 4), (3, 4)])
    ctx = make_level(g, 2)
    assert ctx.I == {0, 1}
    inst = build_csp(init_partition(ctx, [(0,), (1,)]))
    dom = [con for con in inst.constraints if con.tag[0] == DOMINATING]
    assert [(c.x, c.y, c.tag, c.allowed) for c in dom] == [((0,), (1,), (DOMINATING, (0, 1)), frozenset({(2, 3)}))]
    assert dump_csp(inst) == ["v 1 : 3", "v 2 : 4", "c 1 2 dominating(1,2) : 3-4"]


def _candidates(ctx, inst):
    from clawdom.graph import dominates

    out = set()
    for combo in product(*(inst.values[v] for v in inst.variables)):
        ok = all(
            not ctx.graph.has_edge(a, b)
            for (x, a), (y, b) in product(zip(inst.variables, combo), repeat=2)
            if x < y and set(x) & set(y)
        )
        if ok and dominates(ctx.graph, combo, ctx.passive):
            out.add(combo)
    return out


def test_assignments_equal_candidate_enumeration():
    from clawdom.solver import solve

    from corpus import claw_free_corpus

    leaves = []
    for g in claw_free_corpus(60, seed=11):
        I = make_level(g, 1).I if g.n else ()
        k = max(1, (len(I) + 1) // 2)
        solve(g, k, on_leaf=leaves.append)
    checked = 0
    for ctx in leaves:
        inst = build_csp(ctx)
        size = 1
        for v in inst.variables:
            size *= len(inst.values[v])
        if size > 5000:
            continue
        sols = {
            combo
            for combo in product(*(inst.values[v] for v in inst.variables))
            if inst.satisfied_by(dict(zip(inst.variables, combo)))
        }
        assert sols == _candidates(ctx, inst)
        checked += 1
    assert checked >= 20
