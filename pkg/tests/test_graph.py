from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clawdom.errors import EndpointOutOfRange, SelfLoop
from clawdom.graph import (
    build_graph,
    connected_components,
    dominates,
    find_induced_star,
    induced_subgraph,
    is_clique,
    is_independent,
    is_t_claw_free,
    to_set,
)

settings.register_profile("graph", max_examples=120, deadline=None)
settings.load_profile("graph")

TRIANGLE = build_graph(3, [(0, 1), (1, 2), (2, 0)])
CLAW = build_graph(4, [(0, 1), (0, 2), (0, 3)])
P4 = build_graph(4, [(0, 1), (1, 2), (2, 3)])
C5 = build_graph(5, [(i, (i + 1) % 5) for i in range(5)])


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(0, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return build_graph(n, chosen)


def test_triangle_degrees():
    assert [TRIANGLE.degree(v) for v in range(3)] == [2, 2, 2]
    assert TRIANGLE.m == 3


def test_duplicate_edges_collapse():
    g = build_graph(2, [(0, 1), (1, 0)])
    assert g.m == 1 and g.edges() == [(0, 1)]


def test_self_loop_rejected():
    with pytest.raises(SelfLoop):
        build_graph(1, [(0, 0)])


def test_endpoint_range_checked():
    with pytest.raises(EndpointOutOfRange):
        build_graph(2, [(0, 2)])


def test_star_detection_on_claw():
    assert find_induced_star(CLAW, 3) == (0, frozenset({1, 2, 3}))
    assert find_induced_star(TRIANGLE, 3) is None


def test_star_detection_on_path():
    # brute-force enumeration of all centre/leaf choices on P4 gives these
    assert find_induced_star(P4, 3) is None
    assert find_induced_star(P4, 2) == (1, frozenset({0, 2}))


def test_star_order_must_be_positive():
    with pytest.raises(ValueError):
        find_induced_star(P4, 0)


def test_clique_and_independence_predicates():
    assert is_clique(TRIANGLE, {0, 1, 2}) and not is_independent(TRIANGLE, {0, 1, 2})
    for s in (set(), {0}):
        assert is_clique(C5, s) and is_independent(C5, s)
    assert not is_clique(C5, {0, 2}) and is_independent(C5, {0, 2})


def test_domination():
    assert dominates(CLAW, {0})
    assert not dominates(P4, {1})
    assert dominates(P4, set(), target=set())


def test_induced_subgraphs():
    sub = induced_subgraph(TRIANGLE, {0, 1})
    assert sub.n == 2 and sub.edges() == [(0, 1)]
    whole = induced_subgraph(C5, range(5))
    assert whole.edges() == C5.edges() and [whole.label(v) for v in range(5)] == list(range(5))
    path = induced_subgraph(C5, {1, 2, 3})
    assert path.edges() == [(0, 1), (1, 2)]
    assert path.original({0, 2}) == frozenset({1, 3})


def test_labels_compose_through_nested_subgraphs():
    inner = induced_subgraph(induced_subgraph(C5, {1, 2, 3, 4}), {1, 3})
    assert inner.original({0, 1}) == frozenset({2, 4})


def _star_exists(g, t):
    for c in range(g.n):
        for leaves in combinations(sorted(g.neighbors(c)), t):
            if is_independent(g, leaves):
                return True
    return False


@given(graphs(), st.integers(1, 4))
def test_star_search_matches_brute_force(g, t):
    found = find_induced_star(g, t)
    assert (found is not None) == _star_exists(g, t)
    if found is not None:
        c, leaves = found
        assert len(leaves) == t and leaves <= g.neighbors(c) and is_independent(g, leaves)
    assert is_t_claw_free(g, t) == (found is None)


@given(graphs())
def test_adjacency_is_symmetric_and_loopless(g):
    for v in range(g.n):
        assert v not in g.neighbors(v)
        for u in g.neighbors(v):
            assert v in g.neighbors(u)


@given(graphs())
def test_complement_is_an_involution(g):
    assert g.complement().complement().edges() == g.edges()
    assert g.m + g.complement().m == g.n * (g.n - 1) // 2


@given(graphs())
def test_components_partition_vertices(g):
    comps = connected_components(g)
    seen = set()
    for comp in comps:
        members = to_set(comp)
        assert not members & seen
        seen |= members
        for u in members:
            assert g.neighbors(u) <= members
    assert seen == set(range(g.n))
