# ！/usr/bin/env python
# -*- coding: UTF-8 -*-
"""
@Project: pydpcolor
@File: test_dp
@Date: 2026/10/17
"""

import itertools

import pytest

from pydpcolor.base.errors import InvalidMatching, InvalidPartial, NonUniformLists, NotSpanningTree
from pydpcolor.core.dp import (DPColoring, ListAssignment, MatchingAssignment, build_cover, equality_matching,
                               find_coloring, from_list_assignment, gauge_normalize, is_valid_coloring,
                               is_valid_partial, pull_back_coloring, transport_coloring)
from pydpcolor.core.generators import (complete, connected_graphs_from_atlas, cycle, make_rng, random_list_assignment,
                                       random_matching_assignment)
from pydpcolor.core.graph import Graph, spanning_forest


def _twisted_c4():
    # identity on three edges, the swap on 3-0
    g = cycle(4)
    m = MatchingAssignment({(0, 1): [(0, 0), (1, 1)], (1, 2): [(0, 0), (1, 1)],
                            (2, 3): [(0, 0), (1, 1)], (0, 3): [(0, 1), (1, 0)]})
    return g, m


def test_matching_orientation():
    m = MatchingAssignment({(3, 1): [(0, 2)]})
    assert m.pairs(1, 3) == frozenset({(2, 0)})
    assert m.pairs(3, 1) == frozenset({(0, 2)})
    assert m.partner(3, 0, 1) == 2
    assert m.partner(1, 2, 3) == 0
    assert m.partner(1, 0, 3) is None
    assert m.edges() == [(1, 3)]


def test_matching_must_be_injective():
    with pytest.raises(InvalidMatching):
        MatchingAssignment({(0, 1): [(0, 0), (0, 1)]})
    with pytest.raises(InvalidMatching):
        MatchingAssignment({(0, 1): [(0, 1), (1, 1)]})


def test_matching_validate():
    g = cycle(3)
    lists = ListAssignment.uniform(3, 2)
    with pytest.raises(InvalidMatching):
        MatchingAssignment({(0, 1): [(0, 2)]}).validate(g, lists)
    with pytest.raises(InvalidMatching):
        MatchingAssignment({(0, 1): [(0, 0)]}).validate(Graph(3, [(1, 2)]), lists)
    with pytest.raises(InvalidMatching):
        MatchingAssignment.identity(g, 2).validate(g, ListAssignment.uniform(2, 2))


def test_subassignment():
    g = cycle(4)
    full = MatchingAssignment.identity(g, 3)
    part = MatchingAssignment({(0, 1): [(1, 1)], (2, 3): []})
    assert part.is_subassignment_of(full)
    assert not full.is_subassignment_of(part)
    assert MatchingAssignment.empty(g).size() == 0
    assert full.size() == 12


def _thinned(m, rng):
    # drop each matched pair independently
    return MatchingAssignment({e: [p for p in sorted(m.pairs(*e)) if rng.random() < 0.5] for e in m.edges()})


def _properly_colorable(g, k):
    return any(all(c[u] != c[v] for u, v in g.edges) for c in itertools.product(range(k), repeat=g.n))


def test_subassignment_monotone():
    rng = make_rng(17)
    for g in connected_graphs_from_atlas(6):
        for k in (2, 3, 2, 3):
            lists = ListAssignment.uniform(g.n, k)
            full = random_matching_assignment(g, k, rng)
            part = _thinned(full, rng)
            assert part.is_subassignment_of(full)
            coloring = find_coloring(g, lists, full)
            if coloring is not None:
                assert is_valid_coloring(g, lists, part, coloring)
            if find_coloring(g, lists, part) is None:
                assert coloring is None


def test_identity_matches_proper_coloring():
    for g in connected_graphs_from_atlas(6):
        for k in (1, 2, 3):
            coloring = find_coloring(g, ListAssignment.uniform(g.n, k), MatchingAssignment.identity(g, k))
            assert (coloring is not None) == _properly_colorable(g, k)
            if coloring is not None:
                assert all(coloring[u] != coloring[v] for u, v in g.edges)


def test_cover_graph_size():
    g = complete(3)
    cover = build_cover(g, ListAssignment.uniform(3, 3), MatchingAssignment.identity(g, 3))
    assert len(cover.nodes) == 9
    # 3 edges per vertex clique, 3 per matching
    assert len(cover.edges) == 9 + 9


def test_identity_c4_is_2_colorable():
    g = cycle(4)
    lists = ListAssignment.uniform(4, 2)
    m = MatchingAssignment.identity(g, 2)
    coloring = find_coloring(g, lists, m)
    assert coloring is not None
    assert is_valid_coloring(g, lists, m, coloring)


def test_twisted_c4_is_not_2_colorable():
    g, m = _twisted_c4()
    assert find_coloring(g, ListAssignment.uniform(4, 2), m) is None


def test_find_coloring_is_deterministic():
    g = complete(4)
    lists = ListAssignment.uniform(4, 4)
    m = MatchingAssignment.identity(g, 4)
    assert find_coloring(g, lists, m) == find_coloring(g, lists, m)


def test_find_coloring_with_rng():
    g = cycle(5)
    lists = ListAssignment.uniform(5, 3)
    m = MatchingAssignment.identity(g, 3)
    seen = set()
    for seed in range(30):
        coloring = find_coloring(g, lists, m, rng=make_rng(seed))
        assert is_valid_coloring(g, lists, m, coloring)
        assert coloring == find_coloring(g, lists, m, rng=make_rng(seed))
        seen.add(tuple(coloring.as_list(5)))
    assert len(seen) > 1
    assert find_coloring(complete(4), ListAssignment.uniform(4, 3), MatchingAssignment.identity(complete(4), 3),
                         rng=make_rng(0)) is None


def test_k4_needs_four_colors():
    g = complete(4)
    assert find_coloring(g, ListAssignment.uniform(4, 3), MatchingAssignment.identity(g, 3)) is None


def test_find_coloring_respects_fixed():
    g = cycle(5)
    lists = ListAssignment.uniform(5, 3)
    m = MatchingAssignment.identity(g, 3)
    coloring = find_coloring(g, lists, m, fixed={0: 2, 2: 2})
    assert coloring[0] == 2 and coloring[2] == 2
    assert is_valid_coloring(g, lists, m, coloring)
    with pytest.raises(InvalidPartial):
        find_coloring(g, lists, m, fixed={0: 5})
    with pytest.raises(InvalidPartial):
        find_coloring(g, lists, m, fixed={0: 1, 1: 1})


def test_fixed_colors_may_leave_no_extension():
    g = Graph(3, [(0, 1), (1, 2)])
    lists = ListAssignment.uniform(3, 2)
    m = MatchingAssignment({(0, 1): [(0, 0)], (1, 2): [(1, 1)]})
    assert find_coloring(g, lists, m, fixed={0: 0, 2: 1}) is None


def test_validator_rejects_conflicts():
    g = Graph(2, [(0, 1)])
    lists = ListAssignment.uniform(2, 2)
    m = MatchingAssignment({(0, 1): [(0, 1)]})
    assert not is_valid_coloring(g, lists, m, DPColoring({0: 0, 1: 1}))
    assert is_valid_coloring(g, lists, m, DPColoring({0: 0, 1: 0}))
    assert not is_valid_coloring(g, lists, m, DPColoring({0: 0}))
    assert not is_valid_coloring(g, lists, m, DPColoring({0: 0, 1: 3}))
    assert is_valid_partial(g, m, DPColoring({0: 0}))
    assert not is_valid_partial(g, m, DPColoring({0: 0, 1: 1}))


def test_list_coloring_through_matchings():
    g = cycle(4)
    original = ListAssignment([[1, 2], [2, 3], [3, 4], [1, 4]])
    lists, m = from_list_assignment(g, original)
    assert lists.uniform_size() == 2
    coloring = find_coloring(g, lists, m)
    assert coloring is not None
    colors = pull_back_coloring(coloring, original)
    for u, v in g.edges:
        assert colors[u] != colors[v]
    assert all(colors[v] in original[v] for v in g.vertices())


def test_random_lists_agree_with_brute_force():
    rng = make_rng(8)
    g = Graph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 0)])
    for _ in range(100):
        original = random_list_assignment(g.n, 2, 4, rng)
        lists, m = from_list_assignment(g, original)
        proper = any(all(c[u] != c[v] for u, v in g.edges)
                     for c in itertools.product(*(original[v] for v in g.vertices())))
        coloring = find_coloring(g, lists, m)
        assert (coloring is not None) == proper
        if coloring is not None:
            colors = pull_back_coloring(coloring, original)
            assert all(colors[u] != colors[v] for u, v in g.edges)


def test_from_list_assignment_needs_uniform_lists():
    with pytest.raises(NonUniformLists):
        from_list_assignment(cycle(3), ListAssignment([[0, 1], [0], [0, 1]]))


def test_equality_matching():
    g = Graph(2, [(0, 1)])
    m = equality_matching(g, ListAssignment([[0, 1, 2], [1, 2, 5]]))
    assert m.pairs(0, 1) == frozenset({(1, 1), (2, 2)})


def test_gauge_normalize_preserves_colorability():
    rng = make_rng(7)
    graphs = connected_graphs_from_atlas(6)
    for _ in range(1000):
        g = graphs[int(rng.integers(len(graphs)))]
        k = int(rng.integers(1, 4))
        lists = ListAssignment.uniform(g.n, k)
        m = random_matching_assignment(g, k, rng)
        tree = spanning_forest(g)
        normalized, perms = gauge_normalize(g, m, tree, k)
        for u, v in tree:
            assert normalized.pairs(u, v) == frozenset((c, c) for c in range(k))
        original = find_coloring(g, lists, m)
        relabeled = find_coloring(g, lists, normalized)
        assert (original is None) == (relabeled is None)
        if relabeled is not None:
            assert is_valid_coloring(g, lists, m, transport_coloring(relabeled, perms))


def test_gauge_moves_a_tree_swap_to_the_closing_edge():
    g = cycle(4)
    identity = [(0, 0), (1, 1)]
    m = MatchingAssignment({(0, 1): identity, (1, 2): [(0, 1), (1, 0)], (2, 3): identity, (0, 3): identity})
    normalized, perms = gauge_normalize(g, m, [(0, 1), (1, 2), (2, 3)], 2)
    assert normalized == MatchingAssignment({(0, 1): identity, (1, 2): identity, (2, 3): identity,
                                             (0, 3): [(0, 1), (1, 0)]})
    assert perms == ((0, 1), (0, 1), (1, 0), (1, 0))


def test_gauge_keeps_identity_on_the_tree():
    g = complete(4)
    m = MatchingAssignment.identity(g, 3)
    normalized, perms = gauge_normalize(g, m, spanning_forest(g), 3)
    assert normalized == m
    assert all(p == (0, 1, 2) for p in perms)


def test_gauge_normalize_checks_tree():
    g = cycle(4)
    m = MatchingAssignment.identity(g, 2)
    with pytest.raises(NotSpanningTree):
        gauge_normalize(g, m, [(0, 1), (1, 2)], 2)
    with pytest.raises(NotSpanningTree):
        gauge_normalize(g, m, [(0, 1), (1, 2), (2, 3), (3, 0)], 2)
    with pytest.raises(NotSpanningTree):
        gauge_normalize(g, m, [(0, 1), (1, 2), (0, 2)], 2)
    partial = MatchingAssignment({(0, 1): [(0, 0)], (1, 2): [(0, 0), (1, 1)], (2, 3): [(0, 0), (1, 1)]})
    with pytest.raises(InvalidMatching):
        gauge_normalize(g, partial, [(0, 1), (1, 2), (2, 3)], 2)


if __name__ == "__main__":
    pytest.main([__file__])
