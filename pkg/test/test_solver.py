# ！/usr/bin/env python
# -*- coding: UTF-8 -*-
"""
@Project: pydpcolor
@File: test_solver
@Date: 2026/10/17
"""

import json

import networkx as nx
import pytest

from pydpcolor.base.errors import BudgetExceeded
from pydpcolor.core.dp import find_coloring
from pydpcolor.core.generators import complete, cycle, named_graph
from pydpcolor.core.graph import Graph
from pydpcolor.core.solver import (AdversaryCertificate, adversary_oracle, chi, chi_dp, chi_list, elimination_order,
                                   is_dp_k_colorable, is_k_choosable)


def test_chi():
    assert chi(Graph(0)) == 0
    assert chi(Graph(3)) == 1
    assert chi(cycle(6)) == 2
    assert chi(cycle(7)) == 3
    assert chi(named_graph('petersen')) == 3
    assert chi(complete(5)) == 5


@pytest.mark.parametrize('g, expected', [
    (Graph(1), 1),
    (complete(2), 2),
    (complete(3), 3),
    (complete(4), 4),
    (cycle(4), 3),
    (cycle(5), 3),
    (cycle(6), 3),
    (cycle(7), 3),
    (cycle(8), 3),
])
def test_chi_dp_known_values(g, expected):
    assert chi_dp(g) == expected


@pytest.mark.parametrize('g, expected', [
    (cycle(4), 2),
    (cycle(5), 3),
    (complete(4), 4),
    (named_graph('k33'), 3),
    (Graph.from_networkx(nx.complete_bipartite_graph(2, 3)), 2),
])
def test_chi_list_known_values(g, expected):
    assert chi_list(g) == expected


def test_even_cycles_need_three_dp_colors():
    for n in (4, 6, 8):
        assert chi_list(cycle(n), max_vertices=8) == 2
        assert chi_dp(cycle(n)) == 3


def test_dp_certificate_replays():
    result = is_dp_k_colorable(cycle(6), 2)
    assert not result
    assert isinstance(result, AdversaryCertificate)
    assert result.kind == 'dp'
    assert result.replay()
    assert is_dp_k_colorable(cycle(6), 3) is True


def test_certificate_json_roundtrip():
    cert = is_dp_k_colorable(cycle(6), 2)
    loaded = AdversaryCertificate.from_dict(json.loads(cert.to_json()))
    assert loaded.graph == cert.graph
    assert loaded.matching == cert.matching
    assert loaded.replay()


def test_certificate_is_lexicographically_first():
    # the identity choice colors C4, so the single twisted cotree edge comes first
    cert = is_dp_k_colorable(cycle(4), 2)
    twisted = [(u, v) for u, v in cert.graph.edges if cert.matching.pairs(u, v) != frozenset({(0, 0), (1, 1)})]
    assert len(twisted) == 1


def test_certificate_lifted_through_core():
    # triangle with a pendant path: the 3-core is empty, the 2-core is the triangle
    g = Graph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)])
    assert is_dp_k_colorable(g, 3) is True
    cert = is_dp_k_colorable(g, 2)
    assert cert.graph == g
    assert cert.replay()
    assert cert.matching.pairs(2, 3) == frozenset()


def test_core_reduction_can_be_disabled():
    g = Graph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)])
    cert = is_dp_k_colorable(g, 2, reduce_core=False)
    assert cert.graph == g
    assert cert.replay()


def test_dp_budget():
    with pytest.raises(BudgetExceeded) as info:
        is_dp_k_colorable(named_graph('petersen'), 3, budget=10)
    assert info.value.cases == 6 ** 6
    assert info.value.budget == 10


def test_dp_budget_from_environment(monkeypatch):
    monkeypatch.setenv('DPCOLOR_BUDGET', '5')
    with pytest.raises(BudgetExceeded):
        is_dp_k_colorable(named_graph('petersen'), 3)


def test_choosability_vertex_bound():
    with pytest.raises(BudgetExceeded) as info:
        is_k_choosable(named_graph('petersen'), 3)
    assert info.value.unit == 'vertices'


def test_list_certificate_replays():
    cert = is_k_choosable(named_graph('k33'), 2)
    assert cert.kind == 'list'
    assert all(len(l) == 2 for l in cert.lists.lists)
    assert cert.replay()


def test_parallel_matches_serial():
    g = complete(4)
    serial = is_dp_k_colorable(g, 3)
    parallel = is_dp_k_colorable(g, 3, jobs=2)
    assert serial.matching == parallel.matching
    assert parallel.replay()


def test_parallel_colorable():
    assert is_dp_k_colorable(named_graph('cube'), 3, jobs=2) is True


def test_oracle_agrees_on_small_graphs():
    diamond = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    for g in (Graph(3, [(0, 1), (1, 2)]), cycle(4), cycle(5), complete(3), diamond):
        oracle = adversary_oracle(g, 2)
        assert bool(oracle) == bool(is_dp_k_colorable(g, 2))
        if not oracle:
            assert oracle.replay()


def test_oracle_budget():
    with pytest.raises(BudgetExceeded):
        adversary_oracle(complete(4), 3, budget=5)


def test_elimination_order_is_a_permutation():
    g = named_graph('cube')
    assert sorted(elimination_order(g)) == list(g.vertices())


def test_replay_detects_colorable_assignment():
    cert = is_dp_k_colorable(cycle(4), 2)
    colorable = AdversaryCertificate('dp', cert.graph, 2, cert.lists)
    assert find_coloring(colorable.graph, colorable.lists, colorable.matching) is not None
    assert not colorable.replay()


if __name__ == "__main__":
    pytest.main([__file__])
