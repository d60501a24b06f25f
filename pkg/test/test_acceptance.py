# ！/usr/bin/env python
# -*- coding: UTF-8 -*-
"""
@Project: pydpcolor
@File: test_acceptance
@Date: 2026/10/17

Randomized and exhaustive checks over many graphs; run with `pytest -m slow`.
"""

import itertools
from fractions import Fraction

import pytest

from pydpcolor import RuleVariant
from pydpcolor.core.discharge import apply_rules, initial_charges, lemma5_bound, vertex_key
from pydpcolor.core.dp import DPColoring, ListAssignment, find_coloring, is_valid_coloring
from pydpcolor.core.embedding import euler_charge_total, planar_embed
from pydpcolor.core.generators import (connected_graphs_from_atlas, cycle, make_rng, random_connected_planar_graph,
                                       random_matching_assignment, random_plane_embedding, random_valid_t)
from pydpcolor.core.graph import Graph, forbidden_variant, is_planar
from pydpcolor.core.reducible import (ConfigPattern, check_lemma2_structural, extend_coloring, find_pattern,
                                      monte_carlo_extend, residual_lists)
from pydpcolor.core.solver import adversary_oracle, chi, chi_dp, chi_list, is_dp_k_colorable

pytestmark = pytest.mark.slow


def test_charges_conserved_on_random_embeddings():
    rng = make_rng(2024)
    for _ in range(200):
        emb = random_plane_embedding(int(rng.integers(3, 16)), rng)
        assert euler_charge_total(emb) == -8
        assert initial_charges(emb).total() == -8
        for variant in RuleVariant:
            state = apply_rules(emb, variant)
            assert state.total() == -8
            assert all(total == -8 for _, _, total in state.snapshots)
            assert all(t.amount > 0 for t in state.transfers)


def _variant_corpus(rng):
    for g in connected_graphs_from_atlas(7):
        if is_planar(g):
            yield g
    for _ in range(300):
        yield random_connected_planar_graph(int(rng.integers(6, 17)), rng, extra_edges=int(rng.integers(0, 4)))


def test_three_vertices_end_at_zero():
    rng = make_rng(31)
    checked = dict.fromkeys(RuleVariant, 0)
    for g in _variant_corpus(rng):
        satisfied = forbidden_variant(g)
        if not satisfied or g.n < 4:
            continue
        emb = planar_embed(g)
        for variant in satisfied:
            state = apply_rules(emb, variant, strict=True)
            for v in g.vertices():
                if g.degree(v) != 3:
                    continue
                if variant.uses_r4a and not any(f.length >= 6 for f in emb.corners(v)):
                    continue
                assert state.charge[vertex_key(v)] == 0
                checked[variant] += 1
    assert all(count > 0 for count in checked.values())


def test_affordable_bound_closed_form():
    rng = make_rng(5)
    for _ in range(10 ** 4):
        d = int(rng.integers(10, 40))
        t = random_valid_t(d, rng)
        assert lemma5_bound(t, d) == Fraction(2, 3) * d - Fraction({10: 2, 11: 1}.get(d, 0), 3)


@pytest.mark.parametrize('n', [4, 6, 8, 10])
def test_even_cycles(n):
    g = cycle(n)
    assert chi(g) == 2
    assert not is_dp_k_colorable(g, 2)
    assert is_dp_k_colorable(g, 3) is True


def test_chromatic_chain_on_small_graphs():
    for g in connected_graphs_from_atlas(5):
        c, l, d = chi(g), chi_list(g), chi_dp(g)
        assert c <= l <= d


def test_oracle_equivalence_at_two_colors():
    for g in connected_graphs_from_atlas(5):
        fast = is_dp_k_colorable(g, 2)
        slow = adversary_oracle(g, 2)
        assert bool(fast) == bool(slow)
        if not fast:
            assert fast.replay() and slow.replay()


def _host_corpus(rng):
    yield from connected_graphs_from_atlas(6)
    while True:
        yield random_connected_planar_graph(int(rng.integers(7, 9)), rng)


def test_extension_on_random_matchings():
    triangle = ConfigPattern.from_dict({'vertices': [{'hostDegree': 2}, {'hostDegree': 3}, {'hostDegree': 3}],
                                        'edges': [[0, 1], [1, 2], [0, 2]]})
    rng = make_rng(99)
    trials = applicable = hosts = 0
    for seed, g in enumerate(itertools.islice(_host_corpus(rng), 5000)):
        occurrences = find_pattern(g, triangle)
        hosts += bool(occurrences)
        for image in occurrences:
            order = [image[p] for p in triangle.order]
            if not check_lemma2_structural(g, image, order, 3):
                continue
            for keep in (1.0, 0.6):
                result = monte_carlo_extend(g, image, order, 3, trials=4, seed=seed, keep=keep)
                assert result.failures == []
                assert result.applicable == result.succeeded
                trials += result.trials
                applicable += result.applicable
        if trials >= 1000:
            break
    assert trials >= 1000
    assert hosts > 1
    assert applicable > 0


def test_pendant_vertex_keeps_a_color():
    rng = make_rng(13)
    g = Graph(4, [(0, 1), (1, 2), (2, 0), (2, 3)])
    lists = ListAssignment.uniform(4, 3)
    for _ in range(1000):
        m = random_matching_assignment(g, 3, rng)
        rest = Graph(3, [(0, 1), (1, 2), (2, 0)])
        base = find_coloring(rest, ListAssignment.uniform(3, 3), m, validate=False)
        if base is None:
            continue
        partial = DPColoring(dict(base.items()))
        available = residual_lists(g, [3], lists, m, partial)
        assert available[3]


def test_extension_matches_residual_conditions():
    rng = make_rng(21)
    g = Graph(5, [(0, 1), (1, 2), (2, 0), (1, 3), (2, 4), (3, 4)])
    lists = ListAssignment.uniform(5, 3)
    for _ in range(300):
        m = random_matching_assignment(g, 3, rng)
        rest = Graph(5, [(3, 4)])
        base = find_coloring(rest, lists, m, validate=False)
        partial = DPColoring({v: base[v] for v in (3, 4)})
        coloring = extend_coloring(g, [0, 1, 2], [0, 1, 2], lists, m, partial)
        assert is_valid_coloring(g, lists, m, coloring)


def test_small_planar_census():
    counts = dict.fromkeys(RuleVariant, 0)
    for g in connected_graphs_from_atlas(7):
        if not is_planar(g):
            continue
        satisfied = forbidden_variant(g)
        if not satisfied:
            continue
        assert is_dp_k_colorable(g, 3) is True
        for v in satisfied:
            counts[v] += 1
    assert all(count > 0 for count in counts.values())


@pytest.mark.parametrize('g, expected', [
    (cycle(5), 3),
    (cycle(9), 3),
    (Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]), 3),
])
def test_known_dp_values(g, expected):
    assert chi_dp(g) == expected


def test_planar_embedding_of_atlas_graphs():
    for g in connected_graphs_from_atlas(6):
        if is_planar(g):
            assert euler_charge_total(planar_embed(g)) == -8


if __name__ == "__main__":
    pytest.main([__file__, '-m', 'slow'])
