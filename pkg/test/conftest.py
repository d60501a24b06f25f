# ！/usr/bin/env python
# -*- coding: UTF-8 -*-
"""
@Project: pydpcolor
@File: conftest
@Date: 2026/10/17
"""

import math

import pytest

from pydpcolor.core.embedding import embedding_from_positions, planar_embed
from pydpcolor.core.generators import cycle
from pydpcolor.core.graph import Graph


def polar(r, turns):
    return (r * math.cos(2 * math.pi * turns), r * math.sin(2 * math.pi * turns))


def ring_positions(n, r=1.0):
    return {i: polar(r, i / n) for i in range(n)}


@pytest.fixture
def house():
    # square 0-1-2-3 with roof vertex 4 over the edge 2-3
    g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (3, 4)])
    pos = {0: (0, 0), 1: (1, 0), 2: (1, 1), 3: (0, 1), 4: (0.5, 2)}
    return embedding_from_positions(g, pos)


@pytest.fixture
def eared_decagon():
    # C10 plus vertex 10 adjacent to 0 and 1: faces of length 3, 10 and 11
    g = Graph(11, list(cycle(10).edges) + [(0, 10), (1, 10)])
    pos = ring_positions(10)
    pos[10] = polar(2.0, 0.05)
    return embedding_from_positions(g, pos)


@pytest.fixture
def good_poor():
    """
    Decagon p0..p9 (vertices 0..9, all of degree 3) whose edge p0-p1 borders a 10-face
    a p0 p1 b q3 .. q8; triangles p9-p0-a and p1-p2-b, a and b of degree 4.
    a=10, b=11, q3..q8=12..17, c=18, d=19.
    """
    edges = list(cycle(10).edges)
    edges += [(10, 0), (10, 9), (11, 1), (11, 2)]
    edges += [(i, 9 + i) for i in range(3, 9)]
    edges += [(11, 12), (12, 13), (13, 14), (14, 15), (15, 16), (16, 17), (17, 10)]
    edges += [(18, 10), (18, 17), (19, 11), (19, 12)]
    pos = ring_positions(10)
    pos[10] = polar(2.0, 0.95)
    pos[11] = polar(2.0, 0.15)
    for i in range(3, 9):
        pos[9 + i] = polar(2.0, i / 10)
    pos[18] = polar(1.6, 0.875)
    pos[19] = polar(1.6, 0.225)
    return embedding_from_positions(Graph(20, edges), pos)


@pytest.fixture
def bad_pentagon():
    """
    Pentagon 0..4 of 3-vertices with spokes to 5..9; the outer ring is subdivided on
    two of its edges, so the pentagon sees exactly two 5-faces.
    """
    edges = list(cycle(5).edges) + [(i, i + 5) for i in range(5)]
    edges += [(5, 10), (10, 6), (6, 7), (7, 11), (11, 8), (8, 9), (9, 5)]
    return planar_embed(Graph(12, edges))
