import itertools
import logging
import math
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx

from pydpcolor import Richness
from pydpcolor.base.errors import (Disconnected, InvalidEmbedding, NonPlanarOrTooLarge, NotGenusZero,
                                   NotOnFace)
from pydpcolor.base.types import BaseModel
from pydpcolor.core.graph import Graph, is_connected

logger = logging.getLogger(__name__)

Dart = Tuple[int, int]

BRUTE_FORCE_MAX_VERTICES = 9
BRUTE_FORCE_MAX_ROTATIONS = 2_000_000


class RotationSystem(BaseModel):
    """Cyclic order of the neighbors around every vertex."""

    __slots__ = ('order', '_pos')

    def __init__(self, order: Sequence[Sequence[int]]):
        self.order: Tuple[Tuple[int, ...], ...] = tuple(tuple(int(w) for w in around) for around in order)
        self._pos: Tuple[Dict[int, int], ...] = tuple({w: i for i, w in enumerate(around)} for around in self.order)

    def validate(self, g: Graph) -> None:
        if len(self.order) != g.n:
            raise InvalidEmbedding(f"rotation lists {len(self.order)} vertices, graph has {g.n}")
        for v, around in enumerate(self.order):
            if len(set(around)) != len(around) or set(around) != set(g.neighbors(v)):
                raise InvalidEmbedding(f"rotation at {v} is not a permutation of its neighbors")

    def successor(self, v: int, u: int) -> int:
        around = self.order[v]
        return around[(self._pos[v][u] + 1) % len(around)]

    def as_dict(self):
        return {'rotation': [list(a) for a in self.order]}


class Face(BaseModel):
    __slots__ = ('index', 'walk')

    def __init__(self, index: int, walk: Sequence[Dart]):
        self.index = index
        self.walk: Tuple[Dart, ...] = tuple(walk)

    @property
    def length(self) -> int:
        return len(self.walk)

    @property
    def vertices(self) -> Tuple[int, ...]:
        # boundary vertices with repetition, in walk order
        return tuple(u for u, _ in self.walk)

    def as_dict(self):
        return {'index': self.index, 'length': self.length, 'vertices': list(self.vertices)}


class PlaneEmbedding(BaseModel):
    """
    A connected graph together with a genus-0 rotation system and its facial walks.

    Incidences are kept with multiplicity: corners(v) lists one face per corner of v,
    a face walk may visit a vertex several times and a face may lie on both sides of an edge.
    """

    __slots__ = ('graph', 'rotation', 'faces', '_dart_face', '_corners')

    def __init__(self, graph: Graph, rotation: RotationSystem, faces: Sequence[Face],
                 dart_face: Dict[Dart, int], corners: Sequence[Tuple[int, ...]]):
        self.graph = graph
        self.rotation = rotation
        self.faces: Tuple[Face, ...] = tuple(faces)
        self._dart_face = dart_face
        self._corners = tuple(corners)

    def face_of(self, dart: Dart) -> Face:
        return self.faces[self._dart_face[dart]]

    def face_across(self, dart: Dart) -> Face:
        u, v = dart
        return self.faces[self._dart_face[(v, u)]]

    def corners(self, v: int) -> Tuple[Face, ...]:
        return tuple(self.faces[i] for i in self._corners[v])

    def incident_faces(self, v: int) -> List[Face]:
        seen, result = set(), []
        for i in self._corners[v]:
            if i not in seen:
                seen.add(i)
                result.append(self.faces[i])
        return result

    def edge_faces(self, u: int, v: int) -> Tuple[Face, Face]:
        return self.faces[self._dart_face[(u, v)]], self.faces[self._dart_face[(v, u)]]

    def adjacent_faces(self, f: Union[Face, int]) -> List[Face]:
        return [g for _, g in face_adjacency(self, f)]

    def as_dict(self):
        return {'n': self.graph.n, 'rotation': [list(a) for a in self.rotation.order],
                'faces': [f.as_dict() for f in self.faces]}


def _face(emb: PlaneEmbedding, f: Union[Face, int]) -> Face:
    return emb.faces[f] if isinstance(f, int) else f


def _trace_orbits(g: Graph, rot: RotationSystem) -> Tuple[List[List[Dart]], Dict[Dart, int]]:
    dart_face: Dict[Dart, int] = {}
    walks: List[List[Dart]] = []
    for u, v in g.edges:
        for start in ((u, v), (v, u)):
            if start in dart_face:
                continue
            walk, dart = [], start
            while dart not in dart_face:
                dart_face[dart] = len(walks)
                walk.append(dart)
                a, b = dart
                dart = (b, rot.successor(b, a))
            walks.append(walk)
    return walks, dart_face


def trace_faces(g: Graph, rot: RotationSystem) -> PlaneEmbedding:
    """
    Trace the facial walks of a rotation system and check it is a plane embedding.

    The successor of dart (u, v) is (v, w) with w the rotation successor of u at v.
    Args:
        g: connected graph
        rot: rotation system for g

    Returns:
        the PlaneEmbedding; Disconnected or NotGenusZero when g/rot are not a connected plane map
    """
    rot.validate(g)
    if not is_connected(g):
        raise Disconnected("face tracing needs a connected graph")
    if g.n == 1:
        # a lone vertex: one face with an empty boundary
        return PlaneEmbedding(g, rot, [Face(0, ())], {}, [(0,)])

    walks, dart_face = _trace_orbits(g, rot)
    euler = g.n - g.num_edges + len(walks)
    if euler != 2:
        raise NotGenusZero(euler)
    faces = [Face(i, walk) for i, walk in enumerate(walks)]
    corners = [tuple(dart_face[(u, v)] for u in rot.order[v]) for v in g.vertices()]
    logger.debug("traced %d faces on %d vertices, %d edges", len(faces), g.n, g.num_edges)
    return PlaneEmbedding(g, rot, faces, dart_face, corners)


def face_adjacency(emb: PlaneEmbedding, f: Union[Face, int]) -> List[Tuple[Dart, Face]]:
    """For every boundary dart of f, the face on the other side (f itself across a bridge)."""
    f = _face(emb, f)
    return [(dart, emb.face_across(dart)) for dart in f.walk]


def is_adjacent(emb: PlaneEmbedding, f: Union[Face, int], g: Union[Face, int]) -> bool:
    g = _face(emb, g)
    return any(h.index == g.index for _, h in face_adjacency(emb, f))


def classify_vertex(emb: PlaneEmbedding, v: int, f: Union[Face, int]) -> Richness:
    """
    Poor / semi-rich / rich status of v with respect to the face f: the number of
    distinct 3-faces incident to v that share an edge with f (two or more / one / none).
    """
    f = _face(emb, f)
    if v not in f.vertices:
        raise NotOnFace(f"vertex {v} is not on face {f.index}")
    count = 0
    for t in emb.incident_faces(v):
        if t.length == 3 and t.index != f.index and is_adjacent(emb, t, f):
            count += 1
    if count >= 2:
        return Richness.POOR
    return Richness.SEMI_RICH if count == 1 else Richness.RICH


def euler_charge_total(emb: PlaneEmbedding) -> int:
    # sum of (d(x) - 4) over vertices and faces
    g = emb.graph
    return sum(g.degree(v) - 4 for v in g.vertices()) + sum(f.length - 4 for f in emb.faces)


def _rotation_count(g: Graph) -> int:
    return math.prod(math.factorial(max(g.degree(v) - 1, 0)) for v in g.vertices())


def brute_force_embed(g: Graph, max_vertices: int = BRUTE_FORCE_MAX_VERTICES,
                      max_rotations: int = BRUTE_FORCE_MAX_ROTATIONS) -> PlaneEmbedding:
    """
    Search all rotation systems of a small connected graph for one of genus 0.

    The first neighbor of every vertex is pinned, so each cyclic order is tried once.
    """
    if g.n > max_vertices:
        raise NonPlanarOrTooLarge(f"{g.n} vertices exceed the brute-force bound {max_vertices}")
    if not is_connected(g):
        raise Disconnected("embedding search needs a connected graph")
    if g.n >= 3 and g.num_edges > 3 * g.n - 6:
        raise NonPlanarOrTooLarge(f"{g.num_edges} edges exceed 3n-6, graph is not planar")
    total = _rotation_count(g)
    if total > max_rotations:
        raise NonPlanarOrTooLarge(f"{total} rotation systems exceed the search bound {max_rotations}")

    choices = []
    for v in g.vertices():
        around = sorted(g.neighbors(v))
        if len(around) <= 2:
            choices.append([tuple(around)])
        else:
            choices.append([(around[0],) + rest for rest in itertools.permutations(around[1:])])

    faces_needed = 2 - g.n + g.num_edges
    for order in itertools.product(*choices):
        rot = RotationSystem(order)
        walks, _ = _trace_orbits(g, rot)
        if len(walks) == faces_needed or g.n == 1:
            return trace_faces(g, rot)
    raise NonPlanarOrTooLarge(f"no genus-0 rotation among {total} candidates")


def planar_embed(g: Graph) -> PlaneEmbedding:
    """Genus-0 embedding of a connected planar graph of any size (networkx planarity test)."""
    if not is_connected(g):
        raise Disconnected("embedding needs a connected graph")
    planar, emb = nx.check_planarity(g.to_networkx())
    if not planar:
        raise NonPlanarOrTooLarge("graph is not planar")
    order = [list(emb.neighbors_cw_order(v)) if g.degree(v) else [] for v in g.vertices()]
    return trace_faces(g, RotationSystem(order))


def embedding_from_positions(g: Graph, pos: Mapping[int, Sequence[float]]) -> PlaneEmbedding:
    """
    Rotation system read off a straight-line drawing: neighbors sorted counter-clockwise.
    """
    order = []
    for v in g.vertices():
        x0, y0 = pos[v]
        order.append(sorted(g.neighbors(v), key=lambda w: math.atan2(pos[w][1] - y0, pos[w][0] - x0)))
    return trace_faces(g, RotationSystem(order))


def rotation_from_lists(order: Iterable[Iterable[int]]) -> Tuple[Graph, RotationSystem]:
    """
    Graph and rotation from per-vertex neighbor lists (the embedding file payload).
    """
    order = [list(a) for a in order]
    edges = set()
    for v, around in enumerate(order):
        for w in around:
            if not 0 <= w < len(order):
                raise InvalidEmbedding(f"vertex {v} lists unknown neighbor {w}")
            if v not in order[w]:
                raise InvalidEmbedding(f"edge {v}-{w} is listed at {v} only")
            edges.add((min(v, w), max(v, w)))
    g = Graph(len(order), edges)
    rot = RotationSystem(order)
    rot.validate(g)
    return g, rot


def face_length_histogram(emb: PlaneEmbedding) -> Dict[int, int]:
    hist: Dict[int, int] = {}
    for f in emb.faces:
        hist[f.length] = hist.get(f.length, 0) + 1
    return dict(sorted(hist.items()))


def find_face(emb: PlaneEmbedding, cycle: Sequence[int]) -> Optional[Face]:
    # face whose boundary visits exactly these vertices in this cyclic order (either direction)
    target = list(cycle)
    for f in emb.faces:
        verts = list(f.vertices)
        if len(verts) != len(target):
            continue
        for seq in (verts, verts[::-1]):
            doubled = seq + seq
            if any(doubled[i:i + len(target)] == target for i in range(len(seq))):
                return f
    return None
