import logging
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from networkx.utils import UnionFind

from pydpcolor.base.errors import (InvalidMatching, InvalidPartial, NonUniformLists, NotSpanningTree)
from pydpcolor.base.types import BaseModel
from pydpcolor.core.graph import Edge, Graph, degeneracy_order, number_of_components

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]

# unmatched entry of a partner array
NO_PARTNER = -1


class ListAssignment(BaseModel):
    __slots__ = ('lists',)

    def __init__(self, lists: Iterable[Iterable[int]]):
        self.lists: Tuple[Tuple[int, ...], ...] = tuple(tuple(sorted(set(int(c) for c in l))) for l in lists)

    @classmethod
    def uniform(cls, n: int, k: int) -> 'ListAssignment':
        return cls([range(k)] * n)

    def __len__(self):
        return len(self.lists)

    def __getitem__(self, v: int) -> Tuple[int, ...]:
        return self.lists[v]

    def uniform_size(self) -> Optional[int]:
        sizes = {len(l) for l in self.lists}
        return sizes.pop() if len(sizes) == 1 else None

    def as_dict(self):
        return {'lists': [list(l) for l in self.lists]}


class MatchingAssignment(BaseModel):
    """
    One (possibly empty) matching per edge, stored on the canonical orientation u < v:
    a pair (a, b) means color a at u is matched with color b at v.
    """

    __slots__ = ('_pairs', '_partner')

    def __init__(self, matchings: Mapping[Edge, Iterable[Pair]]):
        pairs: Dict[Edge, FrozenSet[Pair]] = {}
        for (u, v), ms in matchings.items():
            ms = [(int(a), int(b)) for a, b in ms]
            if u > v:
                u, v = v, u
                ms = [(b, a) for a, b in ms]
            pairs[(u, v)] = frozenset(ms) | pairs.get((u, v), frozenset())
        self._pairs = pairs
        self._partner: Dict[Edge, Dict[int, int]] = {}
        for (u, v), ms in pairs.items():
            forward, backward = {}, {}
            for a, b in ms:
                if a in forward or b in backward:
                    raise InvalidMatching(f"matching on edge {u}-{v} is not injective at ({a}, {b})")
                forward[a] = b
                backward[b] = a
            self._partner[(u, v)] = forward
            self._partner[(v, u)] = backward

    @classmethod
    def identity(cls, g: Graph, k: int) -> 'MatchingAssignment':
        return cls({e: [(c, c) for c in range(k)] for e in g.edges})

    @classmethod
    def empty(cls, g: Graph) -> 'MatchingAssignment':
        return cls({})

    def pairs(self, u: int, v: int) -> FrozenSet[Pair]:
        # oriented from u to v
        if u < v:
            return self._pairs.get((u, v), frozenset())
        return frozenset((b, a) for a, b in self._pairs.get((v, u), ()))

    def partner(self, u: int, a: int, v: int) -> Optional[int]:
        forward = self._partner.get((u, v))
        return forward.get(a) if forward else None

    def edges(self) -> List[Edge]:
        return sorted(self._pairs)

    def size(self) -> int:
        return sum(len(ms) for ms in self._pairs.values())

    def is_subassignment_of(self, other: 'MatchingAssignment') -> bool:
        return all(ms <= other._pairs.get(e, frozenset()) for e, ms in self._pairs.items())

    def validate(self, g: Graph, lists: ListAssignment) -> None:
        if len(lists) != g.n:
            raise InvalidMatching(f"list assignment covers {len(lists)} vertices, graph has {g.n}")
        for (u, v), ms in self._pairs.items():
            if not ms:
                continue
            if not g.has_edge(u, v):
                raise InvalidMatching(f"matching on non-edge {u}-{v}")
            lu, lv = set(lists[u]), set(lists[v])
            for a, b in ms:
                if a not in lu or b not in lv:
                    raise InvalidMatching(f"pair ({a}, {b}) on edge {u}-{v} uses a color outside the lists")

    def __eq__(self, other):
        if not isinstance(other, MatchingAssignment):
            return NotImplemented
        mine = {e: ms for e, ms in self._pairs.items() if ms}
        theirs = {e: ms for e, ms in other._pairs.items() if ms}
        return mine == theirs

    def __hash__(self):
        return hash(frozenset((e, ms) for e, ms in self._pairs.items() if ms))

    def as_dict(self):
        return {f"{u}-{v}": sorted(ms) for (u, v), ms in sorted(self._pairs.items())}


class CoverGraph(BaseModel):
    __slots__ = ('nodes', 'edges')

    def __init__(self, nodes: Sequence[Pair], edges: Sequence[Tuple[Pair, Pair]]):
        self.nodes = tuple(nodes)
        self.edges = tuple(edges)

    def as_dict(self):
        return {'nodes': len(self.nodes), 'edges': len(self.edges)}


class DPColoring(BaseModel):
    """Chosen color per vertex; may be partial (a coloring of an induced subgraph)."""

    __slots__ = ('colors',)

    def __init__(self, colors: Mapping[int, int]):
        self.colors: Dict[int, int] = dict(sorted((int(v), int(c)) for v, c in colors.items()))

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def __contains__(self, v: int) -> bool:
        return v in self.colors

    def __len__(self):
        return len(self.colors)

    def items(self):
        return self.colors.items()

    def as_list(self, n: int) -> List[int]:
        return [self.colors[v] for v in range(n)]

    def __eq__(self, other):
        return isinstance(other, DPColoring) and self.colors == other.colors

    def __hash__(self):
        return hash(tuple(self.colors.items()))

    def as_dict(self):
        return {'colors': dict(self.colors)}


def build_cover(g: Graph, lists: ListAssignment, m: MatchingAssignment) -> CoverGraph:
    """
    Cover graph: the clique {v} x L(v) per vertex plus one edge per matched pair.
    """
    m.validate(g, lists)
    nodes = [(v, c) for v in g.vertices() for c in lists[v]]
    edges = []
    for v in g.vertices():
        l = lists[v]
        edges.extend(((v, l[i]), (v, l[j])) for i in range(len(l)) for j in range(i + 1, len(l)))
    for u, v in g.edges:
        edges.extend(((u, a), (v, b)) for a, b in sorted(m.pairs(u, v)))
    return CoverGraph(nodes, edges)


def equality_matching(g: Graph, lists: ListAssignment) -> MatchingAssignment:
    # the matching assignment whose colorings are exactly the proper L-colorings
    return MatchingAssignment({(u, v): [(c, c) for c in set(lists[u]) & set(lists[v])] for u, v in g.edges})


def is_valid_coloring(g: Graph, lists: ListAssignment, m: MatchingAssignment, coloring: DPColoring) -> bool:
    for v in g.vertices():
        if v not in coloring or coloring[v] not in lists[v]:
            return False
    for u, v in g.edges:
        if m.partner(u, coloring[u], v) == coloring[v]:
            return False
    return True


def is_valid_partial(g: Graph, m: MatchingAssignment, partial: DPColoring) -> bool:
    return not any(u in partial and v in partial and m.partner(u, partial[u], v) == partial[v]
                   for u, v in g.edges)


class _Search(object):
    """
    Forward-checking backtracker over color positions.

    Residual lists are bitmasks over positions in the sorted list of each vertex; partner
    arrays map a position at v to the matched position at w, or NO_PARTNER.
    """

    def __init__(self, adj: Sequence[Sequence[int]], sizes: Sequence[int],
                 partner: Mapping[Tuple[int, int], Sequence[int]], rank: Sequence[int],
                 tries: Optional[Sequence[Sequence[int]]] = None):
        self.adj = adj
        self.partner = partner
        self.rank = rank
        self.tries = tries or [range(s) for s in sizes]
        self.residual = [(1 << s) - 1 for s in sizes]
        self.color = [NO_PARTNER] * len(adj)
        self.nodes = 0

    def assign(self, v: int, pos: int) -> Optional[List[Tuple[int, int]]]:
        """Color v and prune neighbors; returns the removals, None when a neighbor is wiped out."""
        removed = []
        self.color[v] = pos
        wiped = False
        for w in self.adj[v]:
            if self.color[w] != NO_PARTNER:
                continue
            p = self.partner[(v, w)][pos]
            if p != NO_PARTNER and self.residual[w] >> p & 1:
                self.residual[w] &= ~(1 << p)
                removed.append((w, p))
                if not self.residual[w]:
                    wiped = True
        if wiped:
            self.undo(v, removed)
            return None
        return removed

    def undo(self, v: int, removed: List[Tuple[int, int]]) -> None:
        self.color[v] = NO_PARTNER
        for w, p in removed:
            self.residual[w] |= 1 << p

    def run(self, uncolored: set) -> bool:
        if not uncolored:
            return True
        self.nodes += 1
        v = min(uncolored, key=lambda x: (bin(self.residual[x]).count('1'), self.rank[x]))
        mask = self.residual[v]
        uncolored.discard(v)
        for pos in self.tries[v]:
            if mask >> pos & 1:
                removed = self.assign(v, pos)
                if removed is not None:
                    if self.run(uncolored):
                        return True
                    self.undo(v, removed)
        uncolored.add(v)
        return False


def search_order_rank(g: Graph) -> List[int]:
    # reversed smallest-last order: each vertex sees few earlier neighbors
    rank = [0] * g.n
    for i, v in enumerate(reversed(degeneracy_order(g))):
        rank[v] = i
    return rank


def _partner_arrays(g: Graph, lists: ListAssignment, m: MatchingAssignment) -> Dict[Tuple[int, int], Tuple[int, ...]]:
    index = [{c: i for i, c in enumerate(l)} for l in lists.lists]
    partner = {}
    for u, v in g.edges:
        for x, y in ((u, v), (v, u)):
            row = [NO_PARTNER] * len(lists[x])
            for a, b in m.pairs(x, y):
                row[index[x][a]] = index[y][b]
            partner[(x, y)] = tuple(row)
    return partner


def find_coloring(g: Graph, lists: ListAssignment, m: MatchingAssignment,
                  fixed: Optional[Mapping[int, int]] = None, validate: bool = True,
                  rng: Optional[np.random.Generator] = None) -> Optional[DPColoring]:
    """
    Exhaustive search for an M-coloring from the lists.

    Args:
        g: the graph
        lists: list assignment L
        m: matching assignment on the edges of g
        fixed: colors pinned in advance (a partial coloring to extend)
        validate: check m against (g, lists) first
        rng: shuffle the color order of every vertex, giving a random coloring

    Returns:
        a DPColoring, or None when no M-coloring exists. Without rng colors are tried in
        increasing order with fail-first vertex selection, so the result is deterministic.
    """
    if validate:
        m.validate(g, lists)
    sizes = [len(l) for l in lists.lists]
    tries = [[int(p) for p in rng.permutation(s)] for s in sizes] if rng is not None else None
    search = _Search([tuple(sorted(g.neighbors(v))) for v in g.vertices()], sizes,
                     _partner_arrays(g, lists, m), search_order_rank(g), tries)
    uncolored = set(g.vertices())
    for v, c in sorted((fixed or {}).items()):
        if c not in lists[v]:
            raise InvalidPartial(f"fixed color {c} is not in L({v})")
        pos = lists[v].index(c)
        if not search.residual[v] >> pos & 1:
            raise InvalidPartial(f"fixed color {c} at {v} is matched to a fixed neighbor")
        # wipe-outs among free vertices are legal, they only mean no extension exists
        search.color[v] = pos
        for w in g.neighbors(v):
            p = search.partner[(v, w)][pos]
            if p != NO_PARTNER and search.color[w] == NO_PARTNER:
                search.residual[w] &= ~(1 << p)
        uncolored.discard(v)
    if any(not search.residual[v] for v in uncolored):
        return None
    found = search.run(uncolored)
    logger.debug("coloring search visited %d nodes: %s", search.nodes, 'found' if found else 'unsatisfiable')
    if not found:
        return None
    return DPColoring({v: lists[v][search.color[v]] for v in g.vertices()})


def perm_colorable(adj: Sequence[Sequence[int]], k: int, partner: Mapping[Tuple[int, int], Sequence[int]],
                   rank: Sequence[int]) -> bool:
    """Inner adversary check: lists [k] everywhere, partner arrays given directly."""
    search = _Search(adj, [k] * len(adj), partner, rank)
    return search.run(set(range(len(adj))))


def from_list_assignment(g: Graph, original: ListAssignment) -> Tuple[ListAssignment, MatchingAssignment]:
    """
    Relabel every list to 0..k-1 (sorted order) and match the positions of equal colors.
    """
    k = original.uniform_size()
    if k is None:
        raise NonUniformLists("lists must all have the same size")
    matchings = {}
    for u, v in g.edges:
        where = {c: j for j, c in enumerate(original[v])}
        matchings[(u, v)] = [(i, where[c]) for i, c in enumerate(original[u]) if c in where]
    return ListAssignment.uniform(g.n, k), MatchingAssignment(matchings)


def pull_back_coloring(coloring: DPColoring, original: ListAssignment) -> DPColoring:
    return DPColoring({v: original[v][c] for v, c in coloring.items()})


def _check_spanning_forest(g: Graph, tree: Sequence[Edge]) -> None:
    sets = UnionFind(g.vertices())
    for u, v in tree:
        if not g.has_edge(u, v):
            raise NotSpanningTree(f"{u}-{v} is not an edge")
        if sets[u] == sets[v]:
            raise NotSpanningTree(f"edge {u}-{v} closes a cycle")
        sets.union(u, v)
    if len(tree) != g.n - number_of_components(g):
        raise NotSpanningTree("edges do not span every component")


def gauge_normalize(g: Graph, m: MatchingAssignment, tree: Sequence[Edge],
                    k: int) -> Tuple[MatchingAssignment, Tuple[Tuple[int, ...], ...]]:
    """
    Relabel colors at each vertex so that every tree edge carries the identity matching.
    Args:
        g: graph with lists [k] everywhere
        m: matching assignment, full (size k) on the tree edges
        tree: spanning tree (forest for disconnected g) as vertex pairs
        k: list size

    Returns:
        (normalized assignment, perms) with perms[v][old color] = new color
    """
    _check_spanning_forest(g, tree)
    forest = nx.Graph()
    forest.add_nodes_from(g.vertices())
    forest.add_edges_from(tree)
    perm: List[Optional[List[int]]] = [None] * g.n
    for root in g.vertices():
        if perm[root] is not None:
            continue
        perm[root] = list(range(k))
        for u, v in nx.bfs_edges(forest, root, sort_neighbors=sorted):
            pairs = m.pairs(u, v)
            if len(pairs) != k:
                raise InvalidMatching(f"tree edge {u}-{v} needs a full matching, has {len(pairs)} pairs")
            perm[v] = [0] * k
            for a, b in pairs:
                perm[v][b] = perm[u][a]
    perms = tuple(tuple(p) for p in perm)
    normalized = MatchingAssignment({(u, v): [(perms[u][a], perms[v][b]) for a, b in m.pairs(u, v)]
                                     for u, v in m.edges()})
    return normalized, perms


def transport_coloring(coloring: DPColoring, perms: Sequence[Sequence[int]]) -> DPColoring:
    """Map a coloring of the normalized assignment back to the original labels."""
    inverse = [{new: old for old, new in enumerate(p)} for p in perms]
    return DPColoring({v: inverse[v][c] for v, c in coloring.items()})
