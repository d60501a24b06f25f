import logging
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx
from networkx.algorithms.coloring import strategy_smallest_last

from pydpcolor import RuleVariant
from pydpcolor.base.errors import MalformedGraph6, SelfLoop
from pydpcolor.base.types import BaseModel

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]

DEFAULT_CYCLE_BOUND = 9


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph(BaseModel):
    """
    Simple undirected graph on the dense vertex set 0..n-1.

    Instances are immutable: edges are kept as a sorted tuple of (u, v) pairs with
    u < v and adjacency as a tuple of frozensets.
    """

    __slots__ = ('_n', '_edges', '_adj', '_edge_set', 'labels')

    def __init__(self, n: int, edges: Iterable[Edge] = (), labels: Optional[Sequence] = None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        edge_set: Set[Edge] = set()
        adj: List[Set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise SelfLoop(u)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{n - 1}")
            edge_set.add(_norm(u, v))
            adj[u].add(v)
            adj[v].add(u)
        self._n = n
        self._edge_set: FrozenSet[Edge] = frozenset(edge_set)
        self._edges: Tuple[Edge, ...] = tuple(sorted(edge_set))
        self._adj: Tuple[FrozenSet[int], ...] = tuple(frozenset(a) for a in adj)
        self.labels = tuple(labels) if labels is not None else tuple(range(n))

    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return self._edges

    @property
    def adjacency(self) -> Tuple[FrozenSet[int], ...]:
        return self._adj

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def vertices(self) -> range:
        return range(self._n)

    def neighbors(self, v: int) -> FrozenSet[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> List[int]:
        return [len(a) for a in self._adj]

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self._edge_set

    def min_degree(self) -> int:
        return min(self.degrees()) if self._n else 0

    def cyclomatic_number(self) -> int:
        return self.num_edges - self._n + number_of_components(self)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self._n))
        g.add_edges_from(self._edges)
        return g

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> 'Graph':
        nodes = sorted(g.nodes()) if all(isinstance(x, int) for x in g.nodes()) else list(g.nodes())
        index = {node: i for i, node in enumerate(nodes)}
        return cls(len(nodes), ((index[u], index[v]) for u, v in g.edges()), labels=nodes)

    def __eq__(self, other):
        return isinstance(other, Graph) and self._n == other._n and self._edge_set == other._edge_set

    def __hash__(self):
        return hash((self._n, self._edge_set))

    def __getstate__(self):
        return self._n, self._edges, self.labels

    def __setstate__(self, state):
        n, edges, labels = state
        self.__init__(n, edges, labels)

    def as_dict(self):
        return {'n': self._n, 'edges': [list(e) for e in self._edges]}


class CycleSpectrum(BaseModel):
    __slots__ = ('present', 'search_bound')

    def __init__(self, present: Iterable[int], search_bound: int):
        self.present: FrozenSet[int] = frozenset(present)
        self.search_bound = search_bound

    def __contains__(self, length: int) -> bool:
        return length in self.present

    def avoids(self, lengths: Iterable[int]) -> bool:
        lengths = list(lengths)
        if any(length > self.search_bound for length in lengths):
            raise ValueError(f"spectrum was searched only up to {self.search_bound}")
        return not any(length in self.present for length in lengths)

    def as_dict(self):
        return {'present': sorted(self.present), 'search_bound': self.search_bound}


def from_edge_list(pairs: Iterable[Sequence[int]], n: Optional[int] = None) -> Graph:
    """
    Build a graph from vertex pairs, collapsing duplicates.
    Args:
        pairs: iterable of (u, v) with vertices in 0..n-1
        n: vertex count, defaults to the largest referenced vertex + 1

    Returns:
        the Graph; SelfLoop is raised when some pair has u == v
    """
    pairs = [(int(p[0]), int(p[1])) for p in pairs]
    for u, v in pairs:
        if u == v:
            raise SelfLoop(u)
    if n is None:
        n = 1 + max((max(u, v) for u, v in pairs), default=-1)
    return Graph(n, pairs)


def parse_graph6(text: str) -> Graph:
    """
    Decode one graph6 line (an optional >>graph6<< header is accepted).
    """
    line = text.strip() if isinstance(text, str) else text.decode('ascii').strip()
    if line.startswith('>>graph6<<'):
        line = line[len('>>graph6<<'):]
    if not line:
        raise MalformedGraph6("empty graph6 string")
    try:
        g = nx.from_graph6_bytes(line.encode('ascii'))
    except (nx.NetworkXError, ValueError, IndexError, UnicodeEncodeError) as e:
        raise MalformedGraph6(f"bad graph6 string {line!r}: {e}") from e
    return Graph(g.number_of_nodes(), g.edges())


def parse_sparse6(text: str) -> Graph:
    line = text.strip()
    if line.startswith('>>sparse6<<'):
        line = line[len('>>sparse6<<'):]
    try:
        g = nx.from_sparse6_bytes(line.encode('ascii'))
    except (nx.NetworkXError, ValueError, IndexError, UnicodeEncodeError) as e:
        raise MalformedGraph6(f"bad sparse6 string {line!r}: {e}") from e
    # sparse6 may carry loops and multi-edges; a simple graph is required here
    return Graph(g.number_of_nodes(), g.edges())


def parse_graph_line(text: str) -> Graph:
    line = text.strip()
    if line.startswith(':') or line.startswith('>>sparse6<<'):
        return parse_sparse6(line)
    return parse_graph6(line)


def encode_graph6(g: Graph) -> str:
    return nx.to_graph6_bytes(g.to_networkx(), header=False).decode('ascii').strip()


def cycle_spectrum(g: Graph, max_len: int = DEFAULT_CYCLE_BOUND) -> CycleSpectrum:
    """
    Exact set of cycle lengths 3..max_len present in g.

    Every cycle is found from its smallest vertex s, extending simple paths through
    vertices larger than s only. The search stops as soon as all lengths are found.
    """
    if max_len < 3:
        raise ValueError("max_len must be at least 3")
    wanted = set(range(3, max_len + 1))
    found: Set[int] = set()
    adj = [sorted(a) for a in g.adjacency]

    for s in range(g.n):
        if found == wanted:
            break
        if g.degree(s) < 2:
            continue
        on_path = [False] * g.n
        on_path[s] = True
        # (vertex, depth, neighbor cursor) frames, depth = edges on the path so far
        stack = [(s, 0, iter(adj[s]))]
        while stack and found != wanted:
            v, depth, it = stack[-1]
            w = next(it, None)
            if w is None:
                stack.pop()
                if v != s:
                    on_path[v] = False
                continue
            if w == s:
                if depth + 1 >= 3:
                    found.add(depth + 1)
                continue
            if w < s or on_path[w] or depth + 1 >= max_len:
                continue
            on_path[w] = True
            stack.append((w, depth + 1, iter(adj[w])))
    logger.debug("cycle spectrum up to %d: %s", max_len, sorted(found))
    return CycleSpectrum(found, max_len)


def forbidden_variant(g: Graph, spectrum: Optional[CycleSpectrum] = None) -> Set[RuleVariant]:
    # variants whose forbidden cycle lengths are all absent
    if spectrum is None or spectrum.search_bound < 9:
        spectrum = cycle_spectrum(g, DEFAULT_CYCLE_BOUND)
    return {variant for variant in RuleVariant if spectrum.avoids(variant.forbidden)}


def delete_vertices(g: Graph, removed: Iterable[int]) -> Tuple[Graph, Dict[int, int]]:
    """
    Induced subgraph on V(g) minus removed.
    Returns:
        (subgraph, old->new vertex map); vertices keep their relative order
    """
    removed = set(removed)
    for v in removed:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} not in graph")
    kept = [v for v in g.vertices() if v not in removed]
    mapping = {old: new for new, old in enumerate(kept)}
    edges = [(mapping[u], mapping[v]) for u, v in g.edges if u in mapping and v in mapping]
    return Graph(len(kept), edges, labels=[g.labels[v] for v in kept]), mapping


def induced_subgraph(g: Graph, kept: Iterable[int]) -> Tuple[Graph, Dict[int, int]]:
    kept = set(kept)
    return delete_vertices(g, [v for v in g.vertices() if v not in kept])


def components(g: Graph) -> List[List[int]]:
    return sorted(sorted(c) for c in nx.connected_components(g.to_networkx()))


def number_of_components(g: Graph) -> int:
    return nx.number_connected_components(g.to_networkx())


def is_connected(g: Graph) -> bool:
    return g.n > 0 and number_of_components(g) == 1


def spanning_forest(g: Graph) -> List[Edge]:
    """
    BFS spanning forest, each component rooted at its smallest vertex.
    Returns:
        forest edges as (parent, child) pairs in BFS discovery order
    """
    h = g.to_networkx()
    forest: List[Edge] = []
    for comp in components(g):
        forest.extend(nx.bfs_edges(h, comp[0], sort_neighbors=sorted))
    return forest


def degeneracy_order(g: Graph) -> List[int]:
    """Smallest-last order: every vertex has at most degeneracy(g) neighbors after it."""
    return list(reversed(strategy_smallest_last(g.to_networkx(), None)))


def degeneracy(g: Graph) -> int:
    if g.n == 0:
        return 0
    return max(nx.core_number(g.to_networkx()).values())


def k_core(g: Graph, k: int) -> Tuple[Graph, Dict[int, int]]:
    """
    Largest induced subgraph of minimum degree >= k, with the old->new map.
    """
    core = nx.k_core(g.to_networkx(), k)
    return induced_subgraph(g, core.nodes())


def clique_number(g: Graph) -> int:
    if g.n == 0:
        return 0
    return max(len(c) for c in nx.find_cliques(g.to_networkx()))


def is_planar(g: Graph) -> bool:
    planar, _ = nx.check_planarity(g.to_networkx())
    return planar
