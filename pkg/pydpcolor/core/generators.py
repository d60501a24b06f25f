import logging
from typing import Callable, Dict, List, Optional

import networkx as nx
import numpy as np

from pydpcolor.core.dp import ListAssignment, MatchingAssignment
from pydpcolor.core.embedding import PlaneEmbedding, planar_embed
from pydpcolor.core.graph import Graph

logger = logging.getLogger(__name__)

# named test graphs, all built through networkx
NAMED_GRAPHS: Dict[str, Callable[[], nx.Graph]] = {
    'petersen': nx.petersen_graph,
    'dodecahedron': nx.dodecahedral_graph,
    'cube': nx.cubical_graph,
    'tetrahedron': lambda: nx.complete_graph(4),
    'octahedron': nx.octahedral_graph,
    'icosahedron': nx.icosahedral_graph,
    'prism': lambda: nx.circular_ladder_graph(3),
    'k33': lambda: nx.complete_bipartite_graph(3, 3),
    'k5': lambda: nx.complete_graph(5),
    'truncated-tetrahedron': nx.truncated_tetrahedron_graph,
}


def make_rng(seed: Optional[int] = None) -> np.random.Generator:
    return np.random.default_rng(seed)


def named_graph(name: str) -> Graph:
    try:
        factory = NAMED_GRAPHS[name]
    except KeyError:
        raise ValueError(f"unknown graph {name!r}, choose from {', '.join(sorted(NAMED_GRAPHS))}") from None
    return Graph.from_networkx(factory())


def cycle(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def random_tree(n: int, rng: np.random.Generator) -> Graph:
    if n <= 1:
        return Graph(n)
    # attach every vertex to a uniformly chosen earlier one
    return Graph(n, [(int(rng.integers(0, v)), v) for v in range(1, n)])


def random_connected_planar_graph(n: int, rng: np.random.Generator, extra_edges: Optional[int] = None) -> Graph:
    """
    Random tree plus shuffled non-edges, each kept only if the graph stays planar.
    Args:
        n: vertex count
        rng: numpy generator
        extra_edges: edges to try adding, defaults to a random share of 2n-5

    Returns:
        a connected planar Graph
    """
    g = random_tree(n, rng).to_networkx()
    if n < 3:
        return Graph.from_networkx(g)
    if extra_edges is None:
        extra_edges = int(rng.integers(0, 2 * n - 4))
    candidates = [(u, v) for u in range(n) for v in range(u + 1, n) if not g.has_edge(u, v)]
    rng.shuffle(candidates)
    added = 0
    for u, v in candidates:
        if added >= extra_edges:
            break
        g.add_edge(u, v)
        if nx.check_planarity(g)[0]:
            added += 1
        else:
            g.remove_edge(u, v)
    return Graph.from_networkx(g)


def random_plane_embedding(n: int, rng: np.random.Generator) -> PlaneEmbedding:
    return planar_embed(random_connected_planar_graph(n, rng))


def random_matching_assignment(g: Graph, k: int, rng: np.random.Generator, keep: float = 1.0) -> MatchingAssignment:
    """
    Random permutation matching per edge over lists [k]; each pair survives with probability keep.
    """
    matchings = {}
    for u, v in g.edges:
        perm = rng.permutation(k)
        matchings[(u, v)] = [(a, int(perm[a])) for a in range(k) if keep >= 1.0 or rng.random() < keep]
    return MatchingAssignment(matchings)


def random_list_assignment(n: int, k: int, pool: int, rng: np.random.Generator) -> ListAssignment:
    return ListAssignment([sorted(int(c) for c in rng.choice(pool, size=k, replace=False)) for _ in range(n)])


def random_valid_t(d_f: int, rng: np.random.Generator) -> Dict[int, int]:
    """Random path-count vector t with sum(i * t_i) = d_f."""
    t: Dict[int, int] = {}
    left = d_f
    while left:
        i = int(rng.integers(1, left + 1))
        t[i] = t.get(i, 0) + 1
        left -= i
    return dict(sorted(t.items()))


def connected_graphs_from_atlas(max_vertices: int) -> List[Graph]:
    # every connected graph on 1..max_vertices vertices (max 7), one per isomorphism class
    return [Graph.from_networkx(h) for h in nx.graph_atlas_g()
            if 0 < h.number_of_nodes() <= max_vertices and nx.is_connected(h)]
