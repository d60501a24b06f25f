import itertools
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

from pydpcolor.base.errors import BudgetExceeded
from pydpcolor.base.types import BaseModel
from pydpcolor.core.dp import (ListAssignment, MatchingAssignment, equality_matching, find_coloring,
                               perm_colorable, search_order_rank)
from pydpcolor.core.graph import Edge, Graph, clique_number, degeneracy, encode_graph6, k_core, spanning_forest
from pydpcolor.utils import get_default_budget, get_partial_matchings, get_permutations

logger = logging.getLogger(__name__)

DEFAULT_CHOOSABILITY_VERTICES = 7


class AdversaryCertificate(BaseModel):
    """
    An assignment under which no coloring exists. kind 'dp' carries a matching
    assignment over lists [k]; kind 'list' carries a list assignment (proper colorings).
    Certificates are falsy so that `if is_dp_k_colorable(...)` reads naturally.
    """

    __slots__ = ('kind', 'graph', 'k', 'lists', 'matching')

    def __init__(self, kind: str, graph: Graph, k: int, lists: ListAssignment,
                 matching: Optional[MatchingAssignment] = None):
        self.kind = kind
        self.graph = graph
        self.k = k
        self.lists = lists
        self.matching = matching if matching is not None else equality_matching(graph, lists)

    def __bool__(self):
        return False

    def replay(self) -> bool:
        # True when the assignment indeed admits no coloring
        return find_coloring(self.graph, self.lists, self.matching) is None

    def as_dict(self):
        data = {
            'kind': self.kind,
            'k': self.k,
            'n': self.graph.n,
            'edges': [list(e) for e in self.graph.edges],
            'graph6': encode_graph6(self.graph) if self.graph.n else '',
            'lists': [list(l) for l in self.lists.lists],
        }
        if self.kind == 'dp':
            data['matching'] = [[u, v, [list(p) for p in sorted(self.matching.pairs(u, v))]]
                                for u, v in self.graph.edges if self.matching.pairs(u, v)]
        return data

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: Dict) -> 'AdversaryCertificate':
        graph = Graph(data['n'], [tuple(e) for e in data['edges']])
        lists = ListAssignment(data['lists'])
        matching = None
        if data['kind'] == 'dp':
            matching = MatchingAssignment({(u, v): [tuple(p) for p in pairs] for u, v, pairs in data['matching']})
        return cls(data['kind'], graph, data['k'], lists, matching)


def _reduce(g: Graph, k: int, reduce_core: bool) -> Tuple[Graph, Dict[int, int]]:
    if not reduce_core:
        return g, {v: v for v in g.vertices()}
    core, mapping = k_core(g, k)
    if core.n < g.n:
        logger.debug("%d-core keeps %d of %d vertices", k, core.n, g.n)
    return core, mapping


def _lift(g: Graph, k: int, mapping: Dict[int, int], cert: AdversaryCertificate) -> AdversaryCertificate:
    """
    Carry a certificate of the k-core back to g. Vertices outside the core get lists of
    unused colors and no matchings; the core alone already blocks every coloring.
    """
    back = {new: old for old, new in mapping.items()}
    if cert.kind == 'dp':
        lists = ListAssignment.uniform(g.n, k)
        matching = MatchingAssignment({(back[u], back[v]): cert.matching.pairs(u, v) for u, v in cert.graph.edges})
        return AdversaryCertificate('dp', g, k, lists, matching)
    top = 1 + max((c for l in cert.lists.lists for c in l), default=-1)
    lists = []
    for v in g.vertices():
        if v in mapping:
            lists.append(cert.lists[mapping[v]])
        else:
            lists.append(range(top, top + k))
            top += k
    return AdversaryCertificate('list', g, k, ListAssignment(lists))


def chi(g: Graph) -> int:
    """Chromatic number by identity-matching search, starting at the clique number."""
    if g.n == 0:
        return 0
    k = max(1, clique_number(g))
    while find_coloring(g, ListAssignment.uniform(g.n, k), MatchingAssignment.identity(g, k), validate=False) is None:
        k += 1
    return k


def _scan_block(adj: Sequence[Sequence[int]], k: int, forest: Sequence[Edge], cotree: Sequence[Edge],
                rank: Sequence[int], prefix: Tuple[int, ...]) -> Optional[Tuple[int, ...]]:
    """
    Try every permutation choice for the cotree edges after the fixed prefix.
    Returns:
        permutation indices (into get_permutations(k)) of the first uncolorable assignment, or None
    """
    perms = get_permutations(k)
    inverse = [tuple(p.index(c) for c in range(k)) for p in perms]
    identity = tuple(range(k))
    partner = {}
    for u, v in forest:
        partner[(u, v)] = partner[(v, u)] = identity
    for (u, v), idx in zip(cotree, prefix):
        partner[(u, v)], partner[(v, u)] = perms[idx], inverse[idx]
    free = cotree[len(prefix):]
    for choice in itertools.product(range(len(perms)), repeat=len(free)):
        for (u, v), idx in zip(free, choice):
            partner[(u, v)], partner[(v, u)] = perms[idx], inverse[idx]
        if not perm_colorable(adj, k, partner, rank):
            return prefix + choice
    return None


def _block_depth(k: int, cotree_len: int, jobs: int) -> int:
    if jobs <= 1:
        return 0
    depth, blocks = 0, 1
    while depth < cotree_len and blocks < 4 * jobs:
        depth += 1
        blocks *= math.factorial(k)
    return depth


def _first_failure(g: Graph, k: int, forest: List[Edge], cotree: List[Edge], jobs: int) -> Optional[Tuple[int, ...]]:
    adj = [tuple(sorted(g.neighbors(v))) for v in g.vertices()]
    rank = search_order_rank(g)
    depth = _block_depth(k, len(cotree), jobs)
    if depth == 0:
        return _scan_block(adj, k, forest, cotree, rank, ())

    blocks = list(itertools.product(range(math.factorial(k)), repeat=depth))
    logger.info("splitting %d cotree edges into %d blocks over %d workers", len(cotree), len(blocks), jobs)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_scan_block, adj, k, forest, cotree, rank, prefix) for prefix in blocks]
        # blocks are consumed in order, the first failing block holds the lexicographic minimum
        for future in futures:
            result = future.result()
            if result is not None:
                for pending in futures:
                    pending.cancel()
                return result
    return None


def is_dp_k_colorable(g: Graph, k: int, budget: Optional[int] = None, jobs: int = 1,
                      reduce_core: bool = True) -> Union[bool, AdversaryCertificate]:
    """
    Decide DP-k-colorability by enumerating full permutation matchings, identity on a
    spanning forest: (k!)^(cyclomatic number) assignments.
    Args:
        g: the graph
        k: list size, at least 1
        budget: cap on the number of assignments, defaults to DPCOLOR_BUDGET
        jobs: worker processes for the block split
        reduce_core: drop vertices outside the k-core first

    Returns:
        True, or the lexicographically first failing assignment as an AdversaryCertificate
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    budget = get_default_budget() if budget is None else budget
    work, mapping = _reduce(g, k, reduce_core)
    if work.n == 0:
        return True
    forest = spanning_forest(work)
    tree_edges = {(min(u, v), max(u, v)) for u, v in forest}
    cotree = [e for e in work.edges if e not in tree_edges]
    cases = math.factorial(k) ** len(cotree)
    if cases > budget:
        raise BudgetExceeded(cases, budget)
    logger.debug("DP-%d search: %d normalized assignments", k, cases)

    failing = _first_failure(work, k, forest, cotree, jobs)
    if failing is None:
        return True
    perms = get_permutations(k)
    matchings = {e: [(c, c) for c in range(k)] for e in tree_edges}
    for (u, v), idx in zip(cotree, failing):
        matchings[(u, v)] = [(a, perms[idx][a]) for a in range(k)]
    cert = AdversaryCertificate('dp', work, k, ListAssignment.uniform(work.n, k), MatchingAssignment(matchings))
    return _lift(g, k, mapping, cert) if work.n < g.n else cert


def chi_dp(g: Graph, budget: Optional[int] = None, jobs: int = 1, reduce_core: bool = True) -> int:
    """
    DP chromatic number, searched upward from chi(g). Every graph is DP-(d+1)-colorable
    for its degeneracy d, so that value is returned without a search.
    Args:
        g: the graph
        budget: node budget handed to each is_dp_k_colorable call
        jobs: worker processes for the search
        reduce_core: search the k-core instead of g

    Returns:
        the least k such that g is DP-k-colorable
    """
    if g.n == 0:
        return 0
    upper = degeneracy(g) + 1
    k = chi(g)
    while k < upper:
        if is_dp_k_colorable(g, k, budget=budget, jobs=jobs, reduce_core=reduce_core):
            return k
        k += 1
    return upper


def elimination_order(g: Graph) -> List[int]:
    # greedy order maximizing the neighbors already placed, which keeps the boundary small
    placed: List[int] = []
    inside = set()
    remaining = set(g.vertices())
    while remaining:
        v = max(remaining, key=lambda x: (sum(1 for w in g.neighbors(x) if w in inside), g.degree(x), -x))
        placed.append(v)
        inside.add(v)
        remaining.discard(v)
    return placed


def _canonical(state: FrozenSet[Tuple[int, ...]]) -> Tuple[Tuple[int, ...], ...]:
    # relabel colors by first appearance over the sorted colorings
    relabel: Dict[int, int] = {}
    out = []
    for coloring in sorted(state):
        out.append(tuple(relabel.setdefault(c, len(relabel)) for c in coloring))
    return tuple(sorted(out))


class _Frontier(object):
    """
    Vertex-by-vertex layer of an adversary enumeration.

    A state is the set of colorings of the boundary (placed vertices with unplaced
    neighbors) that extend to proper colorings of everything placed so far.
    """

    def __init__(self, g: Graph, order: Sequence[int]):
        self.g = g
        self.order = list(order)
        position = {v: i for i, v in enumerate(self.order)}
        self.last = {v: max([position[v]] + [position[w] for w in g.neighbors(v)]) for v in g.vertices()}

    def step(self, i: int, boundary: Tuple[int, ...]) -> Tuple[List[int], List[int], Tuple[int, ...]]:
        v = self.order[i]
        back = [j for j, u in enumerate(boundary) if self.g.has_edge(u, v)]
        extended = boundary + (v,)
        keep = [j for j, u in enumerate(extended) if self.last[u] > i]
        return back, keep, tuple(extended[j] for j in keep)


def is_k_choosable(g: Graph, k: int, max_vertices: int = DEFAULT_CHOOSABILITY_VERTICES,
                   budget: Optional[int] = None,
                   reduce_core: bool = True) -> Union[bool, AdversaryCertificate]:
    """
    Decide k-choosability by enumerating list assignments vertex by vertex.

    The next list takes some colors present in the current state plus fresh ones; states
    are merged up to a global renaming of colors. The budget counts processed states.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    budget = get_default_budget() if budget is None else budget
    work, mapping = _reduce(g, k, reduce_core)
    if work.n == 0:
        return True
    if work.n > max_vertices:
        raise BudgetExceeded(work.n, max_vertices, unit='vertices')

    frontier = _Frontier(work, elimination_order(work))
    layer: Dict[Tuple, Tuple[FrozenSet[Tuple[int, ...]], Tuple[Tuple[int, ...], ...]]] = {(): (frozenset({()}), ())}
    boundary: Tuple[int, ...] = ()
    processed = 0
    for i in range(work.n):
        back, keep, next_boundary = frontier.step(i, boundary)
        next_layer: Dict = {}
        for state, chosen in layer.values():
            processed += 1
            if processed > budget:
                raise BudgetExceeded(processed, budget, unit='states')
            present = sorted({c for coloring in state for c in coloring})
            top = 1 + max((c for l in chosen for c in l), default=-1)
            for fresh_count in range(k + 1):
                if k - fresh_count > len(present):
                    continue
                fresh = tuple(range(top, top + fresh_count))
                for picked in itertools.combinations(present, k - fresh_count):
                    new_list = picked + fresh
                    new_state = set()
                    for coloring in state:
                        banned = {coloring[j] for j in back}
                        for c in new_list:
                            if c not in banned:
                                full = coloring + (c,)
                                new_state.add(tuple(full[j] for j in keep))
                    lists = chosen + (new_list,)
                    if not new_state:
                        logger.debug("list adversary wins after %d states", processed)
                        return _list_certificate(g, work, k, mapping, frontier.order, lists, reduce_core)
                    key = _canonical(frozenset(new_state))
                    if key not in next_layer:
                        next_layer[key] = (frozenset(new_state), lists)
        layer = next_layer
        boundary = next_boundary
    logger.debug("%d-choosable, %d states processed", k, processed)
    return True


def _list_certificate(g: Graph, work: Graph, k: int, mapping: Dict[int, int], order: Sequence[int],
                      lists: Sequence[Tuple[int, ...]], reduce_core: bool) -> AdversaryCertificate:
    top = 1 + max(c for l in lists for c in l)
    per_vertex: List[Sequence[int]] = [()] * work.n
    for v, l in zip(order, lists):
        per_vertex[v] = l
    for i in range(len(lists), len(order)):
        per_vertex[order[i]] = range(top, top + k)
        top += k
    cert = AdversaryCertificate('list', work, k, ListAssignment(per_vertex))
    return _lift(g, k, mapping, cert) if reduce_core and work.n < g.n else cert


def chi_list(g: Graph, max_vertices: int = DEFAULT_CHOOSABILITY_VERTICES, budget: Optional[int] = None,
             reduce_core: bool = True) -> int:
    """Choice number: least k with g k-choosable."""
    if g.n == 0:
        return 0
    upper = degeneracy(g) + 1
    k = chi(g)
    while k < upper:
        if is_k_choosable(g, k, max_vertices=max_vertices, budget=budget, reduce_core=reduce_core):
            return k
        k += 1
    return upper


def adversary_oracle(g: Graph, k: int, budget: Optional[int] = None) -> Union[bool, AdversaryCertificate]:
    """
    Unrestricted DP-k check: every edge may carry any partial matching, no relabeling
    and no core reduction. Slow; meant as a reference for tiny graphs.
    """
    budget = get_default_budget() if budget is None else budget
    if g.n == 0:
        return True
    matchings = get_partial_matchings(k)
    frontier = _Frontier(g, elimination_order(g))
    layer: Dict[FrozenSet[Tuple[int, ...]], Tuple] = {frozenset({()}): ()}
    boundary: Tuple[int, ...] = ()
    work = 0
    for i in range(g.n):
        v = frontier.order[i]
        back, keep, next_boundary = frontier.step(i, boundary)
        next_layer: Dict = {}
        for state, chosen in layer.items():
            for choice in itertools.product(matchings, repeat=len(back)):
                work += 1
                if work > budget:
                    raise BudgetExceeded(work, budget)
                blocked = [frozenset(ms) for ms in choice]
                new_state = set()
                for coloring in state:
                    for c in range(k):
                        if any((coloring[j], c) in ms for j, ms in zip(back, blocked)):
                            continue
                        full = coloring + (c,)
                        new_state.add(tuple(full[j] for j in keep))
                path = chosen + tuple(((boundary[j], v), ms) for j, ms in zip(back, choice))
                if not new_state:
                    matching = MatchingAssignment(dict(path))
                    return AdversaryCertificate('dp', g, k, ListAssignment.uniform(g.n, k), matching)
                next_layer.setdefault(frozenset(new_state), path)
        layer = next_layer
        boundary = next_boundary
    return True
