import itertools
import logging
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from networkx.algorithms.isomorphism import GraphMatcher

from pydpcolor.base.errors import ConditionsViolated, InvalidPartial, InvalidPattern, NonUniformLists
from pydpcolor.base.fields import lemma2_reason_fields
from pydpcolor.base.types import BaseModel
from pydpcolor.core.dp import (DPColoring, ListAssignment, MatchingAssignment, find_coloring, is_valid_coloring,
                               is_valid_partial)
from pydpcolor.core.generators import make_rng, random_matching_assignment
from pydpcolor.core.graph import Graph, delete_vertices
from pydpcolor.utils import derive_seeds

logger = logging.getLogger(__name__)

MAX_ORDER_SEARCH = 8

ResidualLists = Dict[int, FrozenSet[int]]


class ConfigPattern(BaseModel):
    """
    A configuration: pattern graph H on 0..l-1, the extension order, and per vertex
    the exact host degree and the number of host neighbors outside H.
    """

    __slots__ = ('graph', 'order', 'host_degree', 'outside', 'name')

    def __init__(self, graph: Graph, order: Sequence[int], host_degree: Sequence[Optional[int]],
                 outside: Sequence[Optional[int]], name: str = ''):
        l = graph.n
        if sorted(order) != list(range(l)):
            raise InvalidPattern(f"order {list(order)} is not a permutation of 0..{l - 1}")
        if len(host_degree) != l or len(outside) != l:
            raise InvalidPattern("one hostDegree/outsideNeighbors entry per pattern vertex is required")
        degrees, outs = [], []
        for v in range(l):
            d, o = host_degree[v], outside[v]
            if d is None and o is None:
                raise InvalidPattern(f"vertex {v} needs hostDegree or outsideNeighbors")
            if d is None:
                d = graph.degree(v) + o
            if o is None:
                o = d - graph.degree(v)
            if o < 0 or graph.degree(v) + o != d:
                raise InvalidPattern(f"vertex {v}: degree in H {graph.degree(v)} + outside {o} != host degree {d}")
            degrees.append(d)
            outs.append(o)
        self.graph = graph
        self.order: Tuple[int, ...] = tuple(order)
        self.host_degree: Tuple[int, ...] = tuple(degrees)
        self.outside: Tuple[int, ...] = tuple(outs)
        self.name = name

    @property
    def size(self) -> int:
        return self.graph.n

    def with_order(self, order: Sequence[int]) -> 'ConfigPattern':
        return ConfigPattern(self.graph, order, self.host_degree, self.outside, self.name)

    @classmethod
    def from_dict(cls, data: Mapping) -> 'ConfigPattern':
        try:
            vertices = data['vertices']
            edges = [tuple(e) for e in data.get('edges', [])]
            order = data.get('order', list(range(len(vertices))))
            graph = Graph(len(vertices), edges)
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidPattern(f"bad pattern document: {e}") from e
        return cls(graph, order, [v.get('hostDegree') for v in vertices],
                   [v.get('outsideNeighbors') for v in vertices], data.get('name', ''))

    def as_dict(self):
        data = {
            'vertices': [{'hostDegree': d, 'outsideNeighbors': o} for d, o in zip(self.host_degree, self.outside)],
            'edges': [list(e) for e in self.graph.edges],
            'order': list(self.order),
        }
        if self.name:
            data['name'] = self.name
        return data


class Lemma2Check(BaseModel):
    """Outcome of the structural check: reasons are (code, 1-based position or None)."""

    __slots__ = ('ok', 'reasons', 'order')

    def __init__(self, order: Sequence[int], reasons: Sequence[Tuple[str, Optional[int]]]):
        self.order = tuple(order)
        self.reasons = list(reasons)
        self.ok = not self.reasons

    def __bool__(self):
        return self.ok

    def codes(self) -> List[str]:
        return [code for code, _ in self.reasons]

    def describe(self) -> List[str]:
        return [f"{code}{'' if i is None else f'@{i}'}: {lemma2_reason_fields[code]}" for code, i in self.reasons]

    def as_dict(self):
        return {'ok': self.ok, 'order': list(self.order),
                'reasons': [{'code': c, 'index': i} for c, i in self.reasons]}


def residual_lists(g: Graph, h: Iterable[int], lists: ListAssignment, m: MatchingAssignment,
                   partial: DPColoring) -> ResidualLists:
    """
    A(v) for v in H: colors of L(v) not matched to the chosen color of a colored neighbor.
    """
    h = sorted(set(h))
    if not is_valid_partial(g, m, partial):
        raise InvalidPartial("partial coloring uses a matched pair")
    for v in h:
        if v in partial:
            raise InvalidPartial(f"vertex {v} of H is already colored")
    result = {}
    for v in h:
        available = set(lists[v])
        for w in g.neighbors(v):
            if w in partial:
                available.discard(m.partner(w, partial[w], v))
        result[v] = frozenset(available)
    return result


def _outside_counts(g: Graph, h: FrozenSet[int]) -> Dict[int, int]:
    return {v: sum(1 for w in g.neighbors(v) if w not in h) for v in h}


def _order_reasons(g: Graph, order: Sequence[int], k: int,
                   outside: Mapping[int, int]) -> List[Tuple[str, Optional[int]]]:
    """Conditions that do not depend on the coloring: the closing edge, (2) and (3)."""
    reasons = []
    l = len(order)
    first, last = order[0], order[-1]
    if not g.has_edge(first, last):
        reasons.append(('NO_CLOSING_EDGE', None))
    if g.degree(last) > k:
        reasons.append(('COND2_DEGREE', l))
    if outside[last] < 1:
        reasons.append(('COND2_NO_OUTSIDE', l))
    earlier = {first}
    for i in range(1, l - 1):
        v = order[i]
        constraining = outside[v] + sum(1 for w in g.neighbors(v) if w in earlier)
        if constraining > k - 1:
            reasons.append(('COND3', i + 1))
        earlier.add(v)
    return reasons


def check_lemma2_structural(g: Graph, h: Iterable[int], order: Sequence[int], k: int) -> Lemma2Check:
    """
    Check whether every coloring of G - H extends along the order.

    Conditions (2) and (3) are checked exactly. Condition (1) is checked in guaranteed mode:
    with full matchings, out(v) colored neighbors leave k - out(v) <= |A(v)| <= k - [out(v) >= 1],
    and smaller matchings only enlarge the choices.
    Returns:
        Lemma2Check, true when the configuration is reducible with this order
    """
    h = frozenset(h)
    order = list(order)
    if set(order) != h or len(order) != len(h):
        raise ValueError("order must enumerate H exactly once")
    if len(order) < 2:
        return Lemma2Check(order, [('SHORT_ORDER', None)])
    outside = _outside_counts(g, h)
    reasons = [] if k >= 3 else [('SMALL_K', None)]
    reasons.extend(_order_reasons(g, order, k, outside))
    first, last = order[0], order[-1]
    min_first = max(k - outside[first], 0)
    max_last = k - (1 if outside[last] >= 1 else 0)
    min_last = max(k - outside[last], 0)
    if min_first <= max_last:
        reasons.append(('COND1_SIZE', 1))
    if min_last < 1:
        reasons.append(('COND1_EMPTY', len(order)))
    result = Lemma2Check(order, sorted(reasons, key=lambda r: list(lemma2_reason_fields).index(r[0])))
    logger.debug("lemma2 check of %s: %s", order, result.codes() or 'ok')
    return result


def _uniform_k(lists: ListAssignment) -> int:
    k = lists.uniform_size()
    if k is None:
        raise NonUniformLists("extension needs lists of one size")
    return k


def extend_coloring(g: Graph, h: Iterable[int], order: Sequence[int], lists: ListAssignment,
                    m: MatchingAssignment, partial: DPColoring) -> DPColoring:
    """
    Extend a coloring of G - H to G along v1..vl.

    v1 takes the smallest color of A(v1) whose partner at vl is outside A(vl), the interior
    vertices are colored greedily in order, vl last. Conditions are checked on the actual
    residual lists first; ConditionsViolated names the first one that fails.
    """
    h = frozenset(h)
    order = list(order)
    if set(order) != h or len(order) != len(h):
        raise ValueError("order must enumerate H exactly once")
    if any(v not in partial for v in g.vertices() if v not in h):
        raise InvalidPartial("partial coloring must cover G - H")
    if len(order) < 2:
        raise ConditionsViolated(1, None, 'needs two distinct ends v1 != vl')
    k = _uniform_k(lists)
    available = residual_lists(g, h, lists, m, partial)
    outside = _outside_counts(g, h)
    first, last = order[0], order[-1]

    if not g.has_edge(first, last):
        raise ConditionsViolated(1, None, 'v1 vl is not an edge')
    if not len(available[first]) > len(available[last]) >= 1:
        raise ConditionsViolated(1, 1, f"|A(v1)| = {len(available[first])}, |A(vl)| = {len(available[last])}")
    for code, index in _order_reasons(g, order, k, outside):
        if code.startswith('COND2'):
            raise ConditionsViolated(2, index, lemma2_reason_fields[code])
        if code == 'COND3':
            raise ConditionsViolated(3, index, lemma2_reason_fields[code])

    colors = dict(partial.items())
    start = next(c for c in sorted(available[first]) if m.partner(first, c, last) not in available[last])
    colors[first] = start
    for v in order[1:]:
        free = set(available[v])
        for w in g.neighbors(v):
            if w in h and w in colors:
                free.discard(m.partner(w, colors[w], v))
        if not free:
            # unreachable when the conditions hold
            raise ConditionsViolated(3, order.index(v) + 1, f"no color left at {v}")
        colors[v] = min(free)
    return DPColoring(colors)


def min_degree_extend(g: Graph, v: int, lists: ListAssignment, m: MatchingAssignment,
                      partial: DPColoring) -> DPColoring:
    """Color a vertex of degree < |L(v)| last: its neighbors forbid at most d(v) colors."""
    if g.degree(v) >= len(lists[v]):
        raise ValueError(f"d({v}) = {g.degree(v)} is not below |L({v})| = {len(lists[v])}")
    free = residual_lists(g, [v], lists, m, partial)[v]
    colors = dict(partial.items())
    colors[v] = min(free)
    return DPColoring(colors)


def find_pattern(g: Graph, p: ConfigPattern) -> List[Tuple[int, ...]]:
    """
    All injective edge-preserving maps of the pattern into g with exact host degrees.
    Returns:
        sorted tuples, entry i the host vertex of pattern vertex i
    """
    if p.size > g.n:
        return []
    host = g.to_networkx()
    for v in host.nodes:
        host.nodes[v]['degree'] = g.degree(v)
    pattern = p.graph.to_networkx()
    for v in pattern.nodes:
        pattern.nodes[v]['degree'] = p.host_degree[v]
    matcher = GraphMatcher(host, pattern, node_match=lambda a, b: a['degree'] == b['degree'])
    found = []
    for mapping in matcher.subgraph_monomorphisms_iter():
        image = [0] * p.size
        for host_v, pattern_v in mapping.items():
            image[pattern_v] = host_v
        found.append(tuple(image))
    return sorted(found)


def _check_occurrence(g: Graph, p: ConfigPattern, image: Sequence[int], k: int) -> Lemma2Check:
    if p.size == 1:
        v = image[0]
        return Lemma2Check(image, [] if g.degree(v) < k else [('MIN_DEGREE', 1)])
    return check_lemma2_structural(g, image, [image[i] for i in p.order], k)


def pattern_report(g: Graph, p: ConfigPattern, k: int) -> List[Tuple[Tuple[int, ...], Lemma2Check]]:
    return [(image, _check_occurrence(g, p, image, k)) for image in find_pattern(g, p)]


def certify_reducible(g: Graph, p: ConfigPattern, k: int) -> bool:
    """
    True when every occurrence of p in g passes the guaranteed extension check (vacuously
    true without occurrences). A one-vertex pattern is the minimum-degree case d(v) < k.
    """
    report = pattern_report(g, p, k)
    failed = [image for image, check in report if not check]
    if failed:
        logger.info("pattern %s: %d of %d occurrences not certified", p.name or '?', len(failed), len(report))
    return not failed


def search_orderings(g: Graph, p: ConfigPattern, k: int) -> Optional[Tuple[int, ...]]:
    """First order of the pattern vertices (lexicographic) certified at every occurrence."""
    if p.size > MAX_ORDER_SEARCH:
        raise ValueError(f"order search is limited to {MAX_ORDER_SEARCH} pattern vertices")
    occurrences = find_pattern(g, p)
    for order in itertools.permutations(range(p.size)):
        candidate = p.with_order(order)
        if all(_check_occurrence(g, candidate, image, k) for image in occurrences):
            return order
    return None


class MonteCarloResult(BaseModel):
    __slots__ = ('trials', 'applicable', 'succeeded', 'failures')

    def __init__(self):
        self.trials = 0
        self.applicable = 0
        self.succeeded = 0
        self.failures: List[int] = []

    def as_dict(self):
        return {'trials': self.trials, 'applicable': self.applicable, 'succeeded': self.succeeded,
                'failures': list(self.failures)}


def _restrict(m: MatchingAssignment, mapping: Mapping[int, int]) -> MatchingAssignment:
    return MatchingAssignment({(mapping[u], mapping[v]): m.pairs(u, v) for u, v in m.edges()
                               if u in mapping and v in mapping})


def monte_carlo_extend(g: Graph, h: Iterable[int], order: Sequence[int], k: int, trials: int,
                       seed: int = 0, keep: float = 1.0) -> MonteCarloResult:
    """
    Random matching assignments over lists [k] and random colorings of G - H; whenever the
    conditions hold on the actual residual lists, extend and validate the result.
    Args:
        g: host graph
        h: vertices of the configuration
        order: v1..vl over h
        k: list size
        trials: number of random (matching, coloring) draws
        seed: root seed, one child seed per trial
        keep: chance of keeping each matched pair, below 1 gives partial matchings

    Returns:
        MonteCarloResult; trials whose G - H part is not colorable or whose residual
        lists break the extension conditions count as not applicable
    """
    h = frozenset(h)
    lists = ListAssignment.uniform(g.n, k)
    rest, mapping = delete_vertices(g, h)
    back = {new: old for old, new in mapping.items()}
    result = MonteCarloResult()
    for trial, trial_seed in enumerate(derive_seeds(seed, trials)):
        result.trials += 1
        rng = make_rng(trial_seed)
        m = random_matching_assignment(g, k, rng, keep=keep)
        base = find_coloring(rest, ListAssignment.uniform(rest.n, k), _restrict(m, mapping), validate=False, rng=rng)
        if base is None:
            continue
        partial = DPColoring({back[v]: c for v, c in base.items()})
        try:
            extended = extend_coloring(g, h, order, lists, m, partial)
        except ConditionsViolated:
            continue
        result.applicable += 1
        if is_valid_coloring(g, lists, m, extended):
            result.succeeded += 1
        else:
            result.failures.append(trial)
    logger.info("monte carlo: %d trials, %d applicable, %d extended", result.trials, result.applicable,
                result.succeeded)
    return result
