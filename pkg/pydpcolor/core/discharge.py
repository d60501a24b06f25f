import logging
from collections import Counter, OrderedDict
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from pydpcolor import Richness, RuleVariant
from pydpcolor.base.errors import (ChargeSumMismatch, ConservationViolated, InvalidPathStats, NegativeTransfer,
                                   VariantPreconditionFailed)
from pydpcolor.base.fields import phase_fields
from pydpcolor.base.types import BaseModel
from pydpcolor.core.embedding import Face, PlaneEmbedding, classify_vertex, face_adjacency, is_adjacent
from pydpcolor.core.graph import cycle_spectrum, forbidden_variant
from pydpcolor.utils import format_charge, format_fraction

logger = logging.getLogger(__name__)

EULER_TOTAL = Fraction(-8)
THIRD = Fraction(1, 3)
FIFTH = Fraction(1, 5)
SIXTH = Fraction(1, 6)
TWELFTH = Fraction(1, 12)


def vertex_key(v: int) -> str:
    return f"v{v}"


def face_key(f: Face) -> str:
    return f"f{f.index}"


class Transfer(BaseModel):
    __slots__ = ('phase', 'rule', 'source', 'sink', 'amount')

    def __init__(self, phase: int, rule: str, source: str, sink: str, amount: Fraction):
        self.phase = phase
        self.rule = rule
        self.source = source
        self.sink = sink
        self.amount = amount

    def as_row(self) -> List[str]:
        return [str(self.phase), self.rule, self.source, self.sink, format_fraction(self.amount)]

    def as_dict(self):
        return {'phase': self.phase, 'rule': self.rule, 'source': self.source, 'sink': self.sink,
                'amount': format_fraction(self.amount)}


class ChargeState(BaseModel):
    """
    Exact charge per element ('vN' vertex, 'fN' face) with the full transfer log.
    """

    __slots__ = ('charge', 'initial', 'transfers', 'snapshots', 'flags', 'expected_total')

    def __init__(self, charge: Mapping[str, Fraction], expected_total: Fraction = EULER_TOTAL):
        self.charge: Dict[str, Fraction] = OrderedDict(charge)
        self.initial: Dict[str, Fraction] = OrderedDict(charge)
        self.transfers: List[Transfer] = []
        self.snapshots: List[Tuple[int, str, Fraction]] = []
        self.flags: List[str] = []
        self.expected_total = expected_total

    def total(self) -> Fraction:
        return sum(self.charge.values(), Fraction(0))

    def move(self, phase: int, rule: str, source: str, sink: str, amount: Fraction) -> None:
        amount = Fraction(amount)
        if amount < 0:
            raise NegativeTransfer(f"{rule}: {source} -> {sink} would move {amount}")
        if amount == 0:
            return
        self.charge[source] -= amount
        self.charge[sink] += amount
        self.transfers.append(Transfer(phase, rule, source, sink, amount))

    def close_phase(self, phase: int, tag: str) -> None:
        total = self.total()
        self.snapshots.append((phase, tag, total))
        if total != self.expected_total:
            raise ConservationViolated(f"phase {phase} ({tag}) ends with total {total}, expected {self.expected_total}")

    def negatives(self) -> List[Tuple[str, Fraction]]:
        return [(key, value) for key, value in self.charge.items() if value < 0]

    def outflow(self, key: str) -> Fraction:
        return sum((t.amount for t in self.transfers if t.source == key), Fraction(0))

    def inflow(self, key: str) -> Fraction:
        return sum((t.amount for t in self.transfers if t.sink == key), Fraction(0))

    def summary(self) -> str:
        parts = [f"total {format_charge(self.total())}"]
        parts.append(f"{len(self.transfers)} transfers" if self.transfers else 'no transfers')
        parts.append(f"{len(self.negatives())} negative elements")
        return '; '.join(parts)

    def as_dict(self):
        return {
            'total': format_charge(self.total()),
            'initial': {k: format_charge(v) for k, v in self.initial.items()},
            'final': {k: format_charge(v) for k, v in self.charge.items()},
            'snapshots': [{'phase': p, 'rule': r, 'total': format_charge(t)} for p, r, t in self.snapshots],
            'transfers': [t.as_dict() for t in self.transfers],
            'flags': list(self.flags),
        }


class FaceRoles(BaseModel):
    """
    Classification tables shared by the rules: triangular 3-vertices, richness of
    4+-vertices to incident 10+-faces, special vertices, bad 5-faces, good/poor pairs.
    """

    __slots__ = ('triangular', 'richness', 'special', 'bad_five', 'good_pairs', 'review', 'multi_adjacent')

    def __init__(self):
        self.triangular: Set[int] = set()
        self.richness: Dict[Tuple[int, int], Richness] = {}
        self.special: Set[int] = set()
        self.bad_five: Set[int] = set()
        # (good face, poor face, shared dart of the good face)
        self.good_pairs: List[Tuple[int, int, Tuple[int, int]]] = []
        self.review: List[str] = []
        self.multi_adjacent: List[Tuple[int, int, int]] = []

    def as_dict(self):
        return {
            'triangular': sorted(self.triangular),
            'richness': [{'vertex': v, 'face': f, 'status': r.name.lower()}
                         for (v, f), r in sorted(self.richness.items())],
            'special': sorted(self.special),
            'bad_five': sorted(self.bad_five),
            'good_pairs': [{'good': f, 'poor': g, 'edge': list(e)} for f, g, e in self.good_pairs],
            'review': list(self.review),
            'multi_adjacent': [{'faces': [f, g], 'shared_edges': c} for f, g, c in self.multi_adjacent],
        }


class FaceStats(BaseModel):
    __slots__ = ('face', 'length', 's3', 'r5', 'b5', 's', 't', 'x')

    def __init__(self, face: int, length: int, s3: int, r5: int, b5: int, s: int,
                 t: Optional[Dict[int, int]], x: Optional[int]):
        self.face = face
        self.length = length
        self.s3 = s3
        self.r5 = r5
        self.b5 = b5
        self.s = s
        self.t = t
        self.x = x

    def as_dict(self):
        return {'face': self.face, 'length': self.length, 's3': self.s3, 'r5': self.r5, 'b5': self.b5,
                's': self.s, 't': dict(self.t) if self.t is not None else None, 'x': self.x}


def initial_charges(emb: PlaneEmbedding) -> ChargeState:
    """mu(x) = d(x) - 4 on every vertex and face; the total must be -8."""
    g = emb.graph
    charge = OrderedDict()
    for v in g.vertices():
        charge[vertex_key(v)] = Fraction(g.degree(v) - 4)
    for f in emb.faces:
        charge[face_key(f)] = Fraction(f.length - 4)
    state = ChargeState(charge)
    if state.total() != EULER_TOTAL:
        raise ChargeSumMismatch(f"initial charges sum to {state.total()}, expected -8")
    return state


def _degrees(emb: PlaneEmbedding, f: Face) -> List[int]:
    return [emb.graph.degree(v) for v in f.vertices]


def _is_light_face(emb: PlaneEmbedding, t: Face) -> bool:
    # (3,3,4+)-face or (3,3,3,3,4+)-face
    degrees = _degrees(emb, t)
    if t.length not in (3, 5):
        return False
    return degrees.count(3) == t.length - 1 and sum(1 for d in degrees if d >= 4) == 1


def _shared_edge_counts(emb: PlaneEmbedding) -> List[Tuple[int, int, int]]:
    counts = Counter()
    for u, v in emb.graph.edges:
        a, b = emb.edge_faces(u, v)
        if a.index != b.index:
            counts[tuple(sorted((a.index, b.index)))] += 1
    return [(f, g, c) for (f, g), c in sorted(counts.items()) if c > 1]


def _good_end_ok(emb: PlaneEmbedding, second: int, f: Face, poor: Face) -> bool:
    g = emb.graph
    if g.degree(second) < 4:
        return False
    return any(_is_light_face(emb, t) and is_adjacent(emb, t, f) and is_adjacent(emb, t, poor)
               for t in emb.incident_faces(second))


def _find_good_pairs(emb: PlaneEmbedding, roles: FaceRoles) -> None:
    g = emb.graph
    for f in emb.faces:
        if f.length < 10:
            continue
        verts = f.vertices
        d = f.length
        seen_poor = set()
        for i, (x, y) in enumerate(f.walk):
            poor = emb.face_across((x, y))
            if poor.index == f.index or poor.length != 10 or poor.index in seen_poor:
                continue
            if any(g.degree(v) != 3 for v in poor.vertices):
                continue
            if g.degree(x) != 3 or g.degree(y) != 3:
                continue
            # x end runs backwards along f, y end forwards
            x2, x3 = verts[(i - 1) % d], verts[(i - 2) % d]
            y2, y3 = verts[(i + 2) % d], verts[(i + 3) % d]
            if g.degree(x3) < 3 or g.degree(y3) < 3:
                continue
            if _good_end_ok(emb, x2, f, poor) and _good_end_ok(emb, y2, f, poor):
                seen_poor.add(poor.index)
                roles.good_pairs.append((f.index, poor.index, (x, y)))
                roles.review.append(f"f{f.index} good to f{poor.index} across {x}-{y}: only the path prefix "
                                    f"(3,4+,3+) is checked")


def classify_face_roles(emb: PlaneEmbedding) -> FaceRoles:
    g = emb.graph
    roles = FaceRoles()
    for v in g.vertices():
        if g.degree(v) == 3 and any(t.length == 3 for t in emb.incident_faces(v)):
            roles.triangular.add(v)
    for f in emb.faces:
        if f.length < 10:
            continue
        for v in set(f.vertices):
            if g.degree(v) >= 4:
                roles.richness[(v, f.index)] = classify_vertex(emb, v, f)
    statuses: Dict[int, Set[Richness]] = {}
    for (v, _), status in roles.richness.items():
        statuses.setdefault(v, set()).add(status)
    roles.special = {v for v, s in statuses.items() if Richness.SEMI_RICH in s and Richness.RICH in s}
    for f in emb.faces:
        if f.length == 5 and all(d == 3 for d in _degrees(emb, f)):
            fives = sum(1 for h in emb.adjacent_faces(f) if h.length == 5 and h.index != f.index)
            if fives == 2:
                roles.bad_five.add(f.index)
    _find_good_pairs(emb, roles)
    roles.multi_adjacent = _shared_edge_counts(emb)
    return roles


def path_stats(emb: PlaneEmbedding, f: Face) -> Dict[int, int]:
    """
    Path counts t_i along f: maximal runs of boundary edges bordering 5- faces, a run of
    j edges counting as an (j+1)-vertex path (the whole boundary as one d(f)-vertex path),
    t_1 the boundary positions touching no such edge.
    """
    d = f.length
    marked = [emb.face_across(dart).length <= 5 for dart in f.walk]
    t: Counter = Counter()
    if d == 0:
        return {}
    if all(marked):
        t[d] = 1
    elif not any(marked):
        t[1] = d
    else:
        start = next(j for j in range(d) if not marked[j]) + 1
        run = 0
        for step in range(d):
            j = (start + step) % d
            if marked[j]:
                run += 1
            elif run:
                t[run + 1] += 1
                run = 0
        if run:
            t[run + 1] += 1
        t[1] = sum(1 for i in range(d) if not marked[i] and not marked[(i - 1) % d])
        if not t[1]:
            del t[1]
    if sum(i * c for i, c in t.items()) != d:
        raise InvalidPathStats(f"sum of i*t_i is {sum(i * c for i, c in t.items())}, face length {d}")
    return dict(sorted(t.items()))


def x_value(d_f: int) -> int:
    if d_f < 10:
        raise ValueError("x is defined for 10+-faces")
    return 0 if d_f >= 12 else (1 if d_f == 11 else 2)


def _check_t(t: Mapping[int, int], d_f: Optional[int] = None) -> int:
    if any(i < 1 or c < 0 for i, c in t.items()):
        raise InvalidPathStats("path lengths must be >= 1 and counts >= 0")
    total = sum(i * c for i, c in t.items())
    if d_f is not None and total != d_f:
        raise InvalidPathStats(f"sum of i*t_i is {total}, expected {d_f}")
    return total


def lemma5_bound(t: Mapping[int, int], d_f: int) -> Fraction:
    """
    What a 10+-face can afford to give, in long form; equal to (2/3) d(f) - x/3.
    """
    _check_t(t, d_f)
    x = x_value(d_f)
    value = (THIRD * sum(i * c for i, c in t.items())
             + Fraction(2, 3) * sum(c for i, c in t.items() if i >= 2)
             + THIRD * t.get(1, 0)
             + THIRD * sum((i - 2) * c for i, c in t.items() if i >= 3)
             - Fraction(x, 3))
    closed = Fraction(2, 3) * d_f - Fraction(x, 3)
    if value != closed:
        raise InvalidPathStats(f"long form {value} differs from closed form {closed}")
    return value


def lemma6_bound(t: Mapping[int, int]) -> Fraction:
    """Upper bound on what a 10+-face needs to send out."""
    _check_t(t)
    return (THIRD * sum(i * c for i, c in t.items())
            + Fraction(2, 3) * sum(c for i, c in t.items() if i >= 2)
            + SIXTH * sum((i - 5) * c for i, c in t.items() if i >= 6)
            + SIXTH * sum(c for i, c in t.items() if i >= 3))


def five_face_surplus(s3: int, r5: int, b5: int) -> Fraction:
    # lower bound on a non-bad 5-face's final charge when no 3-face is adjacent
    return Fraction(11 - 2 * s3 - r5, 6) - Fraction(b5, 12)


def face_stats(emb: PlaneEmbedding, f: Face, roles: Optional[FaceRoles] = None) -> FaceStats:
    roles = roles if roles is not None else classify_face_roles(emb)
    g = emb.graph
    neighbors = [h for h in emb.adjacent_faces(f) if h.index != f.index]
    s3 = sum(1 for v in f.vertices if g.degree(v) == 3)
    r5 = sum(1 for h in neighbors if h.length == 5)
    b5 = sum(1 for h in neighbors if h.index in roles.bad_five)
    s = 0
    for v in f.vertices:
        if g.degree(v) >= 5:
            s += 1
        elif g.degree(v) == 4 and classify_vertex(emb, v, f) == Richness.SEMI_RICH:
            s += 1
    big = f.length >= 10
    return FaceStats(f.index, f.length, s3, r5, b5, s, path_stats(emb, f) if big else None,
                     x_value(f.length) if big else None)


class _Engine(object):
    """Runs one variant's phase schedule on a ChargeState."""

    def __init__(self, emb: PlaneEmbedding, roles: FaceRoles, state: ChargeState):
        self.emb = emb
        self.g = emb.graph
        self.roles = roles
        self.state = state

    def give(self, phase: int, rule: str, source: str, sink: str, amount: Fraction) -> None:
        self.state.move(phase, rule, source, sink, amount)

    def r1(self, phase: int) -> None:
        for t in self.emb.faces:
            if t.length != 3:
                continue
            for _, h in face_adjacency(self.emb, t):
                if h.length >= 5:
                    self.give(phase, 'R1', face_key(h), face_key(t), THIRD)
        for f in self.emb.faces:
            if f.length < 5:
                continue
            for v in f.vertices:
                if self.g.degree(v) >= 5:
                    self.give(phase, 'R1', vertex_key(v), face_key(f), FIFTH)

    def r2(self, phase: int) -> None:
        emb, g, roles = self.emb, self.g, self.roles
        for v in sorted(roles.special):
            for f in emb.corners(v):
                if f.length >= 10 and roles.richness.get((v, f.index)) == Richness.SEMI_RICH:
                    self.give(phase, 'R2', vertex_key(v), face_key(f), SIXTH)
        for f in emb.faces:
            if f.length < 10:
                continue
            for v in f.vertices:
                if (g.degree(v) == 4 and roles.richness.get((v, f.index)) == Richness.RICH
                        and any(t.length == 3 for t in emb.incident_faces(v))):
                    self.give(phase, 'R2', face_key(f), vertex_key(v), THIRD)

    def r3(self, phase: int) -> None:
        for good, poor, _ in self.roles.good_pairs:
            self.give(phase, 'R3', f"f{good}", f"f{poor}", SIXTH)

    def _third_face(self, x: int, t: Face, g5: Face) -> Optional[Face]:
        candidates = [h for h in self.emb.corners(x) if h.index not in (t.index, g5.index) and h.length >= 10]
        if not candidates:
            return None
        if len({h.index for h in candidates}) > 1:
            self.state.flags.append(f"R4a.i: 3-vertex {x} of f{g5.index} sees several 10+-faces, "
                                    f"took f{candidates[0].index}")
            logger.info("ambiguous R4a.i referent at vertex %d, using face %d", x, candidates[0].index)
        return candidates[0]

    def r4a_i(self, phase: int) -> None:
        emb, g = self.emb, self.g
        for five in emb.faces:
            if five.length != 5:
                continue
            givers: List[Face] = []
            for x, y in five.walk:
                t = emb.face_across((x, y))
                if t.length != 3 or t.index == five.index:
                    continue
                dx, dy = g.degree(x), g.degree(y)
                if dx == 3 and dy == 3:
                    givers.extend(h for h in emb.adjacent_faces(five) if h.length >= 10)
                elif 3 in (dx, dy) and max(dx, dy) >= 4:
                    h = self._third_face(x if dx == 3 else y, t, five)
                    if h is not None:
                        givers.append(h)
            for index in sorted({h.index for h in givers}):
                self.give(phase, 'R4a.i', f"f{index}", face_key(five), THIRD)

    def r4a_ii(self, phase: int) -> None:
        for five in self.emb.faces:
            if five.length != 5:
                continue
            for v in five.vertices:
                if v in self.roles.triangular:
                    self.give(phase, 'R4a.ii', face_key(five), vertex_key(v), Fraction(1))

    def r4a_iii(self, phase: int) -> None:
        for five in self.emb.faces:
            if five.length != 5:
                continue
            sinks = [h for h in self.emb.adjacent_faces(five) if h.length == 10]
            surplus = self.state.charge[face_key(five)]
            if not sinks or surplus <= 0:
                continue
            share = surplus / len(sinks)
            for index, count in sorted(Counter(h.index for h in sinks).items()):
                self.give(phase, 'R4a.iii', face_key(five), f"f{index}", share * count)

    def r4a_iv(self, phase: int) -> None:
        for v in self.g.vertices():
            if self.g.degree(v) != 3:
                continue
            need = -self.state.charge[vertex_key(v)]
            sources = [f for f in self.emb.corners(v) if f.length >= 6]
            if need <= 0 or not sources:
                continue
            for f in sources:
                self.give(phase, 'R4a.iv', face_key(f), vertex_key(v), need / len(sources))

    def r4b_i(self, phase: int) -> None:
        for v in self.g.vertices():
            if self.g.degree(v) != 3:
                continue
            sources = [f for f in self.emb.corners(v) if f.length >= 5]
            for f in sources:
                self.give(phase, 'R4b.i', face_key(f), vertex_key(v), Fraction(1, len(sources)))

    def r4b_ii(self, phase: int) -> None:
        for five in self.emb.faces:
            if five.length != 5:
                continue
            for _, h in face_adjacency(self.emb, five):
                if h.length >= 7:
                    self.give(phase, 'R4b.ii', face_key(h), face_key(five), SIXTH)

    def r4b_iii(self, phase: int) -> None:
        for index in sorted(self.roles.bad_five):
            bad = self.emb.faces[index]
            for _, h in face_adjacency(self.emb, bad):
                if h.length == 5 and h.index != bad.index:
                    self.give(phase, 'R4b.iii', face_key(h), face_key(bad), TWELFTH)

    def r4b_iv(self, phase: int) -> None:
        # one synchronous pass from the charges at the start of the phase
        before = {f.index: self.state.charge[face_key(f)] for f in self.emb.faces if f.length == 5}
        for five in self.emb.faces:
            if five.length != 5 or before[five.index] <= 0:
                continue
            sinks = [h for h in self.emb.adjacent_faces(five) if h.length == 5 and h.index != five.index]
            if not sinks:
                continue
            share = before[five.index] / len(sinks)
            for index, count in sorted(Counter(h.index for h in sinks).items()):
                self.give(phase, 'R4b.iv', face_key(five), f"f{index}", share * count)

    def run(self, variant: RuleVariant) -> None:
        handlers = {
            'R1': self.r1, 'R2': self.r2, 'R3': self.r3,
            'R4a.i': self.r4a_i, 'R4a.ii': self.r4a_ii, 'R4a.iii': self.r4a_iii, 'R4a.iv': self.r4a_iv,
            'R4b.i': self.r4b_i, 'R4b.ii': self.r4b_ii, 'R4b.iii': self.r4b_iii, 'R4b.iv': self.r4b_iv,
        }
        schedule = phase_fields['a' if variant.uses_r4a else 'b']
        for phase, tag in enumerate(schedule, start=1):
            handlers[tag](phase)
            self.state.close_phase(phase, tag)
            logger.debug("phase %d (%s) done, total %s", phase, tag, self.state.total())


def apply_rules(emb: PlaneEmbedding, variant: RuleVariant, strict: bool = False,
                roles: Optional[FaceRoles] = None) -> ChargeState:
    """
    Run the variant's seven-phase schedule from the initial charges.
    Args:
        emb: connected plane embedding
        variant: which forbidden-cycle case (selects R4a or R4b)
        strict: refuse to run when the graph has one of the variant's forbidden cycles
        roles: precomputed classification tables

    Returns:
        ChargeState with the final charges, transfer log and per-phase totals
    """
    satisfied = forbidden_variant(emb.graph)
    state = initial_charges(emb)
    if variant not in satisfied:
        message = f"graph has a cycle of a length forbidden by variant {variant.value}"
        if strict:
            raise VariantPreconditionFailed(message)
        logger.warning("%s, running in lab mode", message)
        state.flags.append(f"lab mode: {message}")
    roles = roles if roles is not None else classify_face_roles(emb)
    state.flags.extend(roles.review)
    for f, g, count in roles.multi_adjacent:
        state.flags.append(f"faces f{f} and f{g} share {count} edges, counted with multiplicity")
    _Engine(emb, roles, state).run(variant)
    return state


class AuditReport(BaseModel):
    __slots__ = ('variant', 'spectrum', 'satisfied', 'low_degree', 'pattern_hits', 'state', 'roles',
                 'big_faces', 'findings')

    def __init__(self, variant: RuleVariant):
        self.variant = variant
        self.spectrum: List[int] = []
        self.satisfied: List[str] = []
        self.low_degree: List[int] = []
        self.pattern_hits: Dict[str, int] = OrderedDict()
        self.state: Optional[ChargeState] = None
        self.roles: Optional[FaceRoles] = None
        self.big_faces: List[Dict] = []
        self.findings: List[str] = []

    def as_dict(self):
        return {
            'variant': self.variant.value,
            'spectrum': self.spectrum,
            'satisfied': self.satisfied,
            'low_degree': self.low_degree,
            'pattern_hits': dict(self.pattern_hits),
            'charges': self.state.as_dict() if self.state else None,
            'roles': self.roles.as_dict() if self.roles else None,
            'big_faces': self.big_faces,
            'findings': self.findings,
        }


def audit(emb: PlaneEmbedding, variant: RuleVariant, patterns: Sequence = (), k: int = 3,
          strict: bool = False) -> AuditReport:
    """
    Run every check a minimal counterexample would have to pass and list what escapes:
    forbidden cycles, vertices of degree below 3, pattern occurrences and negative final charges.
    With strict, a forbidden cycle raises VariantPreconditionFailed instead of becoming a finding.
    """
    from pydpcolor.core.reducible import find_pattern

    g = emb.graph
    report = AuditReport(variant)
    spectrum = cycle_spectrum(g)
    report.spectrum = sorted(spectrum.present)
    report.satisfied = sorted(v.value for v in RuleVariant if spectrum.avoids(v.forbidden))
    if variant.value not in report.satisfied:
        present = sorted(set(variant.forbidden) & spectrum.present)
        report.findings.append(f"forbidden cycle present: lengths {present}")
    report.low_degree = [v for v in g.vertices() if g.degree(v) < k]
    if report.low_degree:
        report.findings.append(f"degree below {k}: vertices {report.low_degree}")
    for i, p in enumerate(patterns):
        name = getattr(p, 'name', '') or f"pattern{i}"
        hits = len(find_pattern(g, p))
        report.pattern_hits[name] = hits
        if hits:
            report.findings.append(f"pattern {name}: {hits} occurrences")

    report.roles = classify_face_roles(emb)
    report.state = apply_rules(emb, variant, strict=strict, roles=report.roles)
    for key, value in report.state.negatives():
        report.findings.append(f"negative final charge {key} = {format_charge(value)}")
    for f in emb.faces:
        if f.length < 10:
            continue
        t = path_stats(emb, f)
        report.big_faces.append({
            'face': f.index, 'length': f.length, 't': t,
            'affordable': format_charge(lemma5_bound(t, f.length)),
            'needs_at_most': format_charge(lemma6_bound(t)),
            'outflow': format_charge(report.state.outflow(face_key(f))),
        })
    logger.info("audit: %d findings", len(report.findings))
    return report


def transfer_rows(state: ChargeState) -> Iterable[List[str]]:
    for t in state.transfers:
        yield t.as_row()
