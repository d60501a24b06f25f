import csv
import io
import json
import logging
import os
import sys
from typing import AnyStr, Dict, Iterator, List, Optional, TextIO, Tuple

from pydpcolor.base.errors import InvalidEmbedding, InvalidMatching, InvalidPattern, MalformedInput
from pydpcolor.base.fields import transfer_log_fields
from pydpcolor.base.types import BaseModel
from pydpcolor.core.dp import MatchingAssignment
from pydpcolor.core.embedding import PlaneEmbedding, rotation_from_lists, trace_faces
from pydpcolor.core.graph import Graph, parse_graph_line
from pydpcolor.core.reducible import ConfigPattern
from pydpcolor.core.solver import AdversaryCertificate
from pydpcolor.utils import parse_kv_txt, strip_comment

logger = logging.getLogger(__name__)

STDIN = '-'


class GraphReader(BaseModel):
    """
    Reads graphs, embeddings, matchings, patterns and certificates from files below base_dir.
    The path '-' means standard input.
    """

    __slots__ = ('base_dir',)

    def __init__(self, base_dir: str = ''):
        self.base_dir = base_dir

    def as_dict(self):
        return {'base_dir': self.base_dir}

    def _path(self, path: str) -> str:
        return path if path == STDIN else os.path.join(self.base_dir, path)

    def _read_file(self, path: str) -> AnyStr:
        path = self._path(path)
        if path == STDIN:
            return sys.stdin.read()
        try:
            with open(path, 'r') as f:
                return f.read()
        except OSError as e:
            raise MalformedInput(f"cannot read {path}: {e}") from e

    def _read_json(self, path: str, error=MalformedInput) -> Dict:
        try:
            return json.loads(self._read_file(path))
        except json.JSONDecodeError as e:
            raise error(f"{path} is not valid JSON: {e}") from e

    def get_edge_list(self, path: str) -> Graph:
        """
        Parse an edge-list file: one "u v" pair per line, '#' comments, a single token
        names an isolated vertex.
        Args:
            path: file path or '-'

        Returns:
            Graph whose labels keep the file's vertex names; all-integer labels are
            sorted numerically, anything else keeps first-appearance order
        """
        return parse_edge_list(self._read_file(path))

    def get_graph6_stream(self, path: str = STDIN) -> Iterator[Graph]:
        """Yield one Graph per non-empty graph6/sparse6 line."""
        for line in self._read_file(path).splitlines():
            line = line.strip()
            if line:
                yield parse_graph_line(line)

    def get_embedding(self, path: str) -> PlaneEmbedding:
        data = self._read_json(path, InvalidEmbedding)
        return embedding_from_dict(data)

    def get_matching(self, path: str, g: Graph) -> Tuple[MatchingAssignment, Optional[int]]:
        """
        Parse a matching file against g.
        Args:
            path: file with "u v : a-b, c-d" lines and an optional "default identity k=K" line
            g: the graph the matching lives on

        Returns:
            (matching, K from the default directive or None)
        """
        return parse_matching(self._read_file(path), g)

    def get_pattern(self, path: str) -> ConfigPattern:
        data = self._read_json(path, InvalidPattern)
        pattern = ConfigPattern.from_dict(data)
        if not pattern.name:
            pattern.name = os.path.splitext(os.path.basename(path))[0]
        return pattern

    def get_certificate(self, path: str) -> AdversaryCertificate:
        data = self._read_json(path)
        try:
            return AdversaryCertificate.from_dict(data)
        except (KeyError, TypeError, ValueError) as e:
            raise MalformedInput(f"bad certificate {path}: {e}") from e

    def get_graph(self, path: str, fmt: str = 'auto') -> Graph:
        text = self._read_file(path)
        if fmt == 'auto':
            fmt = detect_format(path, text)
        if fmt == 'graph6':
            lines = [l.strip() for l in text.splitlines() if l.strip()]
            if len(lines) != 1:
                raise MalformedInput(f"{path}: expected one graph6 line, found {len(lines)}")
            return parse_graph_line(lines[0])
        if fmt == 'embedding':
            try:
                return embedding_from_dict(json.loads(text)).graph
            except json.JSONDecodeError as e:
                raise InvalidEmbedding(f"{path} is not valid JSON: {e}") from e
        if fmt == 'edges':
            return parse_edge_list(text)
        raise MalformedInput(f"unknown input format {fmt!r}")


def detect_format(path: str, text: Optional[str] = None) -> str:
    ext = os.path.splitext(path)[1].lower()
    if ext in ('.g6', '.s6', '.graph6', '.sparse6'):
        return 'graph6'
    if ext == '.json':
        return 'embedding'
    if ext in ('.txt', '.edges', '.el'):
        return 'edges'
    if text is not None:
        first = next((strip_comment(l) for l in text.splitlines() if strip_comment(l)), '')
        if first.startswith('{'):
            return 'embedding'
        if len(first.split()) == 1 and not first.isdigit():
            return 'graph6'
    return 'edges'


def _label_key(label: str):
    return int(label)


def parse_edge_list(text: str) -> Graph:
    labels: List[str] = []
    index: Dict[str, int] = {}
    pairs: List[Tuple[str, str]] = []

    def see(label: str):
        if label not in index:
            index[label] = len(labels)
            labels.append(label)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = strip_comment(raw).split()
        if not tokens:
            continue
        if len(tokens) > 2:
            raise MalformedInput(f"line {lineno}: expected 'u v', got {raw.strip()!r}")
        for t in tokens:
            see(t)
        if len(tokens) == 2:
            pairs.append((tokens[0], tokens[1]))

    try:
        ordered = sorted(labels, key=_label_key)
        numeric = True
    except ValueError:
        ordered = labels
        numeric = False
    position = {label: i for i, label in enumerate(ordered)}
    g = Graph(len(ordered), [(position[u], position[v]) for u, v in pairs],
              labels=[int(l) for l in ordered] if numeric else ordered)
    logger.debug("edge list: %d vertices, %d edges", g.n, g.num_edges)
    return g


def embedding_from_dict(data: Dict) -> PlaneEmbedding:
    try:
        rotation = data['rotation']
        n = int(data.get('n', len(rotation)))
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidEmbedding(f"embedding document needs 'rotation': {e}") from e
    if n != len(rotation):
        raise InvalidEmbedding(f"n is {n} but rotation lists {len(rotation)} vertices")
    g, rot = rotation_from_lists(rotation)
    return trace_faces(g, rot)


def _vertex(g: Graph, token: str) -> int:
    token = token.strip()
    for i, label in enumerate(g.labels):
        if str(label) == token:
            return i
    raise InvalidMatching(f"unknown vertex {token!r}")


def parse_matching(text: str, g: Graph) -> Tuple[MatchingAssignment, Optional[int]]:
    matchings: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
    default_k: Optional[int] = None
    for key, value in parse_kv_txt(text, ':'):
        if key.startswith('default'):
            words = key.split()
            if len(words) != 3 or words[1] != 'identity' or not words[2].startswith('k='):
                raise InvalidMatching(f"bad directive {key!r}, expected 'default identity k=K'")
            default_k = int(words[2][2:])
            continue
        ends = key.split()
        if len(ends) != 2:
            raise InvalidMatching(f"bad edge {key!r}, expected 'u v : a-b, ...'")
        u, v = _vertex(g, ends[0]), _vertex(g, ends[1])
        if not g.has_edge(u, v):
            raise InvalidMatching(f"{ends[0]} {ends[1]} is not an edge")
        pairs = []
        for item in filter(None, (p.strip() for p in value.split(','))):
            try:
                a, b = item.split('-')
                pairs.append((int(a), int(b)))
            except ValueError:
                raise InvalidMatching(f"bad color pair {item!r} on edge {key}") from None
        matchings[(u, v)] = pairs
    if default_k is not None:
        for u, v in g.edges:
            if (u, v) not in matchings and (v, u) not in matchings:
                matchings[(u, v)] = [(c, c) for c in range(default_k)]
    return MatchingAssignment(matchings), default_k


def dump_matching(m: MatchingAssignment, g: Graph) -> str:
    lines = []
    for u, v in g.edges:
        pairs = sorted(m.pairs(u, v))
        if pairs:
            lines.append(f"{g.labels[u]} {g.labels[v]} : " + ', '.join(f"{a}-{b}" for a, b in pairs))
    return '\n'.join(lines) + ('\n' if lines else '')


def dump_embedding(emb: PlaneEmbedding) -> str:
    return json.dumps({'n': emb.graph.n, 'rotation': [list(a) for a in emb.rotation.order]}, indent=2)


def dump_pattern(p: ConfigPattern) -> str:
    return json.dumps(p.as_dict(), indent=2)


def dump_edge_list(g: Graph) -> str:
    labels = [str(g.labels[v]) for v in g.vertices()]
    lines = [f"{labels[u]} {labels[v]}" for u, v in g.edges]
    lines.extend(labels[v] for v in g.vertices() if g.degree(v) == 0)
    return '\n'.join(lines) + ('\n' if lines else '')


def write_text(path: str, text: str) -> None:
    with open(path, 'w') as f:
        f.write(text)
    logger.info("wrote %s", path)


def write_json(path: str, data) -> None:
    write_text(path, json.dumps(data, indent=2, sort_keys=True) + '\n')


def write_tsv(out: TextIO, header, rows) -> None:
    writer = csv.writer(out, delimiter='\t', lineterminator='\n')
    writer.writerow(list(header))
    for row in rows:
        writer.writerow(row)


def transfer_log_text(rows) -> str:
    buf = io.StringIO()
    write_tsv(buf, transfer_log_fields.keys(), rows)
    return buf.getvalue()
