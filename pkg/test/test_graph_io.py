# ！/usr/bin/env python
# -*- coding: UTF-8 -*-
"""
@Project: pydpcolor
@File: test_graph_io
@Date: 2026/10/17
"""

import io
import json

import pytest

from pydpcolor.base.errors import InvalidEmbedding, InvalidMatching, InvalidPattern, MalformedInput
from pydpcolor.base.graph_io import (GraphReader, detect_format, dump_edge_list, dump_embedding, dump_matching,
                                     dump_pattern, embedding_from_dict, parse_edge_list, parse_matching,
                                     transfer_log_text, write_tsv)
from pydpcolor.core.dp import MatchingAssignment
from pydpcolor.core.embedding import face_length_histogram, planar_embed
from pydpcolor.core.generators import complete, cycle
from pydpcolor.core.reducible import ConfigPattern


def test_edge_list_numeric_labels():
    g = parse_edge_list("# square\n10 2\n2 3\n3 7\n7 10\n\n5\n")
    assert g.n == 5
    assert g.labels == (2, 3, 5, 7, 10)
    assert g.num_edges == 4
    assert g.degree(2) == 0


def test_edge_list_names_keep_order():
    g = parse_edge_list("b a\na c  # comment\n")
    assert g.labels == ('b', 'a', 'c')
    assert g.has_edge(0, 1) and g.has_edge(1, 2)


def test_edge_list_errors():
    with pytest.raises(MalformedInput):
        parse_edge_list("0 1 2\n")
    with pytest.raises(MalformedInput):
        parse_edge_list("0 0\n")


def test_dump_edge_list():
    g = parse_edge_list("0 1\n1 2\n3\n")
    assert dump_edge_list(g) == "0 1\n1 2\n3\n"


@pytest.mark.parametrize('path, text, fmt', [
    ('k4.g6', None, 'graph6'),
    ('k4.s6', None, 'graph6'),
    ('emb.json', None, 'embedding'),
    ('g.txt', None, 'edges'),
    ('-', 'C~\n', 'graph6'),
    ('-', '{"rotation": []}', 'embedding'),
    ('-', '0 1\n1 2\n', 'edges'),
    ('-', '# header\n3\n', 'edges'),
])
def test_detect_format(path, text, fmt):
    assert detect_format(path, text) == fmt


def test_reader_files(tmp_path):
    (tmp_path / 'k4.g6').write_text('C~\n')
    (tmp_path / 'c5.txt').write_text('0 1\n1 2\n2 3\n3 4\n4 0\n')
    (tmp_path / 'two.g6').write_text('C~\nDhc\n')
    reader = GraphReader(str(tmp_path))
    assert reader.get_graph('k4.g6') == complete(4)
    assert reader.get_graph('c5.txt') == cycle(5)
    assert reader.get_graph('c5.txt', 'edges') == cycle(5)
    assert [g.n for g in reader.get_graph6_stream('two.g6')] == [4, 5]
    with pytest.raises(MalformedInput):
        reader.get_graph('two.g6')
    with pytest.raises(MalformedInput):
        reader.get_graph('missing.txt')


def test_reader_stdin(monkeypatch):
    monkeypatch.setattr('sys.stdin', io.StringIO('Bw\n\nC~\n'))
    graphs = list(GraphReader().get_graph6_stream('-'))
    assert [g.num_edges for g in graphs] == [3, 6]


def test_embedding_document(tmp_path):
    path = tmp_path / 'k4.json'
    path.write_text(dump_embedding(planar_embed(complete(4))))
    emb = GraphReader().get_embedding(str(path))
    assert face_length_histogram(emb) == {3: 4}
    assert GraphReader().get_graph(str(path)) == complete(4)


def test_embedding_document_errors(tmp_path):
    with pytest.raises(InvalidEmbedding):
        embedding_from_dict({'n': 3})
    with pytest.raises(InvalidEmbedding):
        embedding_from_dict({'n': 3, 'rotation': [[1], [0]]})
    path = tmp_path / 'bad.json'
    path.write_text('{"rotation": ')
    with pytest.raises(InvalidEmbedding):
        GraphReader().get_embedding(str(path))


def test_parse_matching():
    g = cycle(3)
    m, k = parse_matching("# twisted triangle\ndefault identity k=2\n0 1 : 0-1, 1-0\n", g)
    assert k == 2
    assert m.pairs(0, 1) == frozenset({(0, 1), (1, 0)})
    assert m.pairs(1, 2) == frozenset({(0, 0), (1, 1)})
    assert m.pairs(2, 0) == frozenset({(0, 0), (1, 1)})


def test_parse_matching_without_default():
    m, k = parse_matching("1 0 : 0-2\n", cycle(3))
    assert k is None
    assert m.pairs(0, 1) == frozenset({(2, 0)})
    assert m.pairs(1, 2) == frozenset()


@pytest.mark.parametrize('text', [
    "0 2 : 0-0\n0 5 : 0-0\n",
    "default identity 3\n",
    "0 1 2 : 0-0\n",
    "0 1 : 0:0\n",
])
def test_parse_matching_errors(text):
    with pytest.raises(InvalidMatching):
        parse_matching(text, cycle(4))


def test_dump_matching_reads_back():
    g = cycle(4)
    m = MatchingAssignment({(0, 1): [(0, 1), (1, 0)], (2, 3): [(1, 1)]})
    again, _ = parse_matching(dump_matching(m, g), g)
    assert again == m


def test_pattern_file(tmp_path):
    path = tmp_path / 'edge33.json'
    path.write_text(json.dumps({'vertices': [{'hostDegree': 3}, {'hostDegree': 3}], 'edges': [[0, 1]]}))
    pattern = GraphReader().get_pattern(str(path))
    assert pattern.name == 'edge33'
    assert pattern.outside == (2, 2)
    path.write_text('[')
    with pytest.raises(InvalidPattern):
        GraphReader().get_pattern(str(path))


def test_dump_pattern_reads_back(tmp_path):
    pattern = ConfigPattern.from_dict({'name': 'tri', 'vertices': [{'hostDegree': 3}] * 3,
                                       'edges': [[0, 1], [1, 2], [0, 2]], 'order': [2, 0, 1]})
    path = tmp_path / 'other.json'
    path.write_text(dump_pattern(pattern))
    again = GraphReader().get_pattern(str(path))
    assert again.name == 'tri'
    assert again.order == (2, 0, 1)
    assert again.host_degree == (3, 3, 3)


def test_certificate_file(tmp_path):
    path = tmp_path / 'cert.json'
    path.write_text('{"kind": "dp"}')
    with pytest.raises(MalformedInput):
        GraphReader().get_certificate(str(path))


def test_transfer_log_text():
    text = transfer_log_text([['1', 'R1', 'f4', 'f0', '1/3']])
    assert text == "phase\trule\tsource\tsink\tamount\n1\tR1\tf4\tf0\t1/3\n"


def test_write_tsv():
    out = io.StringIO()
    write_tsv(out, ['a', 'b'], [[1, 2]])
    assert out.getvalue() == "a\tb\n1\t2\n"


if __name__ == "__main__":
    pytest.main([__file__])
