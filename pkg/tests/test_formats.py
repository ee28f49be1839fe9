import pytest

from models.errors import ParseError
from models.hypergraph import Coloring, Hypergraph
from utils.formats import (
    parse_coloring,
    parse_graph,
    parse_hypergraph,
    serialize_coloring,
    serialize_graph,
    serialize_hypergraph,
)
from utils.graph_core import complete_graph, line_graph


def test_parse_single_edge():
    G = parse_graph("p edge 2 1\ne 1 2\n")
    assert G.n == 2
    assert G.edges() == [(0, 1)]


def test_parse_accepts_bytes_and_comments():
    G = parse_graph(b"c a triangle\np edge 3 3\ne 1 2\ne 2 3\ne 3 1\n")
    assert G == complete_graph(3)


def test_serialize_is_canonical():
    G = parse_graph("p edge 3 2\ne 3 2\ne 2 1\n")
    assert serialize_graph(G) == "p edge 3 2\ne 1 2\ne 2 3\n"


def test_serialize_parse_is_identity():
    G = line_graph(complete_graph(5))
    assert parse_graph(serialize_graph(G)) == G


def test_duplicate_edge_is_ignored():
    G = parse_graph("p edge 3 2\ne 1 2\ne 2 1\n")
    assert G.num_edges == 1


@pytest.mark.parametrize("text, line", [
    ("p edge 3 1\ne 1 5\n", 2),
    ("p edge 3 1\ne 2 2\n", 2),
    ("p edges 3\n", 1),
    ("e 1 2\n", 1),
    ("p edge 3 1\nx 1 2\n", 2),
    ("", 1),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as excinfo:
        parse_graph(text)
    assert excinfo.value.line == line


@pytest.mark.parametrize("parse", [parse_graph, parse_hypergraph, parse_coloring])
def test_invalid_utf8_names_the_line(parse):
    with pytest.raises(ParseError, match="invalid UTF-8") as excinfo:
        parse(b"p edge 2 1\ne 1 \xff2\n")
    assert excinfo.value.line == 2


def test_bytes_input():
    assert parse_graph(b"p edge 2 1\ne 1 2\n").num_edges == 1


def test_out_of_range_message():
    with pytest.raises(ParseError, match="out of range"):
        parse_graph("p edge 3 1\ne 1 5\n")


def test_hypergraph_round_trip():
    H = Hypergraph(4, [[0, 1, 2], [2, 3], [0, 1, 2]])
    text = serialize_hypergraph(H)
    assert text == "p hedge 4 3\nh 1 2 3\nh 3 4\nh 1 2 3\n"
    assert parse_hypergraph(text) == H


def test_coloring_round_trip_keeps_blanks():
    f = Coloring([1, 0, 3, 2])
    text = serialize_coloring(f)
    assert text == "p col 4\nv 1 1\nv 3 3\nv 4 2\n"
    assert parse_coloring(text) == f


def test_coloring_rejects_nonpositive_color():
    with pytest.raises(ParseError) as excinfo:
        parse_coloring("p col 2\nv 1 0\n")
    assert excinfo.value.line == 2


def test_coloring_rejects_double_assignment():
    with pytest.raises(ParseError):
        parse_coloring("p col 2\nv 1 1\nv 1 2\n")
