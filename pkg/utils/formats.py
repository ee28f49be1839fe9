"""
Text formats for graphs, hypergraphs and colorings.
All formats are DIMACS-like: a "p" header, "c" comment lines, and 1-based vertex ids.
"""

import logging

from models.errors import ParseError
from models.graph import Graph
from models.hypergraph import BLANK, Coloring, Hypergraph


def _lines(text: str | bytes):
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(text[:e.start].count(b"\n") + 1, "invalid UTF-8")
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        yield number, line.split()


def _parse_header(number: int, fields: list[str], kind: str, arity: int) -> list[int]:
    if len(fields) != 2 + arity or fields[0] != "p" or fields[1] != kind:
        raise ParseError(number, f"malformed header, expected 'p {kind}' with {arity} integer(s)")
    try:
        values = [int(x) for x in fields[2:]]
    except ValueError:
        raise ParseError(number, "malformed header, counts must be integers")
    if any(x < 0 for x in values):
        raise ParseError(number, "malformed header, counts must be nonnegative")
    return values


def _parse_vertex(number: int, token: str, n: int) -> int:
    try:
        vertex = int(token)
    except ValueError:
        raise ParseError(number, f"vertex id '{token}' is not an integer")
    if not 1 <= vertex <= n:
        raise ParseError(number, f"vertex id {vertex} out of range 1..{n}")
    return vertex - 1


def parse_graph(text: str | bytes) -> Graph:
    """Parse "p edge <n> <m>" followed by "e <u> <v>" lines."""
    n = None
    declared_m = 0
    edges = []
    seen = set()
    for number, fields in _lines(text):
        if fields[0] == "p":
            if n is not None:
                raise ParseError(number, "duplicate header")
            n, declared_m = _parse_header(number, fields, "edge", 2)
        elif fields[0] == "e":
            if n is None:
                raise ParseError(number, "edge line before the 'p edge' header")
            if len(fields) != 3:
                raise ParseError(number, "edge lines have the form 'e <u> <v>'")
            u = _parse_vertex(number, fields[1], n)
            v = _parse_vertex(number, fields[2], n)
            if u == v:
                raise ParseError(number, f"self-loop at vertex {u + 1}")
            key = (min(u, v), max(u, v))
            if key in seen:
                logging.warning(f"⚠️ Duplicate edge {u + 1}-{v + 1} on line {number} ignored")
                continue
            seen.add(key)
            edges.append(key)
        else:
            raise ParseError(number, f"unknown line type '{fields[0]}'")

    if n is None:
        raise ParseError(1, "missing 'p edge <n> <m>' header")
    if declared_m != len(edges):
        logging.warning(f"⚠️ Header declares {declared_m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def serialize_graph(G: Graph) -> str:
    """Canonical form: header, then edges sorted by (u, v), 1-based."""
    lines = [f"p edge {G.n} {G.num_edges}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in G.edges())
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str | bytes) -> Hypergraph:
    """Parse "p hedge <n> <m>" followed by one "h <v1> <v2> ..." line per hyperedge."""
    n = None
    edges = []
    for number, fields in _lines(text):
        if fields[0] == "p":
            if n is not None:
                raise ParseError(number, "duplicate header")
            n, _ = _parse_header(number, fields, "hedge", 2)
        elif fields[0] == "h":
            if n is None:
                raise ParseError(number, "hyperedge line before the 'p hedge' header")
            if len(fields) < 2:
                raise ParseError(number, "hyperedges must be nonempty")
            edges.append([_parse_vertex(number, token, n) for token in fields[1:]])
        else:
            raise ParseError(number, f"unknown line type '{fields[0]}'")
    if n is None:
        raise ParseError(1, "missing 'p hedge <n> <m>' header")
    return Hypergraph(n, edges)


def serialize_hypergraph(H: Hypergraph) -> str:
    lines = [f"p hedge {H.universe} {H.num_edges}"]
    lines.extend("h " + " ".join(str(v + 1) for v in edge.tolist()) for edge in H.edges)
    return "\n".join(lines) + "\n"


def parse_coloring(text: str | bytes) -> Coloring:
    """Parse "p col <n>" followed by "v <id> <color>" lines; omitted vertices are blank."""
    n = None
    assignment: dict[int, int] = {}
    for number, fields in _lines(text):
        if fields[0] == "p":
            if n is not None:
                raise ParseError(number, "duplicate header")
            (n,) = _parse_header(number, fields, "col", 1)
        elif fields[0] == "v":
            if n is None:
                raise ParseError(number, "vertex line before the 'p col' header")
            if len(fields) != 3:
                raise ParseError(number, "vertex lines have the form 'v <id> <color>'")
            vertex = _parse_vertex(number, fields[1], n)
            try:
                color = int(fields[2])
            except ValueError:
                raise ParseError(number, f"color '{fields[2]}' is not an integer")
            if color < 1:
                raise ParseError(number, f"color {color} is not a positive integer")
            if vertex in assignment:
                raise ParseError(number, f"vertex {vertex + 1} colored twice")
            assignment[vertex] = color
        else:
            raise ParseError(number, f"unknown line type '{fields[0]}'")
    if n is None:
        raise ParseError(1, "missing 'p col <n>' header")
    return Coloring.from_mapping(n, assignment)


def serialize_coloring(f: Coloring) -> str:
    lines = [f"p col {f.n}"]
    lines.extend(f"v {v + 1} {color}" for v, color in enumerate(f.to_list()) if color != BLANK)
    return "\n".join(lines) + "\n"
