"""
Graph core utilities.
Contains elementary graph queries (claw number, independence number), the greedy primitives
every coloring pipeline starts from, and the generator suite for all graph families used by the lab.
"""

import itertools
import logging
from typing import Iterable

import networkx as nx
import numpy as np

from models.errors import ParameterError
from models.graph import FamilyTag, Graph, GraphFamily
from models.hypergraph import Coloring
from utils.helpers import make_rng


# --- exact independence number ------------------------------------------------


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _max_independent_size(masks: list[int], candidates: int) -> int:
    """
    Branch-and-bound maximum independent set size over the vertices in `candidates`.
    masks[v] is the neighbor bitmask of local vertex v. Exponential in the worst case.
    """
    best = 0

    def branch(cand: int, size: int) -> None:
        nonlocal best
        if cand == 0:
            best = max(best, size)
            return
        if size + cand.bit_count() <= best:
            return

        low_v, low_deg, high_v, high_deg = -1, None, -1, -1
        for v in _iter_bits(cand):
            deg = (masks[v] & cand).bit_count()
            if low_deg is None or deg < low_deg:
                low_v, low_deg = v, deg
            if deg > high_deg:
                high_v, high_deg = v, deg

        # a vertex of degree <= 1 is always in some maximum independent set
        if low_deg <= 1:
            branch(cand & ~masks[low_v] & ~(1 << low_v), size + 1)
            return
        branch(cand & ~masks[high_v] & ~(1 << high_v), size + 1)
        branch(cand & ~(1 << high_v), size)

    branch(candidates, 0)
    return best


def independence_number(G: Graph, vertices: Iterable[int] | None = None) -> int:
    """Exact independence number of G, or of G[vertices] when a vertex subset is given."""
    local = sorted(set(int(v) for v in vertices)) if vertices is not None else list(G.vertices())
    position = {v: i for i, v in enumerate(local)}
    masks = []
    for v in local:
        mask = 0
        for u in G.neighbors(v).tolist():
            j = position.get(u)
            if j is not None:
                mask |= 1 << j
        masks.append(mask)
    return _max_independent_size(masks, (1 << len(local)) - 1)


def claw_number(G: Graph) -> int:
    """
    Largest k such that G contains an induced K_{1,k}: the maximum over v of the
    independence number of G[N(v)]. Returns 0 for edgeless graphs.
    """
    best = 0
    for v in G.vertices():
        nbrs = G.neighbors(v)
        if len(nbrs) <= best:
            continue
        best = max(best, independence_number(G, nbrs.tolist()))
    return best


# --- greedy primitives ----------------------------------------------------------


def maximal_independent_set(G: Graph) -> set[int]:
    """Greedy maximal independent set, scanning vertex ids in ascending order."""
    blocked = np.zeros(G.n, dtype=bool)
    chosen = set()
    for v in G.vertices():
        if not blocked[v]:
            chosen.add(v)
            blocked[v] = True
            blocked[G.neighbors(v)] = True
    return chosen


def greedy_proper_coloring(G: Graph) -> Coloring:
    """
    First-fit proper coloring in ascending vertex order.
    Colors are 1..Δ+1: a vertex sees at most Δ colored neighbors.
    """
    colors = np.zeros(G.n, dtype=np.int64)
    for v in G.vertices():
        taken = set(colors[G.neighbors(v)].tolist())
        color = 1
        while color in taken:
            color += 1
        colors[v] = color
    return Coloring(colors)


# --- generators -----------------------------------------------------------------


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def star_graph(k: int) -> Graph:
    """K_{1,k}: center 0, leaves 1..k."""
    return Graph.from_edges(k + 1, [(0, leaf) for leaf in range(1, k + 1)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def subdivided_complete_graph(n: int) -> Graph:
    """
    K_n with every edge subdivided once. Original vertices keep ids 0..n-1; the vertex
    subdividing {i, j} (i < j) gets id n + rank of (i, j) in lexicographic order.
    """
    edges = []
    for index, (i, j) in enumerate(itertools.combinations(range(n), 2)):
        middle = n + index
        edges.append((i, middle))
        edges.append((middle, j))
    return Graph.from_edges(n + n * (n - 1) // 2, edges)


def line_graph(G: Graph) -> Graph:
    """L(G): one vertex per edge of G (in sorted edge order), adjacent iff the edges share an endpoint."""
    # nodes of nx.line_graph are (u, v) tuples with u < v, so sorted relabeling follows edge order
    return Graph.from_networkx(nx.line_graph(G.to_networkx()))



def threshold_pairs(n: int, rng: np.random.Generator, probability_row) -> np.ndarray:
    """
    One uniform draw per pair u < v in lexicographic order; keep the pair when the draw
    falls below probability_row(u)[v - u - 1].
    """
    chunks = []
    for u in range(n - 1):
        draws = rng.random(n - u - 1)
        hits = np.nonzero(draws < probability_row(u))[0]
        if hits.size:
            chunks.append(np.stack([np.full(hits.size, u, dtype=np.int64), hits + u + 1], axis=1))
    return np.concatenate(chunks) if chunks else np.zeros((0, 2), dtype=np.int64)


def gnp_graph(n: int, p: float, seed: int) -> Graph:
    """Erdős–Rényi G(n, p); the seed fully determines the graph."""
    rng = make_rng(seed)
    return Graph.from_edges(n, threshold_pairs(n, rng, lambda u: p))


def geometric_graph(n: int, radius: float, seed: int) -> Graph:
    """Random geometric (unit-disk) graph: n uniform points in the unit square, edges at distance <= radius."""
    rng = make_rng(seed)
    points = rng.random((n, 2))
    chunks = []
    for u in range(n - 1):
        dist = np.hypot(*(points[u + 1:] - points[u]).T)
        hits = np.nonzero(dist <= radius)[0]
        if hits.size:
            chunks.append(np.stack([np.full(hits.size, u, dtype=np.int64), hits + u + 1], axis=1))
    edges = np.concatenate(chunks) if chunks else np.zeros((0, 2), dtype=np.int64)
    return Graph.from_edges(n, edges)


def connected_graphs(max_n: int) -> list[Graph]:
    """Every connected graph on 1..max_n vertices up to isomorphism (networkx graph atlas, max_n <= 7)."""
    if not 1 <= max_n <= 7:
        raise ParameterError("max_n", "the graph atlas covers 1..7 vertices")
    return [
        Graph.from_networkx(g)
        for g in nx.graph_atlas_g()
        if 1 <= g.number_of_nodes() <= max_n and nx.is_connected(g)
    ]


def generate(family: GraphFamily) -> Graph:
    """Build the graph named by `family` (params are validated when the family is created)."""
    p = family.params
    seed = family.seed if family.seed is not None else 0
    tag = family.tag

    if tag == FamilyTag.complete:
        graph = complete_graph(p["n"])
    elif tag == FamilyTag.star:
        graph = star_graph(p["k"])
    elif tag == FamilyTag.path:
        graph = path_graph(p["n"])
    elif tag == FamilyTag.cycle:
        graph = cycle_graph(p["n"])
    elif tag == FamilyTag.subdivided_complete:
        graph = subdivided_complete_graph(p["n"])
    elif tag == FamilyTag.line_graph_of:
        graph = line_graph(generate(p["base"]))
    elif tag == FamilyTag.gnp:
        graph = gnp_graph(p["n"], float(p["p"]), seed)
    elif tag == FamilyTag.geometric:
        graph = geometric_graph(p["n"], float(p["radius"]), seed)
    elif tag == FamilyTag.layered:
        from utils.lowerbound_lab import generate_layered
        from models.params import LayeredParams

        graph, _ = generate_layered(LayeredParams(n=p["n"], eps=float(p["eps"]), seed=seed))
    else:
        raise ParameterError("tag", f"unknown family {tag}")

    logging.debug(f"🧩 Generated {tag.value} graph: n={graph.n}, m={graph.num_edges}")
    return graph
