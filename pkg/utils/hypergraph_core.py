"""
Hypergraph core utilities.
Contains degree and intersection statistics, the CF-coloring checker, the bounded CF colorer
(constructive in the Δ+1 regime, exact backtracking below it) and neighborhood-hypergraph extraction.
"""

import logging
from collections import defaultdict

import numpy as np

from models.errors import IsolatedVertexError, ParameterError
from models.graph import Graph, NeighborhoodMode
from models.hypergraph import BLANK, Coloring, Hypergraph
from models.reports import CFReport


def hyper_max_degree(H: Hypergraph) -> int:
    degrees = H.degrees()
    return int(degrees.max()) if degrees.size else 0


def max_edge_intersections(H: Hypergraph, block: int = 512) -> int:
    """
    Γ: the largest number of other edges (by index) that a single edge meets.
    Computed from the edge-vertex incidence matrix, one block of rows at a time.
    """
    m = H.num_edges
    if m <= 1:
        return 0
    incidence = np.zeros((m, H.universe), dtype=np.float32)
    for index, edge in enumerate(H.edges):
        incidence[index, edge] = 1.0
    best = 0
    for start in range(0, m, block):
        shared = incidence[start:start + block] @ incidence.T
        meets = (shared > 0).sum(axis=1) - 1
        best = max(best, int(meets.max()))
        if best == m - 1:
            break
    return best


def edge_has_unique_color(colors: np.ndarray) -> bool:
    """True iff some non-blank color occurs exactly once in `colors`."""
    colors = colors[colors != BLANK]
    if colors.size == 0:
        return False
    _, counts = np.unique(colors, return_counts=True)
    return bool((counts == 1).any())


def is_cf_coloring(H: Hypergraph, f: Coloring) -> CFReport:
    """
    Every edge must contain a color of multiplicity exactly one among its non-blank members.
    Blank members carry no color.
    """
    if f.n < H.universe:
        raise ParameterError("coloring", f"covers {f.n} vertices, hypergraph has {H.universe}")
    values = f.as_array()
    violating = tuple(i for i, edge in enumerate(H.edges) if not edge_has_unique_color(values[edge]))
    return CFReport(ok=not violating, violating_edges=violating)


class CFSearch:
    """
    Exact backtracking search for a CF coloring with at most k colors.

    Vertices are colored in the given order (uncovered vertices are fixed to color 1);
    a vertex may take color c only if c - 1 is already in use, which removes the k!
    relabelings of each solution. A branch dies as soon as an edge is fully colored
    without a unique color.
    """

    def __init__(self, H: Hypergraph, order: list[int]):
        self.H = H
        covered = set(H.covered_vertices().tolist())
        self.order = [v for v in order if v in covered]
        self.incidence = [inc.tolist() for inc in H.incidence()]
        self.nodes = 0

    def _reset(self):
        self.colors = np.zeros(self.H.universe, dtype=np.int64)
        self.remaining = [len(edge) for edge in self.H.edges]
        self.counts = [defaultdict(int) for _ in self.H.edges]
        self.unique = [0] * self.H.num_edges

    def _place(self, v: int, c: int) -> bool:
        self.colors[v] = c
        ok = True
        for e in self.incidence[v]:
            count = self.counts[e][c] + 1
            self.counts[e][c] = count
            if count == 1:
                self.unique[e] += 1
            elif count == 2:
                self.unique[e] -= 1
            self.remaining[e] -= 1
            if self.remaining[e] == 0 and self.unique[e] == 0:
                ok = False
        if not ok:
            self._remove(v, c)
        return ok

    def _remove(self, v: int, c: int) -> None:
        self.colors[v] = 0
        for e in self.incidence[v]:
            count = self.counts[e][c] - 1
            self.counts[e][c] = count
            if count == 0:
                self.unique[e] -= 1
            elif count == 1:
                self.unique[e] += 1
            self.remaining[e] += 1

    def solve(self, k: int) -> np.ndarray | None:
        self._reset()
        depth = len(self.order)
        tried = [0] * (depth + 1)
        highest = [0] * (depth + 1)
        i = 0
        while i < depth:
            v = self.order[i]
            limit = min(k, highest[i] + 1)
            color = tried[i] + 1
            while color <= limit and not self._place(v, color):
                color += 1
            self.nodes += 1
            if color <= limit:
                tried[i] = color
                highest[i + 1] = max(highest[i], color)
                i += 1
                tried[i] = 0
                continue
            # exhausted this vertex: step back and advance the previous one
            tried[i] = 0
            i -= 1
            if i < 0:
                return None
            self._remove(self.order[i], tried[i])

        colors = self.colors.copy()
        colors[colors == 0] = 1
        return colors


def _transversal_coloring(H: Hypergraph) -> np.ndarray:
    """
    Constructive CF coloring with at most Δ+1 colors.
    Take an inclusion-minimal transversal U; every vertex outside U gets color Δ+1. Each
    u in U owns an edge meeting U only in u, so dropping the singleton traces {E ∩ U}
    leaves a hypergraph on U of maximum degree <= Δ-1, which is colored the same way.
    """
    colors = np.zeros(H.universe, dtype=np.int64)
    pending = list(range(H.universe))
    current = [set(edge.tolist()) for edge in H.edges]
    while current:
        incidence: dict[int, list[int]] = defaultdict(list)
        for index, edge in enumerate(current):
            for v in edge:
                incidence[v].append(index)
        delta = max(len(edges) for edges in incidence.values())

        hits = [len(edge) for edge in current]
        transversal = set(incidence)
        for v in sorted(incidence):
            if all(hits[e] >= 2 for e in incidence[v]):
                transversal.discard(v)
                for e in incidence[v]:
                    hits[e] -= 1

        for v in pending:
            if v not in transversal:
                colors[v] = delta + 1
        pending = sorted(transversal)
        traces = (edge & transversal for edge in current)
        current = [trace for trace in traces if len(trace) >= 2]

    colors[pending] = 1
    return colors


def cf_color_bounded(H: Hypergraph, kmax: int, exhaustive: bool = False) -> Coloring | None:
    """
    Function to CF-color H with colors 1..kmax, or return None when no such coloring exists.
    For kmax >= Δ_H + 1 a coloring always exists and is built constructively unless
    `exhaustive` forces the backtracking search.
    """
    if kmax < 1:
        raise ParameterError("kmax", f"must be a positive integer, got {kmax}")
    delta = hyper_max_degree(H)
    if kmax >= delta + 1 and not exhaustive:
        return Coloring(_transversal_coloring(H))

    degrees = H.degrees()
    order = sorted(range(H.universe), key=lambda v: (-int(degrees[v]), v))
    search = CFSearch(H, order)
    colors = search.solve(kmax)
    logging.debug(f"🔎 Bounded CF search k={kmax}: {search.nodes} nodes, {'sat' if colors is not None else 'unsat'}")
    return Coloring(colors) if colors is not None else None


def neighborhood_hypergraph(G: Graph, mode: NeighborhoodMode) -> Hypergraph:
    """One edge per vertex, in vertex order: N(v) for open mode, N[v] for closed mode."""
    if mode == NeighborhoodMode.open:
        isolated = G.isolated_vertices()
        if isolated:
            raise IsolatedVertexError(isolated[0])
        return Hypergraph(G.n, (G.neighbors(v) for v in G.vertices()))
    return Hypergraph(G.n, (np.append(G.neighbors(v), v) for v in G.vertices()))
