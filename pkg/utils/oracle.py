"""
Exact oracle.
Brute-force χ_ON, χ_CN and χ_CF by iterative deepening over the bounded CF search, plus the
graph-level verifier every colorer is checked against. Exponential: intended for small inputs.
"""

import logging

from conf.config import ORACLE_MAX_VERTICES
from models.errors import InvariantError
from models.graph import Graph, NeighborhoodMode
from models.hypergraph import Coloring, Hypergraph
from models.reports import VerifyReport
from utils.hypergraph_core import CFSearch, hyper_max_degree, is_cf_coloring, neighborhood_hypergraph


def verify(G: Graph, f: Coloring, mode: NeighborhoodMode) -> VerifyReport:
    """
    Every vertex needs a color of multiplicity one in N(v) (open) or N[v] (closed),
    blank vertices carrying no color. Raises IsolatedVertexError in open mode.
    """
    H = neighborhood_hypergraph(G, mode)
    report = is_cf_coloring(H, f)
    # edge i of the neighborhood hypergraph belongs to vertex i
    return VerifyReport(ok=report.ok, mode=mode, violating_vertices=report.violating_edges)


def solve_cf(H: Hypergraph) -> tuple[int, Coloring]:
    """Smallest k with a CF k-coloring of H, together with a witness."""
    if H.universe > ORACLE_MAX_VERTICES:
        logging.warning(f"⚠️ Exact CF search on {H.universe} vertices may take very long")
    degrees = H.degrees()
    order = sorted(range(H.universe), key=lambda v: (-int(degrees[v]), v))
    search = CFSearch(H, order)
    # satisfiable at Δ+1 at the latest, so the loop always returns
    for k in range(1, hyper_max_degree(H) + 2):
        colors = search.solve(k)
        if colors is not None:
            logging.debug(f"🔎 χ_CF = {k} after {search.nodes} search nodes")
            return k, Coloring(colors)
    raise InvariantError("bounded search failed at Δ+1")


def solve_on(G: Graph) -> tuple[int, Coloring]:
    return solve_cf(neighborhood_hypergraph(G, NeighborhoodMode.open))


def solve_cn(G: Graph) -> tuple[int, Coloring]:
    return solve_cf(neighborhood_hypergraph(G, NeighborhoodMode.closed))


def chi_cf_exact(H: Hypergraph) -> int:
    return solve_cf(H)[0]


def chi_on_exact(G: Graph) -> int:
    """χ_ON(G); raises IsolatedVertexError when G has an isolated vertex."""
    return solve_on(G)[0]


def chi_cn_exact(G: Graph) -> int:
    return solve_cn(G)[0]
