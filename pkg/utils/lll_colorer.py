"""
Near-uniform hypergraph colorer.
Colors every vertex uniformly from a palette of ceil(e*ell*r) colors, then resamples bad edges
(edges showing at most |E|/2 distinct colors) until none is left. Each resample of the
lowest-indexed bad edge counts as one round.
"""

import heapq
import logging
import math
from dataclasses import dataclass

import numpy as np

from models.errors import InvariantError, PreconditionError, RetryExhaustedError
from models.hypergraph import Coloring, Hypergraph
from models.params import LLLParams
from models.reports import PreconditionReport
from utils.helpers import make_rng
from utils.hypergraph_core import is_cf_coloring, max_edge_intersections

# Real thresholds are compared with this slack so r = 12 ln Δ style values behave
_TOL = 1e-9


@dataclass(frozen=True)
class NearUniformColoring:
    coloring: Coloring
    rounds: int


def check_preconditions(H: Hypergraph, p: LLLParams) -> PreconditionReport:
    """
    Itemized check of r <= |E| <= ell*r for every edge, r >= 2 log2(4Γ) for the measured Γ
    (vacuous when Γ = 0) and p.gamma >= Γ.
    """
    failures = []
    upper = p.ell * p.r
    for index, edge in enumerate(H.edges):
        size = len(edge)
        if size < p.r - _TOL:
            failures.append(f"edge {index} has size {size} < r = {p.r:.4g}")
        elif size > upper + _TOL:
            failures.append(f"edge {index} has size {size} > ell*r = {upper:.4g}")

    gamma = max_edge_intersections(H)
    if gamma > 0:
        needed = 2 * math.log2(4 * gamma)
        if p.r < needed - _TOL:
            failures.append(f"r = {p.r:.4g} < 2*log2(4*Γ) = {needed:.4g} (Γ = {gamma})")
    if p.gamma < gamma:
        failures.append(f"gamma = {p.gamma} underestimates the measured Γ = {gamma}")

    return PreconditionReport(ok=not failures, failures=tuple(failures))


def _is_bad(colors: np.ndarray, edge: np.ndarray) -> bool:
    return 2 * len(np.unique(colors[edge])) <= len(edge)


def color_near_uniform(H: Hypergraph, p: LLLParams) -> NearUniformColoring:
    """
    CF-color H with colors 1..p.palette_size so that every edge gets more than |E|/2 distinct
    colors. Raises PreconditionError when the parameters do not fit H and RetryExhaustedError
    when p.max_resample_rounds resamples were not enough.
    """
    report = check_preconditions(H, p)
    if not report.ok:
        raise PreconditionError(list(report.failures))

    rng = make_rng(p.seed)
    colors = rng.integers(1, p.palette_size + 1, size=H.universe, dtype=np.int64)
    incidence = H.incidence()
    meeting: dict[int, np.ndarray] = {}

    bad = np.array([_is_bad(colors, edge) for edge in H.edges], dtype=bool)
    queued = bad.copy()
    heap = np.nonzero(bad)[0].tolist()
    heapq.heapify(heap)

    rounds = 0
    while heap:
        e = heapq.heappop(heap)
        queued[e] = False
        if not bad[e]:
            continue
        if rounds >= p.max_resample_rounds:
            remaining = np.nonzero(bad)[0].tolist()
            raise RetryExhaustedError("near-uniform coloring", rounds, bad_edges=remaining)

        edge = H.edges[e]
        colors[edge] = rng.integers(1, p.palette_size + 1, size=len(edge), dtype=np.int64)
        rounds += 1

        # only edges sharing a vertex with e can change state
        if e not in meeting:
            meeting[e] = np.unique(np.concatenate([incidence[v] for v in edge.tolist()]))
        for f in meeting[e].tolist():
            bad[f] = _is_bad(colors, H.edges[f])
            if bad[f] and not queued[f]:
                queued[f] = True
                heapq.heappush(heap, f)

    coloring = Coloring(colors)
    if not is_cf_coloring(H, coloring).ok:
        raise InvariantError("near-uniform coloring left an edge without a unique color")
    logging.debug(f"🎲 Near-uniform coloring: {H.num_edges} edges, palette {p.palette_size}, {rounds} resample rounds")
    return NearUniformColoring(coloring=coloring, rounds=rounds)
