"""
CFON coloring of graphs with high minimum degree, using O(ln^{1+ε} Δ) colors.
A random set A is sampled so that every vertex has between 108 ln(2Δ) and (180/c) ln^{1+ε}(2Δ)
neighbors in it; the traces N(v) ∩ A are then CF-colored by the near-uniform colorer and
V \\ A takes one unused color.
"""

import logging
from dataclasses import dataclass

import numpy as np
from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from conf.config import WINDOW_GLOBAL_RESTARTS
from models.errors import InvariantError, PreconditionError, RetryExhaustedError
from models.graph import Graph, NeighborhoodMode
from models.hypergraph import Coloring, Hypergraph
from models.params import LLLParams, MinDegParams
from utils.helpers import dense_relabel, make_rng
from utils.hypergraph_core import cf_color_bounded, hyper_max_degree, neighborhood_hypergraph
from utils.lll_colorer import check_preconditions, color_near_uniform
from utils.oracle import verify


@dataclass(frozen=True, eq=False)
class MinDegResult:
    """`fallback` is set when the window sampler gave up and A = V was colored at its Δ+1 bound."""

    coloring: Coloring
    window_set: frozenset[int]
    method: str
    fallback: bool = False


def check_min_degree(G: Graph, p: MinDegParams) -> None:
    """Every vertex needs d(v) >= c*Δ / ln^eps(Δ); raises PreconditionError naming the first offender."""
    required = p.min_degree_required
    low = np.nonzero(G.degrees() < required - 1e-9 * max(1.0, required))[0]
    if low.size:
        v = int(low[0])
        raise PreconditionError(
            [f"vertex {v} has degree {G.degree(v)} < c*Δ/ln^eps(Δ) = {required:.4g}"],
            vertex=v,
            violating=int(low.size),
        )


def window_counts(G: Graph, members: np.ndarray) -> np.ndarray:
    """|N(v) ∩ A| for every vertex, A given as a boolean membership mask."""
    edges = G.edge_array()
    counts = np.bincount(edges[:, 0][members[edges[:, 1]]], minlength=G.n)
    counts += np.bincount(edges[:, 1][members[edges[:, 0]]], minlength=G.n)
    return counts


def _log_restart(retry_state) -> None:
    error = retry_state.outcome.exception()
    logging.warning(f"⚠️ Window sampling attempt {retry_state.attempt_number} gave up: {error}; restarting")


def _window_violators(counts: np.ndarray, p: MinDegParams) -> np.ndarray:
    return np.nonzero((counts <= p.window_lo) | (counts >= p.window_hi))[0]


def _sample_attempt(G: Graph, p: MinDegParams, attempt: int, max_rounds: int) -> np.ndarray:
    rng = make_rng(p.seed, attempt)
    members = rng.random(G.n) < p.sample_prob
    counts = window_counts(G, members)

    rounds = 0
    while True:
        bad = _window_violators(counts, p)
        if bad.size == 0:
            logging.debug(f"🪟 Window set found on attempt {attempt} after {rounds} resample rounds")
            return members
        if rounds >= max_rounds:
            raise RetryExhaustedError(
                "window sampling",
                rounds,
                attempt=attempt,
                violating=bad[:20].tolist(),
                counts=counts[bad[:20]].tolist(),
            )
        # resample the indicators B_v depends on: the neighbors of the lowest violator
        nbrs = G.neighbors(int(bad[0]))
        redrawn = rng.random(len(nbrs)) < p.sample_prob
        flipped = nbrs[redrawn != members[nbrs]]
        members[nbrs] = redrawn
        for u in flipped.tolist():
            counts[G.neighbors(u)] += 1 if members[u] else -1
        rounds += 1


def sample_window_set(G: Graph, p: MinDegParams) -> frozenset[int]:
    """
    Function to sample A with 108 ln(2Δ) < |N(v) ∩ A| < (180/c) ln^{1+ε}(2Δ) for every v.
    Local resampling runs under a tenacity restart policy; each attempt has its own
    random stream and an equal share of p.max_resample_rounds.
    """
    check_min_degree(G, p)
    attempts = max(1, WINDOW_GLOBAL_RESTARTS)
    per_attempt = max(1, p.max_resample_rounds // attempts)

    retryer = Retrying(
        stop=stop_after_attempt(attempts),
        retry=retry_if_exception_type(RetryExhaustedError),
        before_sleep=_log_restart,
        reraise=True,
    )
    for attempt in retryer:
        with attempt:
            members = _sample_attempt(G, p, attempt.retry_state.attempt_number, per_attempt)
    return frozenset(np.nonzero(members)[0].tolist())


def _fallback_coloring(G: Graph) -> Coloring:
    H = neighborhood_hypergraph(G, NeighborhoodMode.open)
    return cf_color_bounded(H, hyper_max_degree(H) + 1)


def color_mindeg_cfon(G: Graph, p: MinDegParams, fallback: bool = True) -> MinDegResult:
    """
    Function to CFON-color G through a window set.
    When sampling exhausts its rounds and `fallback` is on, A := V and the open-neighborhood
    hypergraph is colored at its Δ+1 bound instead; the result is flagged.
    """
    check_min_degree(G, p)
    try:
        window = sample_window_set(G, p)
    except RetryExhaustedError as e:
        if not fallback:
            raise
        logging.warning(f"⚠️ Window sampling failed after {e.rounds} rounds, coloring with A = V")
        coloring = _fallback_coloring(G)
        return MinDegResult(coloring, frozenset(G.vertices()), "bounded", fallback=True)

    labels = np.array(sorted(window), dtype=np.int64)
    position = np.full(G.n, -1, dtype=np.int64)
    position[labels] = np.arange(len(labels))
    traces = []
    for v in G.vertices():
        local = position[G.neighbors(v)]
        traces.append(local[local >= 0])
    H = Hypergraph(len(labels), traces)

    params = LLLParams.for_hypergraph(H, ell=p.lll_ell, r=p.lll_r, seed=p.seed)
    method = "lll"
    report = check_preconditions(H, params)
    local_colors = None
    if report.ok:
        try:
            local_colors = color_near_uniform(H, params).coloring.as_array()
        except RetryExhaustedError as e:
            logging.warning(f"⚠️ Near-uniform coloring gave up after {e.rounds} rounds, using the Δ+1 colorer")
    else:
        logging.warning(f"⚠️ Window hypergraph misses the near-uniform preconditions: {report.failures[0]}")
    if local_colors is None:
        method = "bounded"
        local_colors = cf_color_bounded(H, hyper_max_degree(H) + 1).as_array()

    relabeled, q = dense_relabel(local_colors)
    colors = np.full(G.n, q + 1, dtype=np.int64)
    colors[labels] = relabeled

    coloring = Coloring(colors)
    if not verify(G, coloring, NeighborhoodMode.open).ok:
        raise InvariantError("window coloring is not conflict-free on open neighborhoods")
    logging.info(f"✅ Min-degree CFON coloring of n={G.n}: |A|={len(labels)}, {coloring.num_colors} colors ({method})")
    return MinDegResult(coloring, window, method)
