"""
CFCN coloring of K_{1,k}-free graphs with O(ln k ln n) colors.
Each round takes a maximal independent set S of the still-unsatisfied graph, samples a subset I
of it and gives I a fresh color; I and every vertex outside S with exactly one neighbor in I are
satisfied and leave the graph. The best of several sampled trials is kept per round.
"""

import dataclasses
import logging

import numpy as np

from models.decomposition import CfcnResult, RoundState
from models.errors import InvariantError
from models.graph import Graph, NeighborhoodMode
from models.hypergraph import BLANK, Coloring
from models.params import CfcnParams
from utils.graph_core import claw_number, maximal_independent_set
from utils.helpers import make_rng
from utils.oracle import verify


def _neighbor_counts(Gt: Graph, members: np.ndarray) -> np.ndarray:
    """For every vertex of Gt, the number of its neighbors inside `members`."""
    inside = np.zeros(Gt.n, dtype=bool)
    inside[members] = True
    edges = Gt.edge_array()
    counts = np.bincount(edges[:, 0][inside[edges[:, 1]]], minlength=Gt.n)
    counts += np.bincount(edges[:, 1][inside[edges[:, 0]]], minlength=Gt.n)
    return counts


def sample_round(Gt: Graph, St: list[int], p: CfcnParams, rng: np.random.Generator, trial: int = 0,
                 round_index: int = 1, round_color: int = 1) -> RoundState:
    """
    One sampled candidate for a round, in Gt's vertex ids.
    Trial 0 is the deterministic candidate i = 0, I = S; other trials draw i uniformly from
    0..floor(log2 k) and keep each member of S with probability 2^-i.
    """
    S = np.array(sorted(St), dtype=np.int64)
    if trial == 0:
        i, I = 0, S
    else:
        i = int(rng.integers(0, p.max_exponent + 1))
        I = S[rng.random(len(S)) < 2.0 ** -i]

    in_S = np.zeros(Gt.n, dtype=bool)
    in_S[S] = True
    in_I = np.zeros(Gt.n, dtype=bool)
    in_I[I] = True
    unique_hit = (_neighbor_counts(Gt, I) == 1) & ~in_S
    satisfied = np.nonzero(in_I | unique_hit)[0]

    dw = _neighbor_counts(Gt, S)[~in_S]
    return RoundState(
        round_index=round_index,
        trial=trial,
        live=tuple(range(Gt.n)),
        S=tuple(S.tolist()),
        i=i,
        I=tuple(I.tolist()),
        satisfied=tuple(satisfied.tolist()),
        round_color=round_color,
        max_dw=int(dw.max()) if dw.size else 0,
    )


def _relabel(state: RoundState, labels: np.ndarray) -> RoundState:
    def original(ids):
        return tuple(labels[list(ids)].tolist()) if ids else ()

    return dataclasses.replace(
        state,
        live=original(state.live),
        S=original(state.S),
        I=original(state.I),
        satisfied=original(state.satisfied),
    )


def _check_round_witnesses(G: Graph, colors: np.ndarray, rounds_log: list[RoundState]) -> None:
    """Each vertex satisfied in round t sees the round-t color exactly once in N[v] of the final coloring."""
    for state in rounds_log:
        for v in state.satisfied:
            closed = np.append(G.neighbors(v), v)
            if np.count_nonzero(colors[closed] == state.round_color) != 1:
                raise InvariantError(
                    f"vertex {v} lost its round-{state.round_index} witness",
                    vertex=v,
                    round=state.round_index,
                )


def color_clawfree_cfcn(G: Graph, p: CfcnParams) -> CfcnResult:
    """
    Function to CFCN-color G round by round.
    Round t uses color t; vertices never put into any I share one extra color at the end.
    The result passes verify(G, ·, closed) and uses at most n rounds.
    """
    warnings = []
    claw = claw_number(G)
    if claw + 1 > p.k:
        warnings.append(f"graph has an induced K_1,{claw}; k = {p.k} does not make it K_1,k-free")
        logging.warning(f"⚠️ {warnings[-1]}")

    colors = np.zeros(G.n, dtype=np.int64)
    live = np.arange(G.n, dtype=np.int64)
    rounds_log: list[RoundState] = []
    max_dw = 0

    while live.size:
        round_index = len(rounds_log) + 1
        if round_index > G.n:
            raise InvariantError(f"CFCN rounds exceeded n = {G.n}")
        Gt, labels = G.induced_subgraph(live.tolist())
        St = sorted(maximal_independent_set(Gt))

        best = None
        for trial in range(p.trials_per_round):
            rng = make_rng(p.seed, round_index, trial)
            state = sample_round(Gt, St, p, rng, trial, round_index, round_index)
            if best is None or len(state.satisfied) > len(best.satisfied):
                best = state
        if len(best.satisfied) < max(1, len(St)):
            raise InvariantError(f"round {round_index} satisfied only {len(best.satisfied)} vertices")

        state = _relabel(best, labels)
        rounds_log.append(state)
        max_dw = max(max_dw, state.max_dw)
        colors[list(state.I)] = round_index
        live = np.setdiff1d(live, np.array(state.satisfied, dtype=np.int64))
        logging.debug(
            f"🔄 Round {round_index}: |V(G_t)|={len(state.live)} |S|={len(state.S)} i={state.i} "
            f"|I|={len(state.I)} satisfied={len(state.satisfied)}"
        )

    if max_dw > p.k - 1:
        warnings.append(f"some vertex has {max_dw} neighbors in S, above k - 1 = {p.k - 1}")

    leftover_color = None
    if np.any(colors == BLANK):
        leftover_color = len(rounds_log) + 1
        colors[colors == BLANK] = leftover_color

    _check_round_witnesses(G, colors, rounds_log)
    coloring = Coloring(colors)
    if not verify(G, coloring, NeighborhoodMode.closed).ok:
        raise InvariantError("CFCN rounds produced an invalid coloring")

    logging.info(f"✅ CFCN coloring of n={G.n}: {len(rounds_log)} rounds, {coloring.num_colors} colors")
    return CfcnResult(
        coloring=coloring,
        rounds=len(rounds_log),
        rounds_log=tuple(rounds_log),
        leftover_color=leftover_color,
        warnings=tuple(warnings),
    )
