"""
CFON coloring of K_{1,k}-free graphs with O(k ln Δ) colors.
The graph is split around a maximal independent set A into A1/A2, X, B and C; five auxiliary
hypergraphs are CF-colored on pairwise disjoint vertex sets with disjoint palettes, and
vertices no stage colored share one extra color. A certificate records every stage.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from conf.config import DEFAULT_SEED
from models.decomposition import (
    Decomposition,
    PaletteCertificate,
    RepairRecord,
    StageMethod,
    StageRecord,
)
from models.errors import (
    InvariantError,
    IsolatedVertexError,
    ParameterError,
    PreconditionError,
    RetryExhaustedError,
    UnsatisfiedVerticesError,
)
from models.graph import Graph, NeighborhoodMode
from models.hypergraph import BLANK, Coloring, Hypergraph
from models.params import LLLParams
from utils.graph_core import claw_number, greedy_proper_coloring, maximal_independent_set
from utils.helpers import ceil_real, dense_relabel, sorted_ids
from utils.hypergraph_core import cf_color_bounded, hyper_max_degree
from utils.lll_colorer import check_preconditions, color_near_uniform
from utils.oracle import verify

STAGE_NAMES = ("H1", "H2", "H3", "H4", "H5")


def _require_no_isolated(G: Graph) -> None:
    isolated = G.isolated_vertices()
    if isolated:
        raise IsolatedVertexError(isolated[0])


def normalize_classes(G: Graph, classes: list[list[int]]) -> list[list[int]]:
    """
    Move vertices down until every vertex of class i >= 2 has a neighbor in each lower class:
    scan classes 2..s and their vertices in ascending order, moving a vertex to the smallest
    class holding none of its neighbors; repeat until nothing moves, then drop empty classes.
    Classes stay independent because a vertex only moves into a class free of its neighbors.
    """
    class_of = np.full(G.n, -1, dtype=np.int64)
    for index, members in enumerate(classes):
        class_of[members] = index
    buckets = [set(members) for members in classes]

    moved = True
    while moved:
        moved = False
        for index in range(1, len(buckets)):
            for v in sorted(buckets[index]):
                seen = set(class_of[G.neighbors(v)].tolist())
                target = next((j for j in range(index) if j not in seen), None)
                if target is not None:
                    buckets[index].discard(v)
                    buckets[target].add(v)
                    class_of[v] = target
                    moved = True

    return [sorted(bucket) for bucket in buckets if bucket]


def decompose(G: Graph, k: int) -> Decomposition:
    """
    Function to build the A/A1/A2/X/G'/B/C split of G for the given k.
    Requires Δ >= 2 and no isolated vertices; K_{1,k}-freeness is checked and reported,
    not required.
    """
    if not isinstance(k, (int, np.integer)) or k < 2:
        raise ParameterError("k", f"must be an integer >= 2, got {k!r}")
    _require_no_isolated(G)
    delta = G.max_degree
    if delta < 2:
        raise PreconditionError([f"maximum degree Δ = {delta} < 2"], delta=delta)

    threshold = k * math.log(delta)
    A = maximal_independent_set(G)
    A1 = {v for v in A if G.degree(v) <= threshold}
    A2 = A - A1
    X = set()
    for v in A1:
        X.update(G.neighbors(v).tolist())

    rest = [v for v in G.vertices() if v not in A and v not in X]
    gprime, labels = G.induced_subgraph(rest)
    local_classes = list(greedy_proper_coloring(gprime).color_classes().values())
    local_classes = normalize_classes(gprime, local_classes)
    classes = tuple(tuple(int(labels[v]) for v in members) for members in local_classes)

    t = min(len(classes), ceil_real(12 * math.log(delta)))
    B = {v for members in classes[:t] for v in members}
    C = {v for members in classes[t:] for v in members}
    AX = {v for v in A if any(u in X for u in G.neighbors(v).tolist())}

    decomposition = Decomposition(
        k=int(k),
        delta=delta,
        A=frozenset(A),
        A1=frozenset(A1),
        A2=frozenset(A2),
        X=frozenset(X),
        gprime=gprime,
        gprime_labels=labels,
        classes=classes,
        t=t,
        B=frozenset(B),
        C=frozenset(C),
        AX=frozenset(AX),
        AXbar=frozenset(A - AX),
        claw_number=claw_number(G),
    )
    if decomposition.claw_free_verified:
        _check_class_neighbors(G, decomposition)
    logging.debug(
        f"🧱 Decomposition k={k} Δ={delta}: |A1|={len(A1)} |A2|={len(A2)} |X|={len(X)} "
        f"s={len(classes)} t={t} |B|={len(B)} |C|={len(C)}"
    )
    return decomposition


def _check_class_neighbors(G: Graph, d: Decomposition) -> None:
    """In a K_{1,k}-free graph no vertex has k or more neighbors inside one class."""
    class_of = d.class_of()
    for v in G.vertices():
        counts: dict[int, int] = {}
        for u in G.neighbors(v).tolist():
            index = class_of.get(u)
            if index is not None:
                counts[index] = counts.get(index, 0) + 1
        worst = max(counts.values(), default=0)
        if worst >= d.k:
            raise InvariantError(f"vertex {v} has {worst} neighbors in one class of a K_1,{d.k}-free graph", vertex=v)


@dataclass(frozen=True, eq=False)
class StageHypergraph:
    """
    One auxiliary hypergraph on a local universe. labels[i] is the original id of local
    vertex i; served[j] is the vertex whose neighborhood trace is edge j; dropped lists the
    vertices whose trace was empty.
    """

    name: str
    hypergraph: Hypergraph
    labels: np.ndarray
    served: tuple[int, ...]
    dropped: tuple[int, ...]


def _stage(name: str, G: Graph, universe: frozenset[int], served: frozenset[int]) -> StageHypergraph:
    owners = sorted_ids(served)
    neighborhoods = Hypergraph(G.n, [G.neighbors(v) for v in owners])
    H, labels, kept = neighborhoods.restrict(universe)
    kept_set = set(kept)
    dropped = tuple(v for index, v in enumerate(owners) if index not in kept_set)
    return StageHypergraph(name, H, labels, tuple(owners[index] for index in kept), dropped)


def build_hypergraphs(G: Graph, d: Decomposition) -> tuple[StageHypergraph, ...]:
    """
    H1 = (B, {N(v) ∩ B : v ∈ C}), H2 = (A2, {N(v) ∩ A2 : v ∈ B}), H3 = (A1, {N(v) ∩ A1 : v ∈ X}),
    H4 = (X, {N(v) ∩ X : v ∈ AX}), H5 = (C, {N(v) ∩ C : v ∈ AXbar}). Empty traces are dropped.
    """
    stages = (
        _stage("H1", G, d.B, d.C),
        _stage("H2", G, d.A2, d.B),
        _stage("H3", G, d.A1, d.X),
        _stage("H4", G, d.X, d.AX),
        _stage("H5", G, d.C, d.AXbar),
    )
    for stage in stages:
        if stage.dropped:
            logging.debug(f"🕳️ {stage.name} dropped empty traces of vertices {list(stage.dropped)}")
    return stages


def _color_stage(stage: StageHypergraph, d: Decomposition, seed: int) -> tuple[np.ndarray, StageMethod]:
    H = stage.hypergraph
    if H.num_edges == 0:
        return np.zeros(H.universe, dtype=np.int64), StageMethod.empty

    if stage.name == "H1":
        params = LLLParams.for_hypergraph(H, ell=d.k - 1, r=12 * math.log(d.delta), seed=seed)
        report = check_preconditions(H, params)
        if report.ok:
            try:
                return color_near_uniform(H, params).coloring.as_array(), StageMethod.lll
            except RetryExhaustedError as e:
                logging.warning(f"⚠️ H1 resampling gave up after {e.rounds} rounds, using the Δ+1 colorer")
        else:
            logging.debug(f"🔁 H1 outside the near-uniform regime ({len(report.failures)} failures), using the Δ+1 colorer")

    coloring = cf_color_bounded(H, hyper_max_degree(H) + 1)
    return coloring.as_array(), StageMethod.bounded


def _check_stage_degrees(stages: tuple[StageHypergraph, ...], d: Decomposition) -> None:
    limits = {"H3": d.threshold, "H4": d.k - 1, "H5": d.k - 1}
    for stage in stages:
        limit = limits.get(stage.name)
        if limit is not None and hyper_max_degree(stage.hypergraph) > limit + 1e-9:
            raise InvariantError(f"{stage.name} has maximum degree above {limit:.4g}", stage=stage.name)


def _repair(G: Graph, colors: np.ndarray, violators: list[int], next_color: int) -> list[RepairRecord]:
    """
    Greedy cover: give the vertex adjacent to the most unsatisfied vertices a fresh color,
    which is unique in every neighborhood containing it, until nobody is left.
    """
    pending = set(violators)
    repairs = []
    while pending:
        counts: dict[int, int] = {}
        for v in pending:
            for w in G.neighbors(v).tolist():
                counts[w] = counts.get(w, 0) + 1
        w = min(counts, key=lambda u: (-counts[u], u))
        serves = tuple(sorted(v for v in pending if G.has_edge(v, w)))
        colors[w] = next_color
        repairs.append(RepairRecord(vertex=w, color=next_color, serves=serves))
        pending.difference_update(serves)
        next_color += 1
    return repairs


def color_clawfree_cfon(G: Graph, k: int | None = None, seed: int = DEFAULT_SEED,
                        fallback: bool = True) -> tuple[Coloring, PaletteCertificate]:
    """
    Function to CFON-color a graph without isolated vertices.
    k defaults to claw_number(G) + 1. The result always passes verify(G, ·, open); with
    fallback off, vertices the stages leave unsatisfied raise UnsatisfiedVerticesError.
    """
    _require_no_isolated(G)
    if k is None:
        k = max(2, claw_number(G) + 1)
    d = decompose(G, k)
    stages = build_hypergraphs(G, d)
    if d.claw_free_verified:
        _check_stage_degrees(stages, d)

    colors = np.zeros(G.n, dtype=np.int64)
    records, offset = [], 0
    for stage in stages:
        local, method = _color_stage(stage, d, seed)
        covered = stage.hypergraph.covered_vertices()
        mask = np.zeros_like(local)
        mask[covered] = local[covered]
        relabeled, count = dense_relabel(mask, offset)
        targets = stage.labels[covered]
        if np.any(colors[targets] != BLANK):
            raise InvariantError(f"{stage.name} recolors a vertex colored by an earlier stage", stage=stage.name)
        colors[targets] = relabeled[covered]
        records.append(StageRecord(stage.name, method, stage.hypergraph.num_edges, count, offset, stage.dropped))
        offset += count

    leftover = 0
    if np.any(colors == BLANK):
        leftover = 1
        colors[colors == BLANK] = offset + 1

    repairs: list[RepairRecord] = []
    report = verify(G, Coloring(colors), NeighborhoodMode.open)
    if not report.ok:
        violators = list(report.violating_vertices)
        if not fallback:
            raise UnsatisfiedVerticesError(violators)
        logging.info(f"🩹 Repairing {len(violators)} unsatisfied vertices with fresh colors")
        repairs = _repair(G, colors, violators, offset + leftover + 1)

    coloring = Coloring(colors)
    if not verify(G, coloring, NeighborhoodMode.open).ok:
        raise InvariantError("CFON pipeline produced an invalid coloring")

    certificate = PaletteCertificate(
        k=d.k,
        delta=d.delta,
        stages=tuple(records),
        leftover=leftover,
        repairs=tuple(repairs),
        claw_free_verified=d.claw_free_verified,
        colors_used=coloring.num_colors,
    )
    logging.info(
        f"✅ CFON coloring of n={G.n}: {coloring.num_colors} colors from a palette of {certificate.total} "
        f"(budget {certificate.budget:.1f}, {len(repairs)} repairs)"
    )
    return coloring, certificate
