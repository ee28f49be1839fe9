"""
Layered random graph lab.
Generates the weighted layered random graph (layer i has weight (1 - eps0)^i and x, y are
joined with probability w_x * w_y) and computes its exact finite-n quantities: set weights,
unique-neighbor sets, heavy/light classification, degree concentration and "taken care of" probes.
Asymptotic statements about this model are reported, never asserted.
"""

import dataclasses
import enum
import logging
import math
from typing import Any, Iterable, Sequence

import numpy as np

from conf.config import JSON_SCHEMA_VERSION, PROBE_EXACT_LIMIT
from models.errors import ParameterError
from models.graph import Graph
from models.params import LayeredParams, LayerMeta
from models.reports import DegreeReport, LayerStats, ProbeReport
from utils.graph_core import independence_number, threshold_pairs
from utils.helpers import make_rng, sorted_ids
from utils.oracle import chi_cn_exact

# Largest n for which the exact independence number is computed in lab rows
INDEPENDENCE_EXACT_LIMIT = 60


class SetClass(enum.Enum):
    heavy = "heavy"
    light = "light"


def generate_layered(p: LayeredParams) -> tuple[Graph, LayerMeta]:
    """
    Function to sample the layered random graph.
    Layers have floor(n/L) vertices each, the remainder joining the last layer; vertex ids run
    through the layers in order. Pairs inside a layer are sampled too.
    """
    L = p.layers
    size = p.n // L
    layer = np.minimum(np.arange(p.n) // size, L - 1) + 1
    weight = (1 - p.eps0) ** layer.astype(np.float64)
    meta = LayerMeta(layer=layer, weight=weight, eps0=p.eps0, n=p.n)

    rng = make_rng(p.seed)
    edges = threshold_pairs(p.n, rng, lambda u: weight[u] * weight[u + 1:])
    graph = Graph.from_edges(p.n, edges)
    logging.debug(f"🧩 Layered graph n={p.n} L={L} eps0={p.eps0:g}: m={graph.num_edges}")
    return graph, meta


def set_weight(meta: LayerMeta, S: Iterable[int]) -> float:
    return math.fsum(meta.weight[sorted_ids(S)].tolist())


def unique_neighbor_set(G: Graph, S: Iterable[int]) -> frozenset[int]:
    """N^(1)(S): vertices outside S with exactly one neighbor in S."""
    members = np.zeros(G.n, dtype=bool)
    members[sorted_ids(S)] = True
    edges = G.edge_array()
    counts = np.bincount(edges[:, 0][members[edges[:, 1]]], minlength=G.n)
    counts += np.bincount(edges[:, 1][members[edges[:, 0]]], minlength=G.n)
    return frozenset(np.nonzero((counts == 1) & ~members)[0].tolist())


def classify_set(meta: LayerMeta, S: Iterable[int]) -> SetClass:
    """Heavy iff w(S) > sqrt(n), strictly."""
    return SetClass.heavy if set_weight(meta, S) > math.sqrt(meta.n) else SetClass.light


def take_care_probability(meta: LayerMeta, x: int, S: Iterable[int]) -> float:
    """
    Probability under the model that x, outside S, has exactly one neighbor in S:
    the sum over s in S of w_s w_x times the product over the other y in S of (1 - w_y w_x).
    """
    members = sorted_ids(S)
    if not members:
        return 0.0
    q = meta.weight[x] * meta.weight[members]
    # q < 1 for every pair, so dividing the full product by (1 - q_s) is exact
    everyone = float(np.prod(1 - q))
    return float(np.sum(q * everyone / (1 - q)))


def light_set_exponent(eps0: float) -> float:
    """f(eps0) = e^eps0 * ln(1 / (1 - e^-eps0))"""
    return math.exp(eps0) * math.log(1 / (1 - math.exp(-eps0)))


def expected_degrees(meta: LayerMeta) -> np.ndarray:
    """mu(x) = w_x * (w(V) - w_x), the model's expected degree of every vertex."""
    total = float(np.dot(meta.layer_sizes(), meta.layer_weights()))
    return meta.weight * (total - meta.weight)


def mean_degree_by_layer(G: Graph, meta: LayerMeta) -> list[float]:
    degrees = G.degrees().astype(np.float64)
    sums = np.bincount(meta.layer, weights=degrees, minlength=meta.num_layers + 1)[1:]
    return (sums / meta.layer_sizes()).tolist()


def degree_report(G: Graph, meta: LayerMeta, alpha: float) -> DegreeReport:
    """
    Flags every vertex with |d(x) - mu(x)| >= alpha * mu(x), and reports per-layer statistics,
    the layers holding the max and min degree vertices and δ / Δ^(1 - eps) with eps = 3 * eps0.
    """
    if not 0 < alpha < 1:
        raise ParameterError("alpha", f"must lie in (0, 1), got {alpha}")
    degrees = G.degrees()
    mu = expected_degrees(meta)
    flagged = np.abs(degrees - mu) >= alpha * mu
    means = mean_degree_by_layer(G, meta)

    layers = []
    for index, (size, weight) in enumerate(zip(meta.layer_sizes().tolist(), meta.layer_weights().tolist())):
        in_layer = meta.layer == index + 1
        layers.append(LayerStats(
            layer=index + 1,
            size=size,
            weight=weight,
            expected_degree=float(mu[in_layer][0]) if size else 0.0,
            mean_degree=means[index],
            flagged=int(np.count_nonzero(flagged & in_layer)),
        ))

    Delta, delta = G.max_degree, G.min_degree
    ratio = delta / Delta ** (1 - 3 * meta.eps0) if Delta else 0.0
    return DegreeReport(
        alpha=alpha,
        layers=tuple(layers),
        flagged_vertices=tuple(np.nonzero(flagged)[0].tolist()),
        max_degree=Delta,
        min_degree=delta,
        max_degree_layer=int(meta.layer[int(np.argmax(degrees))]) if G.n else 0,
        min_degree_layer=int(meta.layer[int(np.argmin(degrees))]) if G.n else 0,
        ratio=ratio,
    )


def uncovered_vertices(G: Graph, colors: np.ndarray) -> np.ndarray:
    """Vertices no member of N[v] takes care of: no color of N[v] occurs exactly once there."""
    edges = G.edge_array()
    loops = np.arange(G.n, dtype=np.int64)
    src = np.concatenate([edges[:, 0], edges[:, 1], loops])
    dst = np.concatenate([edges[:, 1], edges[:, 0], loops])
    counts = np.zeros((G.n, int(colors.max(initial=0)) + 1), dtype=np.int64)
    np.add.at(counts, (src, colors[dst]), 1)
    # column 0 holds blank vertices, which take care of nobody
    covered = (counts[:, 1:] == 1).any(axis=1)
    return np.nonzero(~covered)[0]


def takecare_probe(G: Graph, r: int, trials: int, seed: int, meta: LayerMeta | None = None,
                   exact: bool = True) -> ProbeReport:
    """
    Draw `trials` uniform r-colorings (trial t uses stream [seed, r, t]) and count the vertices
    left uncovered. Small graphs also get their exact χ_CN.
    """
    if r < 1:
        raise ParameterError("r", f"must be a positive color count, got {r}")
    if trials < 1:
        raise ParameterError("trials", f"must be >= 1, got {trials}")
    uncovered = []
    for trial in range(trials):
        rng = make_rng(seed, r, trial)
        colors = rng.integers(1, r + 1, size=G.n, dtype=np.int64)
        uncovered.append(len(uncovered_vertices(G, colors)))

    chi = chi_cn_exact(G) if exact and G.n <= PROBE_EXACT_LIMIT else None
    return ProbeReport(
        r=r,
        trials=trials,
        min_uncovered=min(uncovered),
        mean_uncovered=float(np.mean(uncovered)),
        chi_cn=chi,
        r_reference=meta.r_colors if meta is not None else None,
    )


def takecare_sweep(G: Graph, r_values: Sequence[int], trials: int, seed: int,
                   meta: LayerMeta | None = None) -> list[ProbeReport]:
    reports = []
    for r in r_values:
        report = takecare_probe(G, r, trials, seed, meta, exact=not reports)
        if reports:
            # the exact χ_CN does not depend on r
            report = dataclasses.replace(report, chi_cn=reports[0].chi_cn)
        reports.append(report)
    return reports


def weight_floor_holds(meta: LayerMeta) -> bool:
    """Every weight is >= (1 - eps0)^(ln n), which itself exceeds n^(-2 eps0)."""
    floor = (1 - meta.eps0) ** math.log(meta.n)
    return bool(np.all(meta.weight >= floor)) and floor > meta.n ** (-2 * meta.eps0)


def light_set_size_holds(meta: LayerMeta, S: Iterable[int]) -> bool:
    """Light sets have fewer than n^(0.5 + 2 eps0) members; vacuous for heavy sets."""
    members = sorted_ids(S)
    if classify_set(meta, members) == SetClass.heavy:
        return True
    return len(members) < meta.n ** (0.5 + 2 * meta.eps0)


def independence_diagnostic(G: Graph) -> dict[str, Any]:
    """Exact α(G) next to n^0.003; computed only up to INDEPENDENCE_EXACT_LIMIT vertices."""
    alpha = independence_number(G) if G.n <= INDEPENDENCE_EXACT_LIMIT else None
    return {"alpha": alpha, "claim": G.n ** 0.003}


def heavy_set_diagnostic(G: Graph, meta: LayerMeta, samples: int, seed: int) -> dict[str, Any]:
    """|N^(1)(S)| of random heavy sets against n^0.6."""
    rng = make_rng(seed, 0xEA7)
    size = min(G.n, math.ceil(math.sqrt(G.n) / float(meta.weight.min())) + 1)
    sizes = []
    for _ in range(samples):
        S = rng.choice(G.n, size=size, replace=False)
        if classify_set(meta, S.tolist()) == SetClass.heavy:
            sizes.append(len(unique_neighbor_set(G, S.tolist())))
    return {
        "samples": len(sizes),
        "set_size": size,
        "max_unique_neighbors": max(sizes) if sizes else None,
        "mean_unique_neighbors": float(np.mean(sizes)) if sizes else None,
        "claim": G.n ** 0.6,
    }


def light_set_diagnostic(G: Graph, meta: LayerMeta, r: int, seed: int) -> dict[str, Any]:
    """Union of N^(1)(S_i) over r disjoint random light sets against n - n^0.7."""
    rng = make_rng(seed, 0x119)
    size = max(1, math.isqrt(G.n))
    r = max(1, min(r, G.n // size))
    order = rng.permutation(G.n)
    covered: set[int] = set()
    size_bound_ok = True
    for index in range(r):
        S = order[index * size:(index + 1) * size].tolist()
        covered |= unique_neighbor_set(G, S)
        size_bound_ok = size_bound_ok and light_set_size_holds(meta, S)
    return {
        "sets": r,
        "set_size": size,
        "union": len(covered),
        "claim": G.n - G.n ** 0.7,
        "size_bound_ok": size_bound_ok,
    }


def run_lab(p: LayeredParams, alpha: float = 0.25, r_values: Sequence[int] = (1, 2, 3, 4),
            trials: int = 100, samples: int = 20) -> dict[str, Any]:
    """Function to generate one layered instance and collect every report into a JSON row."""
    G, meta = generate_layered(p)
    report = degree_report(G, meta, alpha)
    probes = takecare_sweep(G, r_values, trials, p.seed, meta)
    row = {
        "schema": JSON_SCHEMA_VERSION,
        "n": p.n,
        "eps": p.eps,
        "seed": p.seed,
        "layers": meta.to_dict(),
        "delta": report.min_degree,
        "Delta": report.max_degree,
        "ratio": report.ratio,
        "degree_report": report.to_dict(),
        "weight_floor_holds": weight_floor_holds(meta),
        "light_set_exponent": light_set_exponent(meta.eps0),
        "independence": independence_diagnostic(G),
        "heavy_sets": heavy_set_diagnostic(G, meta, samples, p.seed),
        "light_sets": light_set_diagnostic(G, meta, max(1, meta.r_colors), p.seed),
        "probes": [probe.to_dict() for probe in probes],
    }
    logging.info(f"🧪 Lab row n={p.n} eps={p.eps:g} seed={p.seed}: Δ={report.max_degree} δ={report.min_degree}")
    return row
