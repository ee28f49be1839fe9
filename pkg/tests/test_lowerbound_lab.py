import json
import math

import numpy as np
import pytest

from models.errors import ParameterError
from models.graph import Graph
from models.params import LayeredParams, LayerMeta
from utils.graph_core import complete_graph, path_graph, star_graph
from utils.helpers import make_rng
from utils.lowerbound_lab import (
    SetClass,
    classify_set,
    degree_report,
    generate_layered,
    light_set_exponent,
    light_set_size_holds,
    mean_degree_by_layer,
    run_lab,
    set_weight,
    take_care_probability,
    takecare_probe,
    takecare_sweep,
    uncovered_vertices,
    unique_neighbor_set,
    weight_floor_holds,
)


def _meta(weights, eps0=0.001):
    weights = np.asarray(weights, dtype=np.float64)
    return LayerMeta(layer=np.ones(len(weights), dtype=np.int64), weight=weights, eps0=eps0, n=len(weights))


class TestGenerateLayered:
    def test_layers_of_twenty(self):
        G, meta = generate_layered(LayeredParams(n=20, eps=0.002, seed=1))
        assert meta.num_layers == 2
        assert meta.layer_sizes().tolist() == [10, 10]
        eps0 = 0.002 / 3
        assert meta.weight[0] * meta.weight[10] == pytest.approx((1 - eps0) ** 3)

    def test_remainder_joins_the_last_layer(self):
        _, meta = generate_layered(LayeredParams(n=23, eps=0.002))
        assert meta.layer_sizes().tolist() == [7, 7, 9]

    def test_vanishing_eps_gives_a_clique(self):
        G, _ = generate_layered(LayeredParams(n=100, eps=3e-9, seed=2))
        assert G.num_edges / (100 * 99 / 2) >= 0.999

    def test_same_seed_same_graph(self):
        p = LayeredParams(n=200, eps=0.002, seed=6)
        assert generate_layered(p)[0] == generate_layered(p)[0]

    @pytest.mark.parametrize("eps", [0.0, 0.003, -0.001])
    def test_invalid_eps(self, eps):
        with pytest.raises(ParameterError) as excinfo:
            LayeredParams(n=20, eps=eps)
        assert excinfo.value.field == "eps"

    def test_weight_floor(self):
        _, meta = generate_layered(LayeredParams(n=500, eps=0.002))
        assert weight_floor_holds(meta)


class TestSets:
    def test_empty_weight(self):
        assert set_weight(_meta([0.999, 0.999, 0.998]), []) == 0

    def test_two_first_layer_vertices(self):
        assert set_weight(_meta([0.999, 0.999, 0.998]), [0, 1]) == pytest.approx(1.998)

    def test_unique_neighbors(self):
        assert unique_neighbor_set(star_graph(3), {0}) == {1, 2, 3}
        assert unique_neighbor_set(complete_graph(4), {0, 1}) == set()
        assert unique_neighbor_set(path_graph(4), {1}) == {0, 2}

    def test_unique_neighbors_match_definition(self):
        rng = make_rng(30)
        for _ in range(20):
            n = 30
            edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.15]
            G = Graph.from_edges(n, edges)
            S = set(rng.choice(n, size=int(rng.integers(0, 10)), replace=False).tolist())
            expected = {
                v for v in range(n)
                if v not in S and sum(1 for u in G.neighbors(v).tolist() if u in S) == 1
            }
            assert unique_neighbor_set(G, S) == expected

    def test_classification(self):
        meta = _meta([1.0] * 4)
        assert classify_set(meta, []) == SetClass.light
        assert classify_set(meta, [0, 1]) == SetClass.light
        assert classify_set(meta, [0, 1, 2]) == SetClass.heavy

    def test_whole_vertex_set_is_heavy(self):
        _, meta = generate_layered(LayeredParams(n=50, eps=0.002))
        assert classify_set(meta, range(50)) == SetClass.heavy

    def test_light_set_size(self):
        _, meta = generate_layered(LayeredParams(n=400, eps=0.002))
        assert light_set_size_holds(meta, range(15))
        assert light_set_size_holds(meta, range(400))

    def test_take_care_probability_matches_product_formula(self):
        meta = _meta([0.9, 0.8, 0.7, 0.6, 0.95])
        S = [0, 1, 2]
        q = [meta.weight[4] * meta.weight[s] for s in S]
        expected = sum(q[i] * math.prod(1 - q[j] for j in range(3) if j != i) for i in range(3))
        assert take_care_probability(meta, 4, S) == pytest.approx(expected)
        assert take_care_probability(meta, 4, []) == 0.0

    def test_light_set_exponent(self):
        eps0 = 0.001
        assert light_set_exponent(eps0) == pytest.approx(math.exp(eps0) * math.log(1 / (1 - math.exp(-eps0))))


class TestDegreeReport:
    def test_single_layer_is_symmetric(self):
        G, meta = generate_layered(LayeredParams(n=5, eps=0.002, seed=1))
        report = degree_report(G, meta, 0.5)
        assert meta.num_layers == 1
        assert len(report.layers) == 1
        assert report.layers[0].size == 5

    def test_counts_add_up(self):
        G, meta = generate_layered(LayeredParams(n=300, eps=0.002, seed=3))
        report = degree_report(G, meta, 0.25)
        assert sum(layer.size for layer in report.layers) == 300
        assert sum(layer.flagged for layer in report.layers) == report.flagged
        assert report.max_degree == G.max_degree
        assert report.ratio == pytest.approx(G.min_degree / G.max_degree ** (1 - 0.002))

    @pytest.mark.parametrize("alpha", [0.0, 1.0, -0.5])
    def test_invalid_alpha(self, alpha):
        G, meta = generate_layered(LayeredParams(n=20, eps=0.002, seed=1))
        with pytest.raises(ParameterError) as excinfo:
            degree_report(G, meta, alpha)
        assert excinfo.value.field == "alpha"

    @pytest.mark.slow
    def test_large_instance_concentrates(self):
        G, meta = generate_layered(LayeredParams(n=4096, eps=0.002, seed=5))
        report = degree_report(G, meta, 0.25)
        assert report.flagged == 0
        means = mean_degree_by_layer(G, meta)
        assert all(a > b for a, b in zip(means, means[1:]))


class TestTakecare:
    def test_distinct_colors_cover_everyone(self):
        G = complete_graph(6)
        assert uncovered_vertices(G, np.arange(1, 7)).size == 0

    def test_one_color_on_triangle(self):
        report = takecare_probe(complete_graph(3), r=1, trials=5, seed=0)
        assert report.min_uncovered == 3
        assert report.chi_cn == 2

    def test_blank_vertices_cover_nobody(self):
        assert uncovered_vertices(path_graph(2), np.array([0, 0])).tolist() == [0, 1]

    def test_sweep_on_small_layered_graph(self):
        G, meta = generate_layered(LayeredParams(n=12, eps=0.002, seed=9))
        reports = takecare_sweep(G, [1, 2, 3, 4], trials=3000, seed=9, meta=meta)
        assert reports[0].min_uncovered == G.n - len(G.isolated_vertices())
        minima = [report.min_uncovered for report in reports]
        assert all(a >= b for a, b in zip(minima, minima[1:]))
        assert [report.chi_cn for report in reports] == [2, 2, 2, 2]

    @pytest.mark.parametrize("kwargs, field", [
        ({"r": 0, "trials": 5}, "r"),
        ({"r": -2, "trials": 5}, "r"),
        ({"r": 2, "trials": 0}, "trials"),
    ])
    def test_invalid_takecare_arguments(self, kwargs, field):
        with pytest.raises(ParameterError) as excinfo:
            takecare_probe(complete_graph(3), seed=0, **kwargs)
        assert excinfo.value.field == field


class TestRunLab:
    def test_row_is_json(self):
        row = run_lab(LayeredParams(n=64, eps=0.002, seed=3), trials=10, samples=3)
        assert row["schema"] == 1
        assert row["n"] == 64
        assert [entry["r"] for entry in row["probes"]] == [1, 2, 3, 4]
        assert json.loads(json.dumps(row)) == row
