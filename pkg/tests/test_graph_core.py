import itertools

import networkx as nx
import numpy as np
import pytest

from models.errors import ParameterError
from models.graph import FamilyTag, Graph, GraphFamily
from utils.graph_core import (
    claw_number,
    complete_graph,
    connected_graphs,
    cycle_graph,
    generate,
    greedy_proper_coloring,
    independence_number,
    line_graph,
    maximal_independent_set,
    path_graph,
    star_graph,
    subdivided_complete_graph,
)


def _is_independent(G, S):
    return not any(G.has_edge(u, v) for u, v in itertools.combinations(S, 2))


class TestClawNumber:
    @pytest.mark.parametrize("graph, expected", [
        (star_graph(5), 5),
        (complete_graph(4), 1),
        (cycle_graph(5), 2),
        (Graph.from_edges(4, []), 0),
    ])
    def test_known_values(self, graph, expected):
        assert claw_number(graph) == expected

    def test_line_graphs_are_claw_free(self):
        for G in connected_graphs(5):
            if G.num_edges:
                assert claw_number(line_graph(G)) <= 2

    def test_matches_brute_force_on_small_graphs(self):
        for G in connected_graphs(5):
            brute = 0
            for v in G.vertices():
                nbrs = G.neighbors(v).tolist()
                for size in range(len(nbrs), brute, -1):
                    if any(_is_independent(G, S) for S in itertools.combinations(nbrs, size)):
                        brute = size
                        break
            assert claw_number(G) == brute


class TestMaximalIndependentSet:
    def test_triangle(self):
        assert maximal_independent_set(complete_graph(3)) == {0}

    def test_edgeless(self):
        assert maximal_independent_set(Graph.from_edges(4, [])) == {0, 1, 2, 3}

    def test_path(self):
        assert maximal_independent_set(path_graph(4)) == {0, 2}

    def test_independent_and_maximal(self):
        for G in connected_graphs(6):
            S = maximal_independent_set(G)
            assert _is_independent(G, S)
            for v in set(G.vertices()) - S:
                assert any(G.has_edge(v, u) for u in S)


class TestGreedyProperColoring:
    def test_edgeless_uses_one_color(self):
        assert greedy_proper_coloring(Graph.from_edges(5, [])).to_list() == [1] * 5

    def test_clique_uses_distinct_colors(self):
        assert sorted(greedy_proper_coloring(complete_graph(4)).to_list()) == [1, 2, 3, 4]

    def test_odd_cycle_uses_three_colors(self):
        coloring = greedy_proper_coloring(cycle_graph(5))
        assert coloring.num_colors == 3

    def test_proper_and_within_max_degree_plus_one(self):
        for G in connected_graphs(6):
            colors = greedy_proper_coloring(G).as_array()
            assert all(colors[u] != colors[v] for u, v in G.edges())
            assert colors.max() <= G.max_degree + 1


class TestIndependenceNumber:
    def test_against_networkx_complement_clique(self):
        for G in connected_graphs(6):
            complement = nx.complement(G.to_networkx())
            clique = max(len(c) for c in nx.find_cliques(complement))
            assert independence_number(G) == clique

    def test_subdivided_complete(self):
        assert independence_number(subdivided_complete_graph(4)) == 6


class TestGenerate:
    def test_subdivided_triangle_is_six_cycle(self):
        G = generate(GraphFamily(FamilyTag.subdivided_complete, {"n": 3}))
        assert G.n == 6
        assert G.num_edges == 6
        assert set(G.degrees().tolist()) == {2}

    def test_line_graph_of_k4_is_octahedron(self):
        base = GraphFamily(FamilyTag.complete, {"n": 4})
        G = generate(GraphFamily(FamilyTag.line_graph_of, {"base": base}))
        assert G.n == 6
        assert set(G.degrees().tolist()) == {4}

    def test_line_graph_follows_edge_order(self):
        G = Graph.from_edges(6, [(0, 1), (1, 2), (1, 3), (4, 5)])
        L = line_graph(G)
        edges = list(G.edges())
        assert L.n == 4
        assert L.isolated_vertices() == [3]
        for i, j in itertools.combinations(range(4), 2):
            assert L.has_edge(i, j) == bool(set(edges[i]) & set(edges[j]))

    def test_line_graph_of_edgeless_graph(self):
        assert line_graph(Graph.from_edges(3, [])).n == 0

    def test_line_graph_degrees_of_complete_graphs(self):
        for n in range(3, 7):
            assert set(line_graph(complete_graph(n)).degrees().tolist()) == {2 * (n - 2)}

    def test_gnp_with_zero_probability_is_edgeless(self):
        G = generate(GraphFamily(FamilyTag.gnp, {"n": 10, "p": 0.0}, seed=1))
        assert G.n == 10
        assert G.num_edges == 0

    def test_gnp_is_deterministic_in_seed(self):
        family = GraphFamily(FamilyTag.gnp, {"n": 50, "p": 0.2}, seed=8)
        assert generate(family) == generate(family)
        other = GraphFamily(FamilyTag.gnp, {"n": 50, "p": 0.2}, seed=9)
        assert generate(family) != generate(other)

    def test_geometric_full_radius_is_complete(self):
        G = generate(GraphFamily(FamilyTag.geometric, {"n": 8, "radius": 2.0}, seed=3))
        assert G.num_edges == 28

    def test_layered_family(self):
        G = generate(GraphFamily(FamilyTag.layered, {"n": 30, "eps": 0.002}, seed=4))
        assert G.n == 30

    @pytest.mark.parametrize("tag, params, field", [
        (FamilyTag.gnp, {"n": 10, "p": 1.5}, "p"),
        (FamilyTag.cycle, {"n": 2}, "n"),
        (FamilyTag.star, {}, "k"),
        (FamilyTag.layered, {"n": 30, "eps": 0.01}, "eps"),
        (FamilyTag.line_graph_of, {"base": "K4"}, "base"),
    ])
    def test_invalid_params_name_the_field(self, tag, params, field):
        with pytest.raises(ParameterError) as excinfo:
            GraphFamily(tag, params)
        assert excinfo.value.field == field


class TestGraph:
    def test_duplicate_edges_collapse(self):
        G = Graph.from_edges(3, [(0, 1), (1, 0), (1, 2)])
        assert G.num_edges == 2

    def test_self_loop_rejected(self):
        with pytest.raises(ParameterError):
            Graph.from_edges(3, [(1, 1)])

    def test_induced_subgraph_keeps_labels(self):
        sub, labels = cycle_graph(6).induced_subgraph([4, 0, 5])
        assert labels.tolist() == [0, 4, 5]
        assert sorted(sub.edges()) == [(0, 2), (1, 2)]

    def test_networkx_round_trip(self):
        G = line_graph(complete_graph(5))
        assert Graph.from_networkx(G.to_networkx()) == G

    def test_neighbors_sorted(self):
        G = Graph.from_edges(5, np.array([[4, 0], [2, 0], [0, 3]]))
        assert G.neighbors(0).tolist() == [2, 3, 4]
