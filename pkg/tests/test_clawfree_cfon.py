import logging
import math

import numpy as np
import pytest

from models.decomposition import PaletteCertificate, RepairRecord, StageMethod, StageRecord, cfon_budget
from models.errors import IsolatedVertexError, ParameterError, PreconditionError
from models.graph import Graph, NeighborhoodMode
from models.hypergraph import Coloring
from tests.corpora import ORACLE_LIMIT, cfon_corpus
from utils.clawfree_cfon import _repair, build_hypergraphs, color_clawfree_cfon, decompose, normalize_classes
from utils.graph_core import (
    claw_number,
    complete_graph,
    cycle_graph,
    greedy_proper_coloring,
    line_graph,
    path_graph,
    star_graph,
)
from utils.helpers import make_rng
from utils.oracle import chi_on_exact, verify

CFON_CORPUS = cfon_corpus()


class TestDecompose:
    def test_short_path(self):
        d = decompose(path_graph(3), 3)
        assert d.A == {0, 2}
        assert d.A1 == {0, 2}
        assert d.A2 == set()
        assert d.X == {1}
        assert d.gprime.n == 0
        assert d.classes == ()

    def test_low_degree_graph_has_no_heavy_part(self):
        G = cycle_graph(6)
        d = decompose(G, 3)
        assert d.A1 == d.A
        assert not d.A2
        rest = set(G.vertices()) - d.A - d.X
        assert set(d.gprime_labels.tolist()) == rest

    def test_parts_partition_the_graph(self, general_corpus):
        for name, G in general_corpus.items():
            if G.max_degree < 2:
                continue
            d = decompose(G, claw_number(G) + 1)
            assert d.A1 | d.A2 == d.A and not d.A1 & d.A2, name
            assert d.B | d.C == set(d.gprime_labels.tolist()), name
            assert not (d.A | d.X) & (d.B | d.C), name
            assert d.AX | d.AXbar == d.A, name
            assert d.t == min(d.s, math.ceil(12 * math.log(d.delta))), name

    def test_k_below_two(self):
        with pytest.raises(ParameterError):
            decompose(cycle_graph(5), 1)

    def test_isolated_vertex(self):
        with pytest.raises(IsolatedVertexError):
            decompose(Graph.from_edges(4, [(0, 1), (1, 2)]), 3)

    def test_single_edge_is_below_the_degree_precondition(self):
        with pytest.raises(PreconditionError):
            decompose(complete_graph(2), 2)


class TestNormalizeClasses:
    def test_every_vertex_sees_all_lower_classes(self):
        rng = make_rng(12)
        for _ in range(20):
            n = 25
            order = rng.permutation(n)
            edges = [(int(order[u]), int(order[v])) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.2]
            G = Graph.from_edges(n, edges)
            classes = normalize_classes(G, list(greedy_proper_coloring(G).color_classes().values()))
            class_of = {v: i for i, members in enumerate(classes) for v in members}
            assert sorted(class_of) == list(range(n))
            for i, members in enumerate(classes):
                for v in members:
                    seen = {class_of[u] for u in G.neighbors(v).tolist()}
                    assert i not in seen
                    assert set(range(i)) <= seen

    def test_misplaced_vertex_moves_down(self):
        G = path_graph(3)
        assert normalize_classes(G, [[0], [1], [2]]) == [[0, 2], [1]]


class TestBuildHypergraphs:
    def test_no_far_classes_gives_empty_first_stage(self):
        G = cycle_graph(6)
        d = decompose(G, 3)
        assert not d.C
        stages = build_hypergraphs(G, d)
        assert [stage.name for stage in stages] == ["H1", "H2", "H3", "H4", "H5"]
        assert stages[0].hypergraph.num_edges == 0

    def test_traces_stay_inside_their_universe(self, general_corpus):
        for name, G in general_corpus.items():
            if G.max_degree < 2:
                continue
            d = decompose(G, claw_number(G) + 1)
            for stage in build_hypergraphs(G, d):
                assert stage.hypergraph.universe == len(stage.labels), name
                for v, edge in zip(stage.served, stage.hypergraph.edges):
                    originals = set(stage.labels[edge].tolist())
                    assert originals <= set(G.neighbors(v).tolist()), name

    def test_only_the_last_stage_drops_traces(self, claw_free_corpus):
        for name, G in claw_free_corpus.items():
            d = decompose(G, claw_number(G) + 1)
            for stage in build_hypergraphs(G, d)[:4]:
                if stage.name == "H2":
                    continue
                assert not stage.dropped, (name, stage.name)


class TestColorClawfreeCfon:
    def test_line_graph_of_k5(self):
        G = line_graph(complete_graph(5))
        coloring, certificate = color_clawfree_cfon(G, k=3, seed=7)
        assert verify(G, coloring, NeighborhoodMode.open).ok
        assert certificate.total <= cfon_budget(3, 6)
        assert certificate.claw_free_verified

    def test_six_cycle_is_at_least_optimal(self):
        G = cycle_graph(6)
        coloring, certificate = color_clawfree_cfon(G, k=3, seed=1)
        assert verify(G, coloring, NeighborhoodMode.open).ok
        assert certificate.total >= chi_on_exact(G) == 3

    def test_isolated_vertex(self):
        with pytest.raises(IsolatedVertexError):
            color_clawfree_cfon(Graph.from_edges(3, [(0, 1)]))

    def test_corpus(self, general_corpus):
        for name, G in general_corpus.items():
            if G.max_degree < 2:
                continue
            coloring, certificate = color_clawfree_cfon(G, seed=3)
            assert verify(G, coloring, NeighborhoodMode.open).ok, name
            assert certificate.palettes_disjoint(), name
            assert coloring.num_colors <= certificate.total, name
            assert coloring.is_total, name
            if certificate.budget_applies:
                assert certificate.within_budget, name

    def test_deterministic(self):
        G = line_graph(complete_graph(6))
        assert color_clawfree_cfon(G, seed=5)[0] == color_clawfree_cfon(G, seed=5)[0]

    def test_certificate_serializes(self):
        _, certificate = color_clawfree_cfon(star_graph(4), seed=0)
        document = certificate.to_dict()
        assert document["schema"] == 1
        assert [stage["name"] for stage in document["stages"]] == ["H1", "H2", "H3", "H4", "H5"]
        assert document["k"] == 5
        assert document["claw_free_verified"]


class TestRepair:
    def test_fresh_color_satisfies_center(self):
        G = star_graph(3)
        colors = np.ones(4, dtype=np.int64)
        repairs = _repair(G, colors, [0], next_color=9)
        assert len(repairs) == 1
        assert repairs[0].vertex == 1
        assert repairs[0].serves == (0,)
        assert verify(G, Coloring(colors), NeighborhoodMode.open).ok


@pytest.fixture(scope="module")
def cfon_runs():
    return {name: (G, *color_clawfree_cfon(G, seed=13)) for name, G in CFON_CORPUS}


class TestSeededCorpus:
    def test_corpus_size(self):
        assert len(CFON_CORPUS) >= 60
        assert {"K2*", "K6*"} <= {name for name, _ in CFON_CORPUS}

    @pytest.mark.parametrize("name", [name for name, _ in CFON_CORPUS])
    def test_run(self, name, cfon_runs):
        G, coloring, certificate = cfon_runs[name]
        assert verify(G, coloring, NeighborhoodMode.open).ok
        assert certificate.colors_used == coloring.num_colors <= certificate.total
        if certificate.budget_applies:
            assert certificate.within_budget
        if G.n <= ORACLE_LIMIT:
            assert coloring.num_colors >= chi_on_exact(G)

    def test_repair_rate(self, cfon_runs):
        repaired = [name for name, (_, _, certificate) in cfon_runs.items() if certificate.repairs]
        rate = len(repaired) / len(cfon_runs)
        logging.info(f"CFON repair rate {rate:.3f} ({len(repaired)}/{len(cfon_runs)}): {repaired}")
        assert rate < 0.5
        for name in repaired:
            assert not cfon_runs[name][2].budget_applies


class TestPaletteTotal:
    def test_total_counts_the_reserved_palette(self):
        certificate = PaletteCertificate(
            k=3,
            delta=4,
            stages=(StageRecord("H1", StageMethod.bounded, 2, 2, 0, ()),),
            leftover=1,
            repairs=(RepairRecord(vertex=0, color=4, serves=(1,)),),
            colors_used=3,
        )
        assert certificate.total == 4
        assert certificate.to_dict()["colors_used"] == 3
