"""
Shared fixtures: the small graph corpus every colorer is checked on, and the --runslow switch
for the large seeded instances.
"""

import pytest

from models.graph import FamilyTag, GraphFamily
from tests.corpora import drop_isolated
from utils.graph_core import (
    complete_graph,
    cycle_graph,
    generate,
    line_graph,
    path_graph,
    star_graph,
    subdivided_complete_graph,
)


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def claw_free_corpus():
    """Graphs without isolated vertices whose claw number is at most 2."""
    return {
        "C5": cycle_graph(5),
        "C6": cycle_graph(6),
        "P5": path_graph(5),
        "K5": complete_graph(5),
        "L(K5)": line_graph(complete_graph(5)),
        "L(K6)": line_graph(complete_graph(6)),
        "L(gnp)": drop_isolated(generate(GraphFamily(
            FamilyTag.line_graph_of,
            {"base": GraphFamily(FamilyTag.gnp, {"n": 14, "p": 0.3}, seed=2)},
            seed=2,
        ))),
    }


@pytest.fixture
def general_corpus(claw_free_corpus):
    """The claw-free corpus plus graphs with large induced stars."""
    gnp = drop_isolated(generate(GraphFamily(FamilyTag.gnp, {"n": 40, "p": 0.15}, seed=5)))
    return {
        **claw_free_corpus,
        "K1,5": star_graph(5),
        "K4*": subdivided_complete_graph(4),
        "geometric": drop_isolated(generate(GraphFamily(FamilyTag.geometric, {"n": 25, "radius": 0.35}, seed=1))),
        "gnp": gnp,
    }
