"""
Result models of the claw-free pipelines: the CFON decomposition, its palette certificate,
and the per-round state of the CFCN procedure.
"""

import enum
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from conf.config import JSON_SCHEMA_VERSION
from models.graph import Graph
from models.hypergraph import Coloring


def sorted_list(vertices) -> list[int]:
    return sorted(int(v) for v in vertices)


@dataclass(frozen=True, eq=False)
class Decomposition:
    """
    The vertex split the CFON pipeline works on.
    A is a maximal independent set, split at degree k*lnΔ into A1 (low) and A2 (high);
    X is the union of N(v) over A1; Gprime = G[V minus (A and X)] with its normalized
    color classes; B takes the first t classes and C the rest; AX are the members of A
    with a neighbor in X.
    """

    k: int
    delta: int
    A: frozenset[int]
    A1: frozenset[int]
    A2: frozenset[int]
    X: frozenset[int]
    gprime: Graph
    gprime_labels: np.ndarray
    classes: tuple[tuple[int, ...], ...]
    t: int
    B: frozenset[int]
    C: frozenset[int]
    AX: frozenset[int]
    AXbar: frozenset[int]
    claw_number: int

    @property
    def s(self) -> int:
        return len(self.classes)

    @property
    def threshold(self) -> float:
        return self.k * math.log(self.delta)

    @property
    def claw_free_verified(self) -> bool:
        """True when G is K_{1,k}-free, i.e. k >= claw number + 1."""
        return self.k >= self.claw_number + 1

    def class_of(self) -> dict[int, int]:
        """Original vertex id -> 1-based class index."""
        return {v: i for i, members in enumerate(self.classes, start=1) for v in members}

    def to_dict(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "delta": self.delta,
            "A": sorted_list(self.A),
            "A1": sorted_list(self.A1),
            "A2": sorted_list(self.A2),
            "X": sorted_list(self.X),
            "gprime": sorted_list(self.gprime_labels),
            "classes": [list(members) for members in self.classes],
            "t": self.t,
            "B": sorted_list(self.B),
            "C": sorted_list(self.C),
            "AX": sorted_list(self.AX),
            "AXbar": sorted_list(self.AXbar),
            "claw_number": self.claw_number,
            "claw_free_verified": self.claw_free_verified,
        }


# How a stage hypergraph was colored
class StageMethod(enum.Enum):
    lll = "lll"
    bounded = "bounded"
    empty = "empty"


@dataclass(frozen=True)
class StageRecord:
    name: str
    method: StageMethod
    edges: int
    count: int
    offset: int
    dropped: tuple[int, ...] = ()

    @property
    def palette(self) -> range:
        return range(self.offset + 1, self.offset + self.count + 1)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "method": self.method.value,
            "edges": self.edges,
            "count": self.count,
            "offset": self.offset,
            "dropped": list(self.dropped),
        }


@dataclass(frozen=True)
class RepairRecord:
    """A fallback repair: `vertex` got the fresh `color`, which serves the listed unsatisfied vertices."""

    vertex: int
    color: int
    serves: tuple[int, ...]

    def to_dict(self) -> dict[str, Any]:
        return {"vertex": self.vertex, "color": self.color, "serves": list(self.serves)}


def cfon_budget(k: int, delta: int) -> float:
    return 46 * k * math.log(delta) + 2 * k + 3


@dataclass(frozen=True)
class PaletteCertificate:
    """Per-stage palette accounting for a CFON pipeline run."""

    k: int
    delta: int
    stages: tuple[StageRecord, ...]
    leftover: int
    repairs: tuple[RepairRecord, ...] = ()
    claw_free_verified: bool = False
    colors_used: int = 0

    @property
    def total(self) -> int:
        """
        Size of the reserved palette. A repair can overwrite the only holder of a stage color,
        so this bounds colors_used from above without always meeting it.
        """
        return sum(stage.count for stage in self.stages) + self.leftover + len(self.repairs)

    @property
    def budget(self) -> float:
        return cfon_budget(self.k, self.delta)

    @property
    def budget_applies(self) -> bool:
        """The budget is only claimed for Δ >= 3 runs that needed no repair."""
        return self.delta >= 3 and not self.repairs

    @property
    def within_budget(self) -> bool:
        return self.total <= self.budget

    def palettes_disjoint(self) -> bool:
        used: set[int] = set()
        for stage in self.stages:
            palette = set(stage.palette)
            if used & palette:
                return False
            used |= palette
        return True

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema": JSON_SCHEMA_VERSION,
            "k": self.k,
            "delta": self.delta,
            "stages": [stage.to_dict() for stage in self.stages],
            "leftover": self.leftover,
            "repairs": [repair.to_dict() for repair in self.repairs],
            "total": self.total,
            "colors_used": self.colors_used,
            "budget": self.budget,
            "within_budget": self.within_budget,
            "budget_applies": self.budget_applies,
            "claw_free_verified": self.claw_free_verified,
        }


@dataclass(frozen=True)
class RoundState:
    """
    One sampled CFCN round, in original vertex ids.
    `live` are the unsatisfied vertices entering the round; `satisfied` is I plus the live
    vertices outside S with exactly one neighbor in I.
    """

    round_index: int
    trial: int
    live: tuple[int, ...]
    S: tuple[int, ...]
    i: int
    I: tuple[int, ...]
    satisfied: tuple[int, ...]
    round_color: int
    max_dw: int = 0

    @property
    def fraction(self) -> float:
        return len(self.satisfied) / len(self.live) if self.live else 0.0

    def to_dict(self) -> dict[str, Any]:
        return {
            "round": self.round_index,
            "trial": self.trial,
            "live": len(self.live),
            "S": len(self.S),
            "i": self.i,
            "I": len(self.I),
            "satisfied": len(self.satisfied),
            "fraction": self.fraction,
            "max_dw": self.max_dw,
            "color": self.round_color,
        }


@dataclass(frozen=True)
class CfcnResult:
    coloring: Coloring
    rounds: int
    rounds_log: tuple[RoundState, ...]
    leftover_color: int | None = None
    warnings: tuple[str, ...] = field(default_factory=tuple)

    def mean_satisfied_fraction(self) -> float:
        if not self.rounds_log:
            return 0.0
        return float(np.mean([state.fraction for state in self.rounds_log]))

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema": JSON_SCHEMA_VERSION,
            "rounds": self.rounds,
            "colors": self.coloring.num_colors,
            "leftover_color": self.leftover_color,
            "rounds_log": [state.to_dict() for state in self.rounds_log],
            "warnings": list(self.warnings),
        }
