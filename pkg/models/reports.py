"""
Verification report models shared by the hypergraph, oracle and colorer modules.
"""

from dataclasses import dataclass, field
from typing import Any

from conf.config import JSON_SCHEMA_VERSION
from models.graph import NeighborhoodMode


@dataclass(frozen=True)
class CFReport:
    """Outcome of a hypergraph CF check: violating edges are listed by index."""

    ok: bool
    violating_edges: tuple[int, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {"schema": JSON_SCHEMA_VERSION, "ok": self.ok, "violating_edges": list(self.violating_edges)}


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of a graph-level CFON / CFCN check."""

    ok: bool
    mode: NeighborhoodMode
    violating_vertices: tuple[int, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema": JSON_SCHEMA_VERSION,
            "ok": self.ok,
            "mode": self.mode.value,
            "violating_vertices": list(self.violating_vertices),
        }


@dataclass(frozen=True)
class PreconditionReport:
    ok: bool
    failures: tuple[str, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict[str, Any]:
        return {"ok": self.ok, "failures": list(self.failures)}


@dataclass(frozen=True)
class LayerStats:
    """Model expectation against the sample for one layer of the layered random graph."""

    layer: int
    size: int
    weight: float
    expected_degree: float
    mean_degree: float
    flagged: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "layer": self.layer,
            "size": self.size,
            "weight": self.weight,
            "expected_degree": self.expected_degree,
            "mean_degree": self.mean_degree,
            "flagged": self.flagged,
        }


@dataclass(frozen=True)
class DegreeReport:
    alpha: float
    layers: tuple[LayerStats, ...]
    flagged_vertices: tuple[int, ...]
    max_degree: int
    min_degree: int
    max_degree_layer: int
    min_degree_layer: int
    ratio: float

    @property
    def flagged(self) -> int:
        return len(self.flagged_vertices)

    def to_dict(self) -> dict[str, Any]:
        return {
            "alpha": self.alpha,
            "layers": [stats.to_dict() for stats in self.layers],
            "flagged": self.flagged,
            "Delta": self.max_degree,
            "delta": self.min_degree,
            "Delta_layer": self.max_degree_layer,
            "delta_layer": self.min_degree_layer,
            "ratio": self.ratio,
        }


@dataclass(frozen=True)
class ProbeReport:
    """Uncovered-vertex counts of random r-colorings; chi_cn is filled in for small graphs only."""

    r: int
    trials: int
    min_uncovered: int
    mean_uncovered: float
    chi_cn: int | None = None
    r_reference: int | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "r": self.r,
            "trials": self.trials,
            "min_uncovered": self.min_uncovered,
            "mean_uncovered": self.mean_uncovered,
            "chi_cn": self.chi_cn,
            "r_reference": self.r_reference,
        }
