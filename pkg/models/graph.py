"""
Graph models for the conflict-free coloring lab.
Contains the immutable Graph type, the generator family descriptor and the neighborhood mode enum.
"""

import enum
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping

import networkx as nx
import numpy as np

from models.errors import ParameterError


# Open neighborhoods N(v) or closed neighborhoods N[v]
class NeighborhoodMode(enum.Enum):
    open = "open"
    closed = "closed"


# Every graph family the generator suite knows about
class FamilyTag(enum.Enum):
    complete = "complete"
    star = "star"
    path = "path"
    cycle = "cycle"
    subdivided_complete = "subdivided_complete"
    line_graph_of = "line_graph_of"
    gnp = "gnp"
    geometric = "geometric"
    layered = "layered"


class Graph:
    """
    Simple undirected graph on vertices 0..n-1.
    Adjacency is stored CSR-style: the neighbors of v are indices[indptr[v]:indptr[v+1]],
    sorted ascending. Instances are immutable and safe to share between threads.
    """

    __slots__ = ("_n", "_indptr", "_indices")

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray):
        self._n = int(n)
        self._indptr = indptr
        self._indices = indices
        self._indptr.flags.writeable = False
        self._indices.flags.writeable = False

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]] | np.ndarray) -> "Graph":
        """Build a graph from an edge list; duplicate edges collapse, self-loops are rejected."""
        if n < 0:
            raise ParameterError("n", f"vertex count must be nonnegative, got {n}")
        if isinstance(edges, np.ndarray):
            arr = edges.astype(np.int64, copy=False).reshape(-1, 2)
        else:
            arr = np.array(list(edges), dtype=np.int64).reshape(-1, 2)

        if arr.size:
            if arr.min() < 0 or arr.max() >= n:
                raise ParameterError("edges", f"vertex id out of range 0..{n - 1}")
            loops = np.nonzero(arr[:, 0] == arr[:, 1])[0]
            if loops.size:
                raise ParameterError("edges", f"self-loop at vertex {int(arr[loops[0], 0])}")
            arr = np.unique(np.sort(arr, axis=1), axis=0)

        src = np.concatenate([arr[:, 0], arr[:, 1]])
        dst = np.concatenate([arr[:, 1], arr[:, 0]])
        order = np.lexsort((dst, src))
        indices = dst[order].astype(np.int64)
        counts = np.bincount(src, minlength=n) if n else np.zeros(0, dtype=np.int64)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        return cls(n, indptr, indices)

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        """Relabel the nodes of a networkx graph to 0..n-1 in sorted order."""
        relabeled = nx.convert_node_labels_to_integers(g, ordering="sorted")
        return cls.from_edges(relabeled.number_of_nodes(), list(relabeled.edges()))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self._n))
        g.add_edges_from(self.edges())
        return g

    # --- elementary queries -------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def num_edges(self) -> int:
        return len(self._indices) // 2

    def vertices(self) -> range:
        return range(self._n)

    def neighbors(self, v: int) -> np.ndarray:
        return self._indices[self._indptr[v]:self._indptr[v + 1]]

    def neighbor_set(self, v: int) -> frozenset[int]:
        return frozenset(self.neighbors(v).tolist())

    def closed_neighbor_set(self, v: int) -> frozenset[int]:
        return self.neighbor_set(v) | {v}

    def adjacency_sets(self) -> list[frozenset[int]]:
        return [self.neighbor_set(v) for v in range(self._n)]

    def degree(self, v: int) -> int:
        return int(self._indptr[v + 1] - self._indptr[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self._indptr)

    @property
    def max_degree(self) -> int:
        return int(self.degrees().max()) if self._n else 0

    @property
    def min_degree(self) -> int:
        return int(self.degrees().min()) if self._n else 0

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        i = int(np.searchsorted(nb, v))
        return i < len(nb) and int(nb[i]) == v

    def isolated_vertices(self) -> list[int]:
        return np.nonzero(self.degrees() == 0)[0].tolist()

    def edge_array(self) -> np.ndarray:
        """All edges as an (m, 2) array with u < v, sorted lexicographically."""
        src = np.repeat(np.arange(self._n, dtype=np.int64), self.degrees())
        keep = src < self._indices
        return np.stack([src[keep], self._indices[keep]], axis=1)

    def edges(self) -> list[tuple[int, int]]:
        return [(int(u), int(v)) for u, v in self.edge_array()]

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", np.ndarray]:
        """
        Induced subgraph on `vertices`, relabeled 0..|S|-1 in ascending id order.
        Returns the subgraph and `labels`, where labels[i] is the original id of local vertex i.
        """
        labels = np.unique(np.fromiter(vertices, dtype=np.int64))
        position = np.full(self._n, -1, dtype=np.int64)
        position[labels] = np.arange(len(labels))
        edges = self.edge_array()
        local = position[edges]
        keep = (local[:, 0] >= 0) & (local[:, 1] >= 0)
        return Graph.from_edges(len(labels), local[keep]), labels

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self._n == other._n
            and np.array_equal(self._indptr, other._indptr)
            and np.array_equal(self._indices, other._indices)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"<Graph n={self._n} m={self.num_edges}>"

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self._n,
            "m": self.num_edges,
            "max_degree": self.max_degree,
            "min_degree": self.min_degree,
        }


def _require_int(params: Mapping[str, Any], name: str, minimum: int) -> None:
    value = params.get(name)
    if not isinstance(value, (int, np.integer)) or isinstance(value, bool) or value < minimum:
        raise ParameterError(name, f"must be an integer >= {minimum}, got {value!r}")


def _require_real(params: Mapping[str, Any], name: str, lo: float, hi: float) -> None:
    value = params.get(name)
    if not isinstance(value, (int, float)) or isinstance(value, bool) or not lo <= value <= hi:
        raise ParameterError(name, f"must be a number in [{lo}, {hi}], got {value!r}")


@dataclass(frozen=True)
class GraphFamily:
    """Descriptor of a named graph family; params are validated for the tag on construction."""

    tag: FamilyTag
    params: Mapping[str, Any] = field(default_factory=dict)
    seed: int | None = None

    def __post_init__(self):
        p = self.params
        if self.tag in (FamilyTag.complete, FamilyTag.path, FamilyTag.subdivided_complete):
            _require_int(p, "n", 1)
        elif self.tag == FamilyTag.cycle:
            _require_int(p, "n", 3)
        elif self.tag == FamilyTag.star:
            _require_int(p, "k", 1)
        elif self.tag == FamilyTag.gnp:
            _require_int(p, "n", 0)
            _require_real(p, "p", 0.0, 1.0)
        elif self.tag == FamilyTag.geometric:
            _require_int(p, "n", 0)
            _require_real(p, "radius", 0.0, 2.0)
        elif self.tag == FamilyTag.layered:
            _require_int(p, "n", 3)
            _require_real(p, "eps", 0.0, 0.003)
        elif self.tag == FamilyTag.line_graph_of:
            if not isinstance(p.get("base"), GraphFamily):
                raise ParameterError("base", "line_graph_of needs a base GraphFamily")

    def to_dict(self) -> dict[str, Any]:
        params = {
            key: (value.to_dict() if isinstance(value, GraphFamily) else value)
            for key, value in self.params.items()
        }
        return {"tag": self.tag.value, "params": params, "seed": self.seed}
