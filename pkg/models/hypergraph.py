"""
Hypergraph and coloring models.
Hyperedges are stored as sorted arrays of member ids; colorings as integer arrays with 0 = blank.
"""

from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from models.errors import ParameterError

# Reserved marker for an intentionally uncolored vertex; never a color
BLANK = 0


class Hypergraph:
    """Vertex universe 0..universe-1 plus a list of nonempty hyperedges (duplicates allowed)."""

    __slots__ = ("_universe", "_edges", "_incidence")

    def __init__(self, universe: int, edges: Iterable[Iterable[int]]):
        if universe < 0:
            raise ParameterError("universe", f"must be nonnegative, got {universe}")
        members = []
        for index, edge in enumerate(edges):
            if isinstance(edge, np.ndarray):
                arr = np.unique(edge.astype(np.int64))
            else:
                arr = np.unique(np.fromiter((int(x) for x in edge), dtype=np.int64))
            if arr.size == 0:
                raise ParameterError("edges", f"edge {index} is empty")
            if arr[0] < 0 or arr[-1] >= universe:
                raise ParameterError("edges", f"edge {index} has a member outside 0..{universe - 1}")
            arr.flags.writeable = False
            members.append(arr)
        self._universe = int(universe)
        self._edges = tuple(members)
        self._incidence = None

    @property
    def universe(self) -> int:
        return self._universe

    @property
    def edges(self) -> tuple[np.ndarray, ...]:
        return self._edges

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def edge_set(self, index: int) -> frozenset[int]:
        return frozenset(self._edges[index].tolist())

    def degrees(self) -> np.ndarray:
        """d_H(v) for every vertex of the universe."""
        if not self._edges:
            return np.zeros(self._universe, dtype=np.int64)
        return np.bincount(np.concatenate(self._edges), minlength=self._universe)

    def incidence(self) -> list[np.ndarray]:
        """For every vertex, the ascending indices of the edges containing it."""
        if self._incidence is None:
            buckets: list[list[int]] = [[] for _ in range(self._universe)]
            for index, edge in enumerate(self._edges):
                for v in edge.tolist():
                    buckets[v].append(index)
            self._incidence = [np.array(b, dtype=np.int64) for b in buckets]
        return self._incidence

    def covered_vertices(self) -> np.ndarray:
        return np.nonzero(self.degrees() > 0)[0]

    def restrict(self, vertices: Iterable[int]) -> tuple["Hypergraph", np.ndarray, tuple[int, ...]]:
        """
        Traces E ∩ S on S = vertices, relabeled to 0..|S|-1 in ascending order.
        Returns the trace hypergraph, the original id of every new vertex and the indices of
        the edges whose trace is nonempty; empty traces are dropped.
        """
        labels = np.unique(np.fromiter((int(v) for v in vertices), dtype=np.int64))
        if labels.size and (labels[0] < 0 or labels[-1] >= self._universe):
            raise ParameterError("vertices", f"vertex outside 0..{self._universe - 1}")
        traces, kept = [], []
        for index, edge in enumerate(self._edges):
            inside = edge[np.isin(edge, labels)]
            if inside.size:
                traces.append(np.searchsorted(labels, inside))
                kept.append(index)
        return Hypergraph(len(labels), traces), labels, tuple(kept)

    def duplicate_edges(self) -> list[tuple[int, int]]:
        """Pairs (first, later) of edge indices with identical member sets."""
        first_seen: dict[bytes, int] = {}
        pairs = []
        for index, edge in enumerate(self._edges):
            key = edge.tobytes()
            if key in first_seen:
                pairs.append((first_seen[key], index))
            else:
                first_seen[key] = index
        return pairs

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self._universe == other._universe and len(self._edges) == len(other._edges) and all(
            np.array_equal(a, b) for a, b in zip(self._edges, other._edges)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"<Hypergraph universe={self._universe} edges={len(self._edges)}>"

    def to_dict(self) -> dict[str, Any]:
        sizes = [len(e) for e in self._edges]
        return {
            "universe": self._universe,
            "edges": len(self._edges),
            "min_edge_size": min(sizes) if sizes else 0,
            "max_edge_size": max(sizes) if sizes else 0,
            "duplicate_edges": len(self.duplicate_edges()),
        }


class Coloring:
    """
    Total or partial map vertex -> color. Colors are positive integers; BLANK (0) marks
    an uncolored vertex. Immutable.
    """

    __slots__ = ("_values",)

    def __init__(self, values: Sequence[int] | np.ndarray):
        arr = np.array(values, dtype=np.int64).reshape(-1)
        if arr.size and arr.min() < 0:
            raise ParameterError("assignment", "colors must be positive integers or blank")
        arr.flags.writeable = False
        self._values = arr

    @classmethod
    def blank(cls, n: int) -> "Coloring":
        return cls(np.zeros(n, dtype=np.int64))

    @classmethod
    def from_mapping(cls, n: int, mapping: Mapping[int, int]) -> "Coloring":
        arr = np.zeros(n, dtype=np.int64)
        for v, color in mapping.items():
            if not 0 <= v < n:
                raise ParameterError("assignment", f"vertex {v} outside 0..{n - 1}")
            arr[v] = color
        return cls(arr)

    @property
    def n(self) -> int:
        return len(self._values)

    def as_array(self) -> np.ndarray:
        return self._values

    def to_list(self) -> list[int]:
        return self._values.tolist()

    def __getitem__(self, v: int) -> int:
        return int(self._values[v])

    def __len__(self) -> int:
        return len(self._values)

    def colors_used(self) -> list[int]:
        used = np.unique(self._values)
        return used[used != BLANK].tolist()

    @property
    def num_colors(self) -> int:
        return len(self.colors_used())

    def blanks(self) -> list[int]:
        return np.nonzero(self._values == BLANK)[0].tolist()

    @property
    def is_total(self) -> bool:
        return not bool(np.any(self._values == BLANK))

    def color_classes(self) -> dict[int, list[int]]:
        classes: dict[int, list[int]] = {}
        for v, color in enumerate(self._values.tolist()):
            if color != BLANK:
                classes.setdefault(color, []).append(v)
        return classes

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Coloring):
            return NotImplemented
        return np.array_equal(self._values, other._values)

    __hash__ = None

    def __repr__(self) -> str:
        return f"<Coloring n={self.n} colors={self.num_colors} blanks={len(self.blanks())}>"

    def to_dict(self) -> dict[str, Any]:
        return {"n": self.n, "colors": self.num_colors, "blank": len(self.blanks())}
