"""
Parameter models for the randomized constructions.
Each parameter set is a frozen dataclass validated on construction; derived thresholds are properties
so they always agree with the fields they come from.
"""

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

import numpy as np

from conf.config import (
    CFCN_C,
    CFCN_TRIALS_PER_ROUND,
    DEFAULT_SEED,
    RESAMPLE_ROUNDS_FLOOR,
    RESAMPLE_ROUNDS_PER_EDGE,
    WINDOW_MAX_RESAMPLE_ROUNDS,
)
from models.errors import ParameterError
from utils.helpers import ceil_real, ln_pow

if TYPE_CHECKING:
    from models.graph import Graph
    from models.hypergraph import Hypergraph


def default_resample_cap(num_edges: int) -> int:
    return max(RESAMPLE_ROUNDS_FLOOR, RESAMPLE_ROUNDS_PER_EDGE * num_edges)


@dataclass(frozen=True)
class LLLParams:
    """
    Parameters of the near-uniform colorer: edge sizes lie in [r, ell*r], every edge meets at
    most `gamma` others, and colors come from 1..palette_size with palette_size >= ceil(e*ell*r).
    """

    ell: float
    r: float
    gamma: int
    palette_size: int
    max_resample_rounds: int
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if not self.ell >= 1:
            raise ParameterError("ell", f"must be >= 1, got {self.ell}")
        if not self.r > 0:
            raise ParameterError("r", f"must be positive, got {self.r}")
        if self.gamma < 0:
            raise ParameterError("gamma", f"must be nonnegative, got {self.gamma}")
        if self.palette_size < self.min_palette:
            raise ParameterError("palette_size", f"must be >= ceil(e*ell*r) = {self.min_palette}")
        if self.max_resample_rounds < 1:
            raise ParameterError("max_resample_rounds", "must be a positive integer")

    @property
    def min_palette(self) -> int:
        return ceil_real(math.e * self.ell * self.r)

    @classmethod
    def create(cls, ell: float, r: float, gamma: int, num_edges: int, seed: int = DEFAULT_SEED,
               max_resample_rounds: int | None = None) -> "LLLParams":
        """Smallest admissible palette and the default per-edge round cap."""
        if max_resample_rounds is None:
            max_resample_rounds = default_resample_cap(num_edges)
        return cls(
            ell=float(ell),
            r=float(r),
            gamma=int(gamma),
            palette_size=ceil_real(math.e * ell * r),
            max_resample_rounds=int(max_resample_rounds),
            seed=int(seed),
        )

    @classmethod
    def for_hypergraph(cls, H: "Hypergraph", ell: float, r: float, seed: int = DEFAULT_SEED,
                       max_resample_rounds: int | None = None) -> "LLLParams":
        """Parameters with gamma measured on H."""
        from utils.hypergraph_core import max_edge_intersections

        return cls.create(ell, r, max_edge_intersections(H), H.num_edges, seed, max_resample_rounds)

    def to_dict(self) -> dict[str, Any]:
        return {
            "ell": self.ell,
            "r": self.r,
            "gamma": self.gamma,
            "palette_size": self.palette_size,
            "max_resample_rounds": self.max_resample_rounds,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class CfcnParams:
    k: int
    c: float = CFCN_C
    trials_per_round: int = CFCN_TRIALS_PER_ROUND
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if not isinstance(self.k, (int, np.integer)) or self.k < 2:
            raise ParameterError("k", f"must be an integer >= 2, got {self.k!r}")
        if not 0 < self.c <= 1:
            raise ParameterError("c", f"must lie in (0, 1], got {self.c}")
        if self.trials_per_round < 2:
            raise ParameterError("trials_per_round", f"must be >= 2, got {self.trials_per_round}")

    @property
    def max_exponent(self) -> int:
        """floor(log2 k): the sampled exponent i ranges over 0..max_exponent."""
        return int(self.k).bit_length() - 1

    @property
    def expected_fraction(self) -> float:
        """Lower bound on the expected satisfied fraction of a round."""
        return self.c / (self.max_exponent + 1)

    def color_bound(self, n: int) -> int:
        """ceil(ln n * log2 k / c) round colors plus the shared leftover color."""
        if n <= 1:
            return 1
        return ceil_real(math.log(n) * math.log2(self.k) / self.c) + 1

    def to_dict(self) -> dict[str, Any]:
        return {"k": self.k, "c": self.c, "trials_per_round": self.trials_per_round, "seed": self.seed}


@dataclass(frozen=True)
class MinDegParams:
    """
    Window-sampling parameters for graphs with minimum degree >= c*Δ / ln^eps(Δ).
    All logarithms are natural.
    """

    c: float
    eps: float
    delta: int
    max_resample_rounds: int = WINDOW_MAX_RESAMPLE_ROUNDS
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if not self.c > 0:
            raise ParameterError("c", f"must be positive, got {self.c}")
        if not 0 <= self.eps <= 1:
            raise ParameterError("eps", f"must lie in [0, 1], got {self.eps}")
        if self.delta < 2:
            raise ParameterError("delta", f"maximum degree must be >= 2, got {self.delta}")
        if self.max_resample_rounds < 1:
            raise ParameterError("max_resample_rounds", "must be a positive integer")
        if not self.window_lo < self.window_hi:
            raise ParameterError("c", f"window is empty: {self.window_lo:.2f} >= {self.window_hi:.2f}")

    @classmethod
    def for_graph(cls, G: "Graph", c: float | None = None, eps: float = 0.0,
                  seed: int = DEFAULT_SEED, max_resample_rounds: int = WINDOW_MAX_RESAMPLE_ROUNDS) -> "MinDegParams":
        """
        Parameters for G. Without an explicit c, the largest constant the min-degree
        condition admits is used: c = δ * ln^eps(Δ) / Δ.
        """
        delta = G.max_degree
        if c is None:
            if delta < 2:
                raise ParameterError("delta", f"maximum degree must be >= 2, got {delta}")
            c = G.min_degree * ln_pow(delta, eps) / delta
        return cls(c=float(c), eps=float(eps), delta=delta, max_resample_rounds=max_resample_rounds, seed=seed)

    @property
    def log_term(self) -> float:
        """ln^{1+eps}(2Δ)"""
        return ln_pow(2 * self.delta, 1 + self.eps)

    @property
    def sample_prob(self) -> float:
        return min(1.0, 144 * self.log_term / (self.c * self.delta))

    @property
    def window_lo(self) -> float:
        return 108 * math.log(2 * self.delta)

    @property
    def window_hi(self) -> float:
        return (180 / self.c) * self.log_term

    @property
    def min_degree_required(self) -> float:
        return self.c * self.delta / ln_pow(self.delta, self.eps)

    @property
    def lll_r(self) -> float:
        return 108 * math.log(2 * self.delta)

    @property
    def lll_ell(self) -> float:
        return max(1.0, (5 / (3 * self.c)) * ln_pow(2 * self.delta, self.eps))

    @property
    def color_bound(self) -> int:
        """ceil((490/c) ln^{1+eps}(2Δ)) plus the fresh color of V \\ A."""
        return ceil_real((490 / self.c) * self.log_term) + 1

    def to_dict(self) -> dict[str, Any]:
        return {
            "c": self.c,
            "eps": self.eps,
            "delta": self.delta,
            "sample_prob": self.sample_prob,
            "window_lo": self.window_lo,
            "window_hi": self.window_hi,
            "max_resample_rounds": self.max_resample_rounds,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class LayeredParams:
    n: int
    eps: float
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 3:
            raise ParameterError("n", f"must be an integer >= 3, got {self.n!r}")
        if not 0 < self.eps < 0.003:
            raise ParameterError("eps", f"must lie in (0, 0.003), got {self.eps}")

    @property
    def eps0(self) -> float:
        return self.eps / 3

    @property
    def layers(self) -> int:
        return max(1, int(math.floor(math.log(self.n))))

    def to_dict(self) -> dict[str, Any]:
        return {"n": self.n, "eps": self.eps, "eps0": self.eps0, "layers": self.layers, "seed": self.seed}


@dataclass(frozen=True, eq=False)
class LayerMeta:
    """Per-vertex layer (1-based) and weight w_x = (1 - eps0)^layer."""

    layer: np.ndarray
    weight: np.ndarray
    eps0: float
    n: int

    @property
    def num_layers(self) -> int:
        return int(self.layer.max()) if self.n else 0

    @property
    def r_colors(self) -> int:
        """floor(eps0^3 * ln^2 n)"""
        return int(math.floor(self.eps0 ** 3 * math.log(self.n) ** 2))

    def layer_sizes(self) -> np.ndarray:
        """Sizes of layers 1..L (index 0 is layer 1)."""
        return np.bincount(self.layer, minlength=self.num_layers + 1)[1:]

    def layer_weights(self) -> np.ndarray:
        return (1 - self.eps0) ** np.arange(1, self.num_layers + 1)

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "eps0": self.eps0,
            "layers": self.num_layers,
            "layer_sizes": self.layer_sizes().tolist(),
            "r_colors": self.r_colors,
        }
