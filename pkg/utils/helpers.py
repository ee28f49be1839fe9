"""
Helper utility functions for the conflict-free coloring lab.
Contains seeded random streams, threshold arithmetic and small formatting helpers.
"""

import math
from typing import Iterable

import numpy as np


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """
    Function to derive a reproducible random stream.
    The same (seed, *stream) always yields the same generator; distinct stream ids are independent.
    """
    return np.random.default_rng([int(seed) & 0xFFFFFFFFFFFFFFFF, *(int(s) for s in stream)])


def ln_pow(x: float, exponent: float) -> float:
    """ln(x) ** exponent, with ln(x)**0 == 1 even where ln(x) == 0."""
    if exponent == 0:
        return 1.0
    return math.log(x) ** exponent


def ceil_real(x: float) -> int:
    """Ceiling that ignores floating-point fuzz just above an integer."""
    nearest = round(x)
    if abs(x - nearest) < 1e-9:
        return int(nearest)
    return math.ceil(x)


def sorted_ids(vertices: Iterable[int]) -> list[int]:
    return sorted(int(v) for v in vertices)


def dense_relabel(colors: np.ndarray, offset: int = 0) -> tuple[np.ndarray, int]:
    """
    Relabel the non-blank colors of `colors` to offset+1..offset+q in ascending order of the
    original color, keeping blanks at 0. Returns the relabeled array and q.
    """
    used = np.unique(colors[colors > 0])
    out = np.zeros_like(colors)
    if used.size:
        lookup = np.searchsorted(used, colors[colors > 0])
        out[colors > 0] = lookup + 1 + offset
    return out, int(used.size)
