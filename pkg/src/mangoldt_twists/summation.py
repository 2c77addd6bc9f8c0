"""Exact floating-point accumulation.

A set of doubles is summed into a short list of non-overlapping partials
whose exact sum equals the exact sum of the inputs.  Merging partials is
therefore associative, which is what makes segment reductions independent of
segment size and thread count down to the last bit.
"""
from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np


def exact_partials(values: Iterable[float]) -> list[float]:
    """Non-overlapping partials, largest first, with exactly the input sum.

    Each round takes the correctly rounded sum of what is left, so the first
    partial is already the correctly rounded total.
    """
    if isinstance(values, np.ndarray):
        vals = values.astype(float, copy=False).ravel().tolist()
    else:
        vals = [float(v) for v in values]
    parts: list[float] = []
    while True:
        s = math.fsum(vals)
        if not math.isfinite(s):
            raise OverflowError("non-finite value in exact summation")
        if s == 0.0:
            return parts
        parts.append(s)
        vals.append(-s)


def merge_partials(left: Sequence[float], right: Sequence[float]) -> list[float]:
    return exact_partials([*left, *right])


def pairwise_reduce(blocks: Sequence[Sequence[float]]) -> list[float]:
    """Fixed-shape pairwise tree over per-segment partials."""
    if not blocks:
        return []
    level = [list(b) for b in blocks]
    while len(level) > 1:
        nxt = [merge_partials(level[i], level[i + 1]) for i in range(0, len(level) - 1, 2)]
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
    return level[0]


def partials_value(parts: Sequence[float]) -> float:
    return parts[0] if parts else 0.0


def exact_sum(values: Iterable[float]) -> float:
    """Correctly rounded sum."""
    return partials_value(exact_partials(values))
