"""Direct evaluation of S(k, x, theta) = sum over x < n <= 2x of Lambda(n) e(k alpha n^theta)."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import ddouble
from .errors import DomainError, ResourceError
from .sieve import DEFAULT_SEGMENT, MAX_N, ordered_map, sieve_lambda
from .summation import exact_partials, pairwise_reduce, partials_value

TWO_PI = 2.0 * math.pi
# above this phase magnitude n^theta is formed in double-double
DD_THRESHOLD = float(1 << 20)
DEFAULT_MAX_WIDTH = 1 << 36


@dataclass(frozen=True)
class SumParams:
    """Parameters (x, k, alpha, theta) of the sum.

    ``degenerate=True`` admits alpha = 0, which turns the sum into
    psi(2x) - psi(x) and is used as an end-to-end check.
    """

    x: float
    k: int
    alpha: float
    theta: float
    degenerate: bool = False

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.alpha) and math.isfinite(self.theta)):
            raise DomainError("parameters must be finite")
        if self.x < 2 and not (self.degenerate and self.x > 0):
            raise DomainError(f"x={self.x} must be >= 2")
        if int(self.k) != self.k or self.k < 1:
            raise DomainError(f"k={self.k} must be a positive integer")
        if not 0.0 < self.theta < 1.0:
            raise DomainError(f"theta={self.theta} must lie in (0, 1)")
        if self.alpha == 0.0 and not self.degenerate:
            raise DomainError("alpha = 0 is only allowed with degenerate=True")
        if 2 * self.x > MAX_N:
            raise DomainError("2x exceeds 2**50")

    @property
    def n_lo(self) -> int:
        """Smallest n in the range, floor(x) + 1."""
        return math.floor(self.x) + 1

    @property
    def n_hi(self) -> int:
        return math.floor(2 * self.x)

    @property
    def coeff(self) -> float:
        """k * alpha, the coefficient of n^theta in the phase."""
        return self.k * self.alpha

    @property
    def max_phase(self) -> float:
        return abs(self.coeff) * (2 * self.x) ** self.theta

    def with_alpha(self, alpha: float) -> "SumParams":
        return replace(self, alpha=alpha)


def phase_fraction(n: np.ndarray, params: SumParams) -> np.ndarray:
    """k alpha n^theta reduced to [-1/2, 1/2]."""
    n = np.asarray(n)
    c = params.coeff
    if c == 0.0:
        return np.zeros(n.shape)
    if params.max_phase > DD_THRESHOLD:
        return ddouble.power_frac(n.astype(float), params.theta, c)
    p = c * np.power(n.astype(float), params.theta)
    return p - np.rint(p)


def phase_array(n: np.ndarray, params: SumParams) -> np.ndarray:
    """e(k alpha n^theta) for an array of integers."""
    ang = TWO_PI * phase_fraction(n, params)
    return np.cos(ang) + 1j * np.sin(ang)


def phase(n: int, params: SumParams) -> complex:
    return complex(phase_array(np.array([n], dtype=np.int64), params)[0])


def _segment_partials(seg, params):
    ang = TWO_PI * phase_fraction(seg.n, params)
    return exact_partials(seg.lam * np.cos(ang)), exact_partials(seg.lam * np.sin(ang))


def direct_sum(params: SumParams, segment_size: int = DEFAULT_SEGMENT, workers: int = 1,
               max_width: int = DEFAULT_MAX_WIDTH) -> complex:
    """S(k, x, theta) by direct summation.

    Every term is accumulated exactly and the segments are merged in a fixed
    pairwise tree, so the result is the correctly rounded sum of the terms
    and does not depend on ``segment_size`` or ``workers``.
    """
    lo, hi = params.n_lo - 1, params.n_hi
    if hi <= lo:
        return 0j
    if hi - lo > max_width:
        raise ResourceError(f"range width {hi - lo} exceeds max_width={max_width}")
    stream = sieve_lambda(lo, hi, segment_size, workers)
    segs = list(stream.segments())
    parts = list(ordered_map(lambda s: _segment_partials(s, params), segs, workers))
    re = partials_value(pairwise_reduce([p[0] for p in parts]))
    im = partials_value(pairwise_reduce([p[1] for p in parts]))
    return complex(re, im)
