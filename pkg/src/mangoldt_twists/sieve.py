"""Segmented sieve for the von Mangoldt function.

Primes in each segment come from an odd-only sieve of Eratosthenes with base
primes up to sqrt(hi).  Higher prime powers p**m (m >= 2) are few, so they
are enumerated once per call and merged into each segment rather than being
handled in the marking loop.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator, TypeVar

import numpy as np

from .errors import DomainError, ResourceError
from .summation import exact_partials, pairwise_reduce, partials_value

MAX_N = 1 << 50
DEFAULT_SEGMENT = 1 << 20
DEFAULT_MEMORY_BUDGET = 1 << 30  # bytes

T = TypeVar("T")


@dataclass(frozen=True)
class IntegerRange:
    """The half-open integer range (lo, hi]."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.hi > MAX_N:
            raise DomainError(f"hi={self.hi} exceeds 2**50")
        if self.lo < 0:
            raise DomainError(f"lo={self.lo} must be >= 0")
        if self.lo >= self.hi:
            raise DomainError(f"empty range ({self.lo}, {self.hi}]")

    @property
    def width(self) -> int:
        return self.hi - self.lo


@dataclass(frozen=True)
class LambdaSegment:
    """Nonzero values of Lambda on one segment, ``n`` ascending."""

    n: np.ndarray
    lam: np.ndarray


class LambdaStream:
    """Lazy, ordered stream of (n, Lambda(n)) for the n with Lambda(n) != 0."""

    def __init__(self, segments: Callable[[], Iterator[LambdaSegment]]):
        self._segments = segments

    def segments(self) -> Iterator[LambdaSegment]:
        return self._segments()

    def __iter__(self) -> Iterator[tuple[int, float]]:
        for seg in self._segments():
            yield from zip(seg.n.tolist(), seg.lam.tolist())

    def to_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        segs = list(self._segments())
        if not segs:
            return np.empty(0, dtype=np.int64), np.empty(0)
        return np.concatenate([s.n for s in segs]), np.concatenate([s.lam for s in segs])


def base_primes(limit: int) -> np.ndarray:
    """All primes <= limit (plain sieve)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[:2] = False
    is_p[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if is_p[p]:
            is_p[p * p::2 * p] = False
    return np.nonzero(is_p)[0].astype(np.int64)


def prime_powers(hi: int, primes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """p**m <= hi with m >= 2, sorted, together with log p."""
    vals: list[int] = []
    bases: list[int] = []
    for p in primes.tolist():
        q = p * p
        if q > hi:
            break
        while q <= hi:
            vals.append(q)
            bases.append(p)
            q *= p
    if not vals:
        return np.empty(0, dtype=np.int64), np.empty(0)
    vals_a = np.array(vals, dtype=np.int64)
    order = np.argsort(vals_a, kind="stable")
    return vals_a[order], np.log(np.array(bases, dtype=float)[order])


class _Plan:
    """Shared state for sieving one range."""

    def __init__(self, rng: IntegerRange, segment_size: int):
        self.rng = rng
        self.segment_size = segment_size - segment_size % 2
        self.primes = base_primes(math.isqrt(rng.hi))
        self.odd_primes = self.primes[1:] if self.primes.size else self.primes
        self.pp_vals, self.pp_logs = prime_powers(rng.hi, self.primes)
        # segments start at even numbers so slot i holds start + 2i + 1
        first = (rng.lo + 1) & ~1
        self.starts = list(range(first, rng.hi + 1, self.segment_size))

    def segment(self, start: int) -> LambdaSegment:
        lo, hi = self.rng.lo, self.rng.hi
        stop = min(start + self.segment_size, hi + 1)  # exclusive
        # odd numbers start+1, start+3, ..., < stop
        n_odd = (stop - start) // 2
        flags = np.ones(n_odd, dtype=bool)
        top = stop - 1
        root = math.isqrt(top)
        for p in self.odd_primes.tolist():
            if p > root:
                break
            m = max(p * p, ((start + p - 1) // p) * p)
            if m % 2 == 0:
                m += p
            idx = (m - start - 1) // 2
            if idx < n_odd:
                flags[idx::p] = False
        odd = start + 1 + 2 * np.nonzero(flags)[0].astype(np.int64)
        if start == 0 and odd.size and odd[0] == 1:
            odd = odd[1:]
        keep = odd > lo
        primes = odd[keep]
        parts_n = [primes]
        parts_l = [np.log(primes.astype(float))]
        if start <= 2 < stop and lo < 2:
            parts_n.append(np.array([2], dtype=np.int64))
            parts_l.append(np.array([math.log(2.0)]))
        a = np.searchsorted(self.pp_vals, max(start, lo + 1), side="left")
        b = np.searchsorted(self.pp_vals, stop, side="left")
        if b > a:
            parts_n.append(self.pp_vals[a:b])
            parts_l.append(self.pp_logs[a:b])
        n = np.concatenate(parts_n)
        lam = np.concatenate(parts_l)
        order = np.argsort(n, kind="stable")
        return LambdaSegment(n[order], lam[order])


def ordered_map(fn: Callable[[T], object], items: list[T], workers: int) -> Iterator:
    """``map`` preserving order; runs on a thread pool when workers > 1."""
    if workers <= 1 or len(items) <= 1:
        for it in items:
            yield fn(it)
        return
    window = 2 * workers
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for i in range(0, len(items), window):
            yield from pool.map(fn, items[i:i + window])


def _check_budget(rng: IntegerRange, segment_size: int, memory_budget: int) -> None:
    if segment_size < 64:
        raise DomainError(f"segment_size={segment_size} must be >= 64")
    # base sieve (1 byte per integer up to sqrt) + one odd-only segment + prime powers
    need = math.isqrt(rng.hi) + 1 + segment_size // 2 + 16 * segment_size // 2
    if need > memory_budget:
        raise ResourceError(f"sieving ({rng.lo}, {rng.hi}] with segment_size={segment_size} "
                            f"needs ~{need} bytes, budget is {memory_budget}")


def sieve_lambda(lo: int, hi: int, segment_size: int = DEFAULT_SEGMENT, workers: int = 1,
                 memory_budget: int = DEFAULT_MEMORY_BUDGET) -> LambdaStream:
    """Stream the nonzero values of Lambda(n) for lo < n <= hi."""
    rng = IntegerRange(int(lo), int(hi))
    _check_budget(rng, segment_size, memory_budget)
    plan = _Plan(rng, segment_size)
    return LambdaStream(lambda: ordered_map(plan.segment, plan.starts, workers))


def lambda_single(n: int) -> float:
    """Lambda(n) by trial division, O(sqrt n); a test oracle."""
    n = int(n)
    if n < 1:
        raise DomainError("Lambda(n) needs n >= 1")
    if n > MAX_N:
        raise DomainError(f"n={n} exceeds 2**50")
    if n == 1:
        return 0.0
    p = n
    if n % 2 == 0:
        p = 2
    else:
        d = 3
        while d * d <= n:
            if n % d == 0:
                p = d
                break
            d += 2
    m = n
    while m % p == 0:
        m //= p
    return math.log(p) if m == 1 else 0.0


def chebyshev_psi(x: float, segment_size: int = DEFAULT_SEGMENT, workers: int = 1) -> float:
    """psi(x) = sum of Lambda(n) over n <= x, correctly rounded."""
    if x < 0:
        raise DomainError("psi(x) needs x >= 0")
    n = math.floor(x)
    if n < 2:
        return 0.0
    stream = sieve_lambda(0, n, segment_size, workers)
    return partials_value(pairwise_reduce([exact_partials(s.lam) for s in stream.segments()]))


def psi_mass(x: float, segment_size: int = DEFAULT_SEGMENT, workers: int = 1) -> float:
    """psi(2x) - psi(x) summed directly over (floor x, floor 2x]."""
    lo, hi = math.floor(x), math.floor(2 * x)
    if hi <= lo:
        return 0.0
    stream = sieve_lambda(lo, hi, segment_size, workers)
    return partials_value(pairwise_reduce([exact_partials(s.lam) for s in stream.segments()]))
