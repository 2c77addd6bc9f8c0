"""Vectorized double-double arithmetic, just enough to reduce c * n**theta mod 1.

A double-double is a pair ``(hi, lo)`` of float64 arrays with ``|lo| <=
ulp(hi)/2``; it carries about 106 bits.  Algorithms follow the usual
Dekker/Knuth error-free transformations.
"""
from __future__ import annotations

import math
from decimal import Decimal, localcontext
from fractions import Fraction

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1


def _dd_const(value: Fraction | Decimal) -> tuple[float, float]:
    hi = float(value)
    if isinstance(value, Decimal):
        lo = float(value - Decimal(hi))
    else:
        lo = float(value - Fraction(hi))
    return hi, lo


with localcontext() as _ctx:
    _ctx.prec = 50
    LN2 = _dd_const(Decimal(2).ln())

_EXP_REDUCE = 8  # argument scaled by 2**-8 before the Taylor series
_INV_FACT = [_dd_const(Fraction(1, math.factorial(j))) for j in range(2, 12)]


def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def quick_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def _split(a):
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def dd_add(ah, al, bh, bl):
    s, e = two_sum(ah, bh)
    t, f = two_sum(al, bl)
    e = e + t
    s, e = quick_two_sum(s, e)
    e = e + f
    return quick_two_sum(s, e)


def dd_add_d(ah, al, b):
    s, e = two_sum(ah, b)
    return quick_two_sum(s, e + al)


def dd_mul(ah, al, bh, bl):
    p, e = two_prod(ah, bh)
    e = e + (ah * bl + al * bh)
    return quick_two_sum(p, e)


def dd_mul_d(ah, al, b):
    p, e = two_prod(ah, b)
    e = e + al * b
    return quick_two_sum(p, e)


def dd_expm1_small(rh, rl):
    """exp(r) - 1 for |r| < 2e-3, as a double-double."""
    # r + r^2 * (1/2! + r/3! + ... + r^9/11!), Horner from the top
    sh = np.full_like(rh, _INV_FACT[-1][0])
    sl = np.full_like(rh, _INV_FACT[-1][1])
    for ch, cl in reversed(_INV_FACT[:-1]):
        sh, sl = dd_mul(sh, sl, rh, rl)
        sh, sl = dd_add(sh, sl, np.full_like(rh, ch), np.full_like(rh, cl))
    r2h, r2l = dd_mul(rh, rl, rh, rl)
    th, tl = dd_mul(r2h, r2l, sh, sl)
    return dd_add(rh, rl, th, tl)


def dd_exp(ah, al):
    """exp of a double-double array (no overflow handling; |a| < 700)."""
    ah = np.asarray(ah, dtype=float)
    al = np.asarray(al, dtype=float)
    k = np.rint(ah / LN2[0])
    # r = a - k*ln2, exact products
    ph, pl = two_prod(k, LN2[0])
    rh, rl = dd_add(ah, al, -ph, -pl)
    rh, rl = dd_add_d(rh, rl, -k * LN2[1])
    scale = 2.0 ** -_EXP_REDUCE
    rh, rl = rh * scale, rl * scale
    mh, ml = dd_expm1_small(rh, rl)
    # (1+m)^2 - 1 = 2m + m^2, repeated
    for _ in range(_EXP_REDUCE):
        sqh, sql = dd_mul(mh, ml, mh, ml)
        mh, ml = dd_add(2.0 * mh, 2.0 * ml, sqh, sql)
    eh, el = dd_add_d(mh, ml, 1.0)
    ki = k.astype(np.int64)
    return np.ldexp(eh, ki), np.ldexp(el, ki)


def dd_log_int(n):
    """Natural log of exact integers (as float64, n < 2**53) in double-double."""
    n = np.asarray(n, dtype=float)
    y = np.log(n)
    eh, el = dd_exp(y, np.zeros_like(y))
    # log n = y + log(n / e^y) ~ y + (n - e^y) / e^y; the residual is O(1e-16)
    dh, dl = dd_add(n, np.zeros_like(n), -eh, -el)
    corr = (dh + dl) / eh
    return quick_two_sum(y, corr)


def power_frac(n, theta: float, c: float):
    """c * n**theta reduced to [-1/2, 1/2], computed in double-double.

    ``n`` must hold exact integers below 2**53.
    """
    lh, ll = dd_log_int(n)
    th, tl = dd_mul_d(lh, ll, theta)
    ph, pl = dd_exp(th, tl)
    qh, ql = dd_mul_d(ph, pl, c)
    whole = np.rint(qh)
    rh, rl = dd_add_d(qh, ql, -whole)
    r = rh + rl
    return r - np.rint(r)
