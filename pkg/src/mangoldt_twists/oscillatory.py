"""Oscillatory integrals of the explicit formula and their a priori bounds.

After the substitution v = u^theta every integral has the form

    (1/theta) * integral over [x^theta, (2x)^theta] of v^(beta/theta - 1) e(f(v)) dv,
    f(v) = k alpha v + gamma / (2 pi theta) * log v,

and is evaluated by Gauss-Legendre panels that each span at most half a
cycle of f, with the interval split at the stationary point of f when it is
interior.  The per-panel error estimate compares one 16-point panel with the
same rule on its two halves.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .errors import DomainError, QuadratureError
from .phase_sum import SumParams

TWO_PI = 2.0 * math.pi
EPS = np.finfo(float).eps
GL_ORDER = 16
_GL_X, _GL_W = np.polynomial.legendre.leggauss(GL_ORDER)

# stand-ins for the unstated implied constants, used by the audit checks
MAIN_TERM_AUDIT = 5.0
CERTIFICATE_AUDIT = 8.0
TRIVIAL_AUDIT = 1.01

DEFAULT_MAX_PANELS = 1 << 22


@dataclass(frozen=True)
class OscIntegralSpec:
    """Integral of u^(rho-1) e(k alpha u^theta) over [x, 2x] with rho = beta + i gamma."""

    beta: float
    gamma: float
    params: SumParams

    def __post_init__(self):
        if not 0.0 < self.beta <= 1.0:
            raise DomainError(f"beta={self.beta} must lie in (0, 1]")
        if not math.isfinite(self.gamma):
            raise DomainError("gamma must be finite")


@dataclass(frozen=True)
class PhaseFunction:
    """f(v) = slope * v + log_coeff * log v on [lo, hi], in cycles."""

    slope: float
    log_coeff: float
    lo: float
    hi: float

    def __post_init__(self):
        if not 0.0 < self.lo < self.hi:
            raise DomainError("phase domain must be a positive interval")

    @classmethod
    def for_zero(cls, params: SumParams, gamma: float) -> "PhaseFunction":
        th = params.theta
        return cls(params.coeff, gamma / (TWO_PI * th), params.x ** th, (2 * params.x) ** th)

    def value(self, v):
        return self.slope * v + self.log_coeff * np.log(v)

    def derivative(self, v):
        return self.slope + self.log_coeff / v

    def second_derivative(self, v):
        return -self.log_coeff / (np.asarray(v) ** 2)

    def cycles(self) -> float:
        """Total variation of f over the domain."""
        v = stationary_point(self)
        pts = [self.lo, self.hi] if v is None else [self.lo, v, self.hi]
        return float(sum(abs(self.value(q) - self.value(p)) for p, q in zip(pts, pts[1:])))


class Regime(str, Enum):
    FIRST = "first-derivative-test"
    SECOND = "second-derivative-test"
    TRIVIAL = "trivial"


@dataclass(frozen=True)
class BoundCertificate:
    value: float
    regime: Regime


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error: float
    panels: int
    depth: int


def stationary_point(phase: PhaseFunction) -> float | None:
    """v* with f'(v*) = 0, if it lies in the domain."""
    if phase.slope == 0.0 or phase.log_coeff == 0.0:
        return None
    v = -phase.log_coeff / phase.slope
    if phase.lo <= v <= phase.hi:
        return v
    return None


def _equal_phase_points(phase: PhaseFunction, p: float, q: float, n: int) -> np.ndarray:
    """Interior points splitting [p, q] into n pieces of equal phase change.

    f is monotone on [p, q]; g = sign * f is increasing and is formed with the
    same floating-point operations for (gamma, alpha) and (-gamma, -alpha).
    """
    fp, fq = phase.value(p), phase.value(q)
    sgn = 1.0 if fq >= fp else -1.0
    gp, gq = sgn * fp, sgn * fq
    j = np.arange(1, n, dtype=float)
    target = gp + (j / n) * (gq - gp)
    lo = np.full(j.size, p)
    hi = np.full(j.size, q)
    for _ in range(64):
        mid = 0.5 * (lo + hi)
        below = sgn * phase.value(mid) < target
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
        if np.all(hi - lo <= 4 * EPS * hi):
            break
    return 0.5 * (lo + hi)


def panel_breaks(phase: PhaseFunction, density: float = 1.0,
                 max_panels: int = DEFAULT_MAX_PANELS) -> np.ndarray:
    """Breakpoints with at most 1/(2 density) cycle of f per panel.

    Near a stationary point the spacing follows the curvature scale by
    construction: equal phase steps of 1/2 around v* are sqrt(1/|f''|) wide.
    """
    v = stationary_point(phase)
    pts = [phase.lo, phase.hi] if v is None or v in (phase.lo, phase.hi) else [phase.lo, v, phase.hi]
    total = phase.cycles()
    if 2 * density * total > max_panels:
        raise QuadratureError(
            f"{total:.3g} cycles need more than max_panels={max_panels}",
            {"cycles": total, "max_panels": max_panels})
    out = [np.array([phase.lo])]
    for p, q in zip(pts, pts[1:]):
        n = max(1, math.ceil(2.0 * density * abs(phase.value(q) - phase.value(p))))
        if n > 1:
            out.append(_equal_phase_points(phase, p, q, n))
        out.append(np.array([q]))
    return np.concatenate(out)


def _gl(func: Callable[[np.ndarray], np.ndarray], a: np.ndarray, b: np.ndarray):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    v = mid[:, None] + half[:, None] * _GL_X[None, :]
    vals = func(v)
    return (vals @ _GL_W) * half, (np.abs(vals) @ _GL_W) * half


def roundoff_floor(phase_scale: float) -> float:
    """Relative (to the L1 norm) error level set by rounding in a phase of size phase_scale cycles."""
    return EPS * (64.0 + 8.0 * math.pi * phase_scale)


def adaptive_gauss(func: Callable[[np.ndarray], np.ndarray], breaks: np.ndarray, rtol: float,
                   floor: float = 64 * EPS, max_depth: int = 24,
                   max_panels: int = DEFAULT_MAX_PANELS) -> QuadratureResult:
    """Panelwise 16-point Gauss-Legendre with halving refinement.

    The estimate for a panel is |G(panel) - G(left half) - G(right half)|.
    Panels whose estimate exceeds their share of the tolerance are split.
    The tolerance is rtol * |I|, floored at ``floor`` times the integral of
    |func| so that heavy cancellation does not demand sub-roundoff accuracy.
    """
    a = np.asarray(breaks[:-1], dtype=float)
    b = np.asarray(breaks[1:], dtype=float)
    accepted: list[np.ndarray] = []
    acc_err = 0.0
    acc_l1 = 0.0
    tol = 0.0
    err_sum = math.inf
    for depth in range(max_depth):
        m = 0.5 * (a + b)
        coarse, _ = _gl(func, a, b)
        left, l1a = _gl(func, a, m)
        right, l1b = _gl(func, m, b)
        fine = left + right
        err = np.abs(fine - coarse)
        total = complex(np.concatenate(accepted + [fine]).sum())
        l1 = acc_l1 + float((l1a + l1b).sum())
        tol = max(rtol * abs(total), floor * l1)
        err_sum = acc_err + float(err.sum())
        if err_sum <= tol:
            n_panels = sum(p.size for p in accepted) + fine.size
            return QuadratureResult(total, err_sum, n_panels, depth)
        share = 0.5 * max(tol - acc_err, 0.0) / err.size
        bad = err > share
        good = ~bad
        accepted.append(fine[good])
        acc_err += float(err[good].sum())
        acc_l1 += float((l1a + l1b)[good].sum())
        a, b = np.concatenate([a[bad], m[bad]]), np.concatenate([m[bad], b[bad]])
        if a.size + sum(p.size for p in accepted) > max_panels:
            break
    raise QuadratureError(
        f"quadrature did not converge: estimated error {err_sum:.3e} > tolerance {tol:.3e}",
        {"panels": int(a.size + sum(p.size for p in accepted)), "error": err_sum,
         "tolerance": tol, "depth": depth})


def _zero_phase_value(beta: float, x: float) -> complex:
    # (1/theta) * integral of v^(beta/theta - 1) = ((2x)^beta - x^beta) / beta
    return complex(((2 * x) ** beta - x ** beta) / beta)


def zero_term_quadrature(spec: OscIntegralSpec, rtol: float = 1e-9,
                         density: float = 1.0) -> QuadratureResult:
    params = spec.params
    th = params.theta
    if params.coeff == 0.0 and spec.gamma == 0.0:
        return QuadratureResult(_zero_phase_value(spec.beta, params.x), 0.0, 0, 0)
    phase = PhaseFunction.for_zero(params, spec.gamma)
    power = spec.beta / th - 1.0
    inv_th = 1.0 / th

    def integrand(v):
        f = phase.value(v)
        ang = TWO_PI * (f - np.rint(f))
        return (inv_th * v ** power) * (np.cos(ang) + 1j * np.sin(ang))

    scale = abs(phase.slope) * phase.hi + abs(phase.log_coeff) * max(abs(math.log(phase.lo)),
                                                                      abs(math.log(phase.hi)))
    return adaptive_gauss(integrand, panel_breaks(phase, density), rtol, roundoff_floor(scale))


def zero_term_integral(spec: OscIntegralSpec, rtol: float = 1e-9, density: float = 1.0) -> complex:
    """Integral of u^(rho-1) e(k alpha u^theta) over [x, 2x], rho = beta + i gamma."""
    return zero_term_quadrature(spec, rtol, density).value


def main_term_integral(params: SumParams, rtol: float = 1e-10, density: float = 1.0) -> complex:
    """Integral of e(k alpha u^theta) over [x, 2x]."""
    return zero_term_quadrature(OscIntegralSpec(1.0, 0.0, params), rtol, density).value


def _uniform_nodes(lo: float, hi: float, panels: int):
    """16-point nodes/weights on `panels` equal panels and on their halves."""
    edges = np.linspace(lo, hi, panels + 1)
    a, b = edges[:-1], edges[1:]
    m = 0.5 * (a + b)

    def nodes(a, b):
        half = 0.5 * (b - a)
        v = (0.5 * (a + b))[:, None] + half[:, None] * _GL_X[None, :]
        return v, half[:, None] * _GL_W[None, :]

    vc, wc = nodes(a, b)
    vl, wl = nodes(a, m)
    vr, wr = nodes(m, b)
    vf = np.concatenate([vl, vr], axis=1)
    wf = np.concatenate([wl, wr], axis=1)
    return vc, wc, vf, wf


def _pair_block(gammas, params, beta, panels):
    th = params.theta
    lo, hi = params.x ** th, (2 * params.x) ** th
    vc, wc, vf, wf = _uniform_nodes(lo, hi, panels)
    out = []
    for v, w in ((vc, wc), (vf, wf)):
        f = params.coeff * v
        ang = TWO_PI * (f - np.rint(f))
        base = (w * v ** (beta / th - 1.0) / th) * (np.cos(ang) + 1j * np.sin(ang))
        logv = np.log(v) / th
        osc = 2.0 * np.cos(gammas[:, None, None] * logv[None, :, :])
        per_panel = np.einsum("zpj,pj->zp", osc, base.real) + 1j * np.einsum("zpj,pj->zp", osc, base.imag)
        out.append((per_panel, 2.0 * np.abs(base).sum()))
    (coarse, _), (fine, l1) = out
    value = fine.sum(axis=1)
    err = np.abs(fine - coarse).sum(axis=1)
    return value, err, l1


def pair_term_integrals(gammas, params: SumParams, beta: float = 0.5, rtol: float = 1e-9,
                        density: float = 1.0, max_block_nodes: int = 1 << 21,
                        max_depth: int = 8) -> np.ndarray:
    """Zero terms for rho and its conjugate combined, for each gamma >= 0.

    Returns I(beta, gamma) + I(beta, -gamma), i.e. the integral of
    u^(beta-1) * 2 cos(gamma log u) * e(k alpha u^theta) over [x, 2x].  Zeros
    are processed in blocks sharing a uniform panel grid sized for the
    block's largest ordinate.
    """
    g_all = np.asarray(gammas, dtype=float)
    out = np.empty(g_all.size, dtype=complex)
    th = params.theta
    lo, hi = params.x ** th, (2 * params.x) ** th
    width = hi - lo

    def n_panels(gmax, dens):
        freq = abs(params.coeff) + abs(gmax) / (TWO_PI * th * lo)
        return max(1, math.ceil(2.0 * dens * freq * width))

    i = 0
    while i < g_all.size:
        m = max(1, max_block_nodes // (48 * n_panels(g_all[i], density)))
        block = g_all[i:i + m]
        m = max(1, min(m, max_block_nodes // (48 * n_panels(block.max(), density))))
        block = g_all[i:i + m]
        pending = np.arange(block.size)
        dens = density
        vals = np.empty(block.size, dtype=complex)
        for depth in range(max_depth):
            sub = block[pending]
            v, err, l1 = _pair_block(sub, params, beta, n_panels(np.abs(sub).max(), dens))
            scale = abs(params.coeff) * hi + np.abs(sub) / (TWO_PI * th) * abs(math.log(hi))
            ok = err <= np.maximum(rtol * np.abs(v), roundoff_floor(scale) * l1)
            vals[pending[ok]] = v[ok]
            pending = pending[~ok]
            if pending.size == 0:
                break
            dens *= 2.0
        else:
            raise QuadratureError(
                f"pair integrals did not converge for gamma={block[pending][:3]}",
                {"gammas": block[pending].tolist(), "density": dens})
        out[i:i + block.size] = vals
        i += block.size
    return out


def derivative_test_bound(spec: OscIntegralSpec) -> BoundCertificate:
    """A priori size of the zero-term integral from the derivative tests.

    Below the threshold 4(1 + theta pi k|alpha| (2x)^theta) on |gamma| the
    curvature bound x^beta / sqrt(1 + theta k|alpha| x^theta) applies, above
    it the monotonicity bound x^beta / (1 + |gamma|).  At the threshold both
    apply and the smaller is returned.  Everything is capped by x^beta.
    """
    p = spec.params
    if p.coeff == 0.0:
        raise DomainError("derivative-test certificates need alpha != 0")
    th, x = p.theta, p.x
    ka = abs(p.coeff)
    g = abs(spec.gamma)
    trivial = x ** spec.beta
    threshold = 4.0 * (1.0 + th * math.pi * ka * (2 * x) ** th)
    second = trivial / math.sqrt(1.0 + th * ka * x ** th)
    first = trivial / (1.0 + g)
    if g < threshold:
        value, regime = second, Regime.SECOND
    elif g > threshold:
        value, regime = first, Regime.FIRST
    else:
        value, regime = (first, Regime.FIRST) if first <= second else (second, Regime.SECOND)
    if value >= trivial:
        return BoundCertificate(trivial, Regime.TRIVIAL)
    return BoundCertificate(value, regime)
