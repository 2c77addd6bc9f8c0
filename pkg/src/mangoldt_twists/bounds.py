"""Bound envelopes for S(k, x, theta) and the exponent bookkeeping behind them.

Every envelope is the literal right-hand side of a ``<<`` estimate with the
implied constant set to 1 and the free constants (c0, epsilon, log powers)
supplied explicitly through :class:`BoundConstants`.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass
from enum import Enum

import numpy as np

from .errors import DomainError, PreconditionError
from .phase_sum import SumParams

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
# rigorous zero-free-region constant of Vinogradov-Korobov type
C0_VINOGRADOV_KOROBOV = 1.0 / 57.54
ENVELOPE_COLUMNS = ("name", "x", "k", "theta", "c0", "epsilon", "value")


class DensityExponent(Enum):
    """Constant exponent A in N(sigma, T) << T^(A (1 - sigma)) log^C T."""

    HUXLEY = 12.0 / 5.0
    HYPOTHESIS = 2.0

    @property
    def A(self) -> float:
        return self.value


class EnvelopeName(str, Enum):
    REN_GENERAL = "ren_general"
    REN_SMALL_THETA = "ren_small_theta"
    REN_ZDH = "ren_zdh"
    THEOREM_1_1 = "theorem_1_1"
    THEOREM_1_2_ZDH = "theorem_1_2_zdh"
    MURTY_SRINIVAS = "murty_srinivas"
    VINOGRADOV = "vinogradov"


@dataclass(frozen=True)
class BoundConstants:
    c0: float = 0.05
    epsilon: float = 0.01
    ren_log_power: float = 1.0     # free log power A > 0 of the ren_general envelope
    small_theta_log_power: float = 11.0
    density_log_power: float = 1.0  # B; the bound carries log^(B+2)

    def __post_init__(self):
        if self.c0 < 0:
            raise DomainError("c0 must be >= 0")
        if not 0.0 < self.epsilon < 1.0 / 3.0:
            raise DomainError("epsilon must lie in (0, 1/3)")

    @classmethod
    def vinogradov_korobov(cls, **kw) -> "BoundConstants":
        return cls(c0=C0_VINOGRADOV_KOROBOV, **kw)


@dataclass(frozen=True)
class BoundEnvelope:
    name: EnvelopeName
    value: float
    params: SumParams
    constants: BoundConstants

    def as_csv_row(self) -> list[str]:
        p, c = self.params, self.constants
        return [self.name.value, repr(float(p.x)), str(p.k), repr(float(p.theta)),
                repr(float(c.c0)), repr(float(c.epsilon)), repr(float(self.value))]


def sigma0(T: float, c0: float) -> float:
    """Edge of the zero-free region, 1 - c0 (log T)^(-2/3) (log log T)^(-1/3), in [1/2, 1)."""
    if T < 16:
        raise DomainError(f"T={T} must be >= 16")
    L = math.log(T)
    s = 1.0 - c0 * L ** (-2.0 / 3.0) * math.log(L) ** (-1.0 / 3.0)
    return min(max(s, 0.5), math.nextafter(1.0, 0.0))


def g_sigma(sigma: float, theta: float, A: DensityExponent) -> float:
    return sigma + theta * A.A * (1.0 - sigma) - theta / 2.0


def _log_h(sigma, params: SumParams, A: DensityExponent):
    # log of k^(A(1-sigma) - 1/2) x^g(sigma)
    lk, lx = math.log(params.k), math.log(params.x)
    return (A.A * (1.0 - sigma) - 0.5) * lk + (sigma + params.theta * A.A * (1.0 - sigma)
                                                - params.theta / 2.0) * lx


def density_base(params: SumParams, A: DensityExponent) -> float:
    """k^A x^(A theta - 1); sup over sigma sits at sigma0 iff this is < 1."""
    return params.k ** A.A * params.x ** (A.A * params.theta - 1.0)


def sup_over_sigma_analytic(params: SumParams, A: DensityExponent, c0: float) -> tuple[float, float]:
    """Endpoint answer from k^(-1/2) x^(1-theta/2) * base^(1-sigma)."""
    s0 = sigma0(params.x, c0)
    b = density_base(params, A)
    s = s0 if b <= 1.0 else 0.5
    return s, params.k ** -0.5 * params.x ** (1.0 - params.theta / 2.0) * b ** (1.0 - s)


def sup_over_sigma(params: SumParams, A: DensityExponent = DensityExponent.HUXLEY,
                   c0: float = 0.05, step: float = 1e-4, rtol: float = 1e-12) -> tuple[float, float]:
    """Maximize k^(A(1-sigma)-1/2) x^g(sigma) over [1/2, sigma0(x)].

    Grid search plus golden-section refinement; the result is checked against
    the closed-form endpoint answer.
    """
    s0 = sigma0(params.x, c0)
    grid = np.append(np.arange(0.5, s0, step), s0)
    vals = _log_h(grid, params, A)
    i = int(np.argmax(vals))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, grid.size - 1)]
    f = lambda s: float(_log_h(s, params, A))  # noqa: E731
    c, d = hi - GOLDEN * (hi - lo), lo + GOLDEN * (hi - lo)
    fc, fd = f(c), f(d)
    for _ in range(200):
        if hi - lo <= 4 * np.finfo(float).eps:
            break
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - GOLDEN * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + GOLDEN * (hi - lo)
            fd = f(d)
    cands = [(float(vals[i]), float(grid[i])), (f(lo), lo), (f(hi), hi)]
    best_log, best_s = max(cands)
    value = math.exp(best_log)
    s_an, v_an = sup_over_sigma_analytic(params, A, c0)
    if abs(value - v_an) > rtol * abs(v_an):
        raise ArithmeticError(f"numeric sup {value!r} disagrees with endpoint value {v_an!r}")
    return best_s, value


def admissible_k_max(x: float, theta: float, epsilon: float,
                     A: DensityExponent = DensityExponent.HUXLEY) -> float:
    """x^(1/A - theta - epsilon), or 1 when the exponent is not positive."""
    e = 1.0 / A.A - theta - epsilon
    return x ** e if e > 0 else 1.0


def _require(ok: bool, name: EnvelopeName, condition: str) -> None:
    if not ok:
        raise PreconditionError(f"{name.value} requires {condition}")


def envelope(name: EnvelopeName | str, params: SumParams,
             constants: BoundConstants = BoundConstants()) -> BoundEnvelope:
    name = EnvelopeName(name)
    x, k, th = params.x, params.k, params.theta
    c = constants
    L = math.log(x)
    gain = math.exp(-c.c0 * L ** (1.0 / 3.0 - c.epsilon))
    if name is EnvelopeName.REN_GENERAL:
        v = (k ** 0.5 * x ** ((1 + th) / 2) + x ** 0.8 + k ** -0.5 * x ** (1 - th / 2)) * L ** c.ren_log_power
    elif name is EnvelopeName.REN_SMALL_THETA:
        _require(th <= 0.5 and k < x ** (0.5 - th), name, "theta <= 1/2 and k < x^(1/2 - theta)")
        v = (k ** 0.1 * x ** (0.75 + th / 10) + k ** -0.5 * x ** (1 - th / 2)) * L ** c.small_theta_log_power
    elif name is EnvelopeName.REN_ZDH:
        v = (k ** 0.5 * x ** ((1 + th) / 2) + k ** -0.5 * x ** (1 - th / 2)) * L ** (c.density_log_power + 2)
    elif name is EnvelopeName.THEOREM_1_1:
        _require(th < 5.0 / 12.0 and k < admissible_k_max(x, th, c.epsilon, DensityExponent.HUXLEY),
                 name, "0 < theta < 5/12 and 1 <= k < x^(5/12 - theta - epsilon)")
        v = k ** -0.5 * x ** (1 - th / 2) * gain
    elif name is EnvelopeName.THEOREM_1_2_ZDH:
        _require(th < 0.5 and k < admissible_k_max(x, th, c.epsilon, DensityExponent.HYPOTHESIS),
                 name, "0 < theta < 1/2 and 1 <= k < x^(1/2 - theta - epsilon)")
        v = k ** -0.5 * x ** (1 - th / 2) * gain
    elif name is EnvelopeName.MURTY_SRINIVAS:
        v = k ** 0.125 * x ** ((7 + th) / 8) * math.log(x * k ** 3)
    else:
        _require(th == 0.5 and k <= x ** 0.1, name, "theta = 1/2 and k <= x^(1/10)")
        v = k ** 0.25 * x ** (0.875 + c.epsilon)
    return BoundEnvelope(name, v, params, constants)


def all_envelopes(params: SumParams, constants: BoundConstants = BoundConstants()
                  ) -> dict[EnvelopeName, BoundEnvelope | None]:
    """Every envelope, with None where the parameter range is not covered."""
    out: dict[EnvelopeName, BoundEnvelope | None] = {}
    for name in EnvelopeName:
        try:
            out[name] = envelope(name, params, constants)
        except PreconditionError:
            out[name] = None
    return out


def envelopes_csv(envs: list[BoundEnvelope]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(ENVELOPE_COLUMNS)
    for e in envs:
        w.writerow(e.as_csv_row())
    return buf.getvalue()


def constants_dict(c: BoundConstants) -> dict:
    return asdict(c)
