"""Zero-sum approximation of S(k, x, theta) from the truncated explicit formula.

    S ~ integral of e(k alpha u^theta) over [x, 2x]
        - sum over |gamma| <= T of integral of u^(rho-1) e(k alpha u^theta) over [x, 2x]

with remainder of size (1 + k|alpha| x^theta) x log^2(xT) / T.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CoverageError, DomainError
from .oscillatory import (OscIntegralSpec, main_term_integral, pair_term_integrals,
                          zero_term_integral)
from .phase_sum import SumParams, direct_sum
from .summation import exact_sum
from .zeros import ZeroTable, count_up_to

REMAINDER_AUDIT = 10.0
REPORT_COLUMNS = ("T", "direct_re", "direct_im", "approx_re", "approx_im", "abs_diff",
                  "error_scale", "ratio")


@dataclass(frozen=True)
class ExplicitApprox:
    main: complex
    zero_sum: complex
    T: float
    error_scale: float
    n_zeros: int

    @property
    def approx(self) -> complex:
        return self.main - self.zero_sum


def error_scale(params: SumParams, T: float, zeros: ZeroTable | None = None) -> float:
    """Remainder scale of the truncated formula, plus the ordinate-rounding term.

    With a table of finitely many decimals each of the N(T) zero pairs is
    off by up to 10^-digits in gamma; that shifts the phase of its integral by
    at most 10^-digits * log 2 / (2 pi theta) cycles.
    """
    x = params.x
    if not 2.0 <= T <= x:
        raise DomainError(f"T={T} must satisfy 2 <= T <= x={x}")
    scale = (1.0 + abs(params.coeff) * x ** params.theta) * x * math.log(x * T) ** 2 / T
    if zeros is not None and zeros.source_digits is not None:
        n = count_up_to(zeros, T) if T <= zeros.max_ordinate else len(zeros)
        scale += n * x * 10.0 ** -zeros.source_digits * math.log(2.0) / (2.0 * math.pi * params.theta)
    return scale


def zero_terms(params: SumParams, gammas: np.ndarray) -> np.ndarray:
    """Combined contribution of rho = 1/2 + i gamma and its conjugate, per gamma."""
    if params.coeff == 0.0:
        raise DomainError("the explicit-formula route needs alpha != 0")
    return pair_term_integrals(np.asarray(gammas, dtype=float), params, beta=0.5)


def naive_zero_sum(params: SumParams, gammas: np.ndarray) -> complex:
    """Two-sided zero sum with every +gamma and -gamma integrated separately."""
    terms = []
    for g in np.asarray(gammas, dtype=float):
        terms.append(zero_term_integral(OscIntegralSpec(0.5, g, params)))
        terms.append(zero_term_integral(OscIntegralSpec(0.5, -g, params)))
    return complex(exact_sum(t.real for t in terms), exact_sum(t.imag for t in terms))


def _ascending_sum(terms: np.ndarray) -> complex:
    return complex(exact_sum(terms.real), exact_sum(terms.imag))


def _check_coverage(zeros: ZeroTable, T: float) -> None:
    if T > zeros.max_ordinate:
        raise CoverageError(f"T={T} exceeds table coverage (max ordinate {zeros.max_ordinate})")


def approximate_sum(params: SumParams, zeros: ZeroTable, T: float) -> ExplicitApprox:
    _check_coverage(zeros, T)
    gammas = zeros.up_to(T)
    main = main_term_integral(params)
    zs = _ascending_sum(zero_terms(params, gammas)) if gammas.size else 0j
    return ExplicitApprox(main, zs, T, error_scale(params, T, zeros), int(gammas.size))


@dataclass(frozen=True)
class ComparisonRow:
    T: float
    direct: complex
    approx: complex
    abs_diff: float
    error_scale: float

    @property
    def ratio(self) -> float:
        return self.abs_diff / self.error_scale

    def as_csv_row(self) -> list[str]:
        vals = (self.T, self.direct.real, self.direct.imag, self.approx.real, self.approx.imag,
                self.abs_diff, self.error_scale, self.ratio)
        return [repr(float(v)) for v in vals]


@dataclass
class ComparisonReport:
    params: SumParams
    rows: list[ComparisonRow] = field(default_factory=list)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(REPORT_COLUMNS)
        for row in self.rows:
            w.writerow(row.as_csv_row())
        return buf.getvalue()


def compare(params: SumParams, zeros: ZeroTable, T_list, direct: complex | None = None,
            workers: int = 1) -> ComparisonReport:
    """Direct sum against the zero-sum approximation at each truncation height.

    The direct sum and all zero integrals up to max(T_list) are computed once.
    """
    T_list = [float(T) for T in T_list]
    report = ComparisonReport(params)
    if not T_list:
        return report
    for T in T_list:
        _check_coverage(zeros, T)
        error_scale(params, T, zeros)  # validates the range before the expensive part
    if direct is None:
        direct = direct_sum(params, workers=workers)
    gammas = zeros.up_to(max(T_list))
    terms = zero_terms(params, gammas) if gammas.size else np.empty(0, dtype=complex)
    main = main_term_integral(params)
    for T in T_list:
        n = count_up_to(zeros, T)
        zs = _ascending_sum(terms[:n]) if n else 0j
        approx = main - zs
        report.rows.append(ComparisonRow(T, direct, approx, abs(direct - approx),
                                         error_scale(params, T, zeros)))
    return report
