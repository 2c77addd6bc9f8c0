import json
import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mangoldt_twists.errors import DomainError, QuadratureError
from mangoldt_twists.oscillatory import (CERTIFICATE_AUDIT, MAIN_TERM_AUDIT, TRIVIAL_AUDIT,
                                         OscIntegralSpec,
                                         PhaseFunction, Regime, adaptive_gauss,
                                         derivative_test_bound, main_term_integral, panel_breaks,
                                         pair_term_integrals, stationary_point, zero_term_integral,
                                         zero_term_quadrature)
from mangoldt_twists.phase_sum import SumParams
from oracles import simpson_oracle

ORACLES = json.loads((Path(__file__).parent / "data" / "quadrature_oracles.json").read_text())["cases"]


def _value(case):
    p = SumParams(case["x"], case["k"], case["alpha"], case["theta"])
    if case["kind"] == "main":
        return main_term_integral(p)
    return zero_term_integral(OscIntegralSpec(case["beta"], case["gamma"], p))


@pytest.mark.parametrize("case", ORACLES, ids=lambda c: f"{c['kind']}-g{c['gamma']:g}-th{c['theta']}-x{c['x']:g}")
def test_frozen_dense_oracles(case):
    want = complex(case["re"], case["im"])
    assert abs(_value(case) - want) <= 1e-8 * abs(want)


def test_closed_form_without_oscillation():
    p = SumParams(100, 1, 0.0, 0.5, degenerate=True)
    v = zero_term_integral(OscIntegralSpec(0.5, 0.0, p))
    assert v == pytest.approx(2 * (200**0.5 - 10), rel=1e-15)
    assert main_term_integral(p) == pytest.approx(100.0, rel=1e-15)


def test_pure_log_phase_has_closed_form():
    # alpha = 0: integral of u^(rho - 1) = ((2x)^rho - x^rho) / rho
    p = SumParams(1000, 1, 0.0, 0.5, degenerate=True)
    rho = complex(0.5, 14.134725)
    want = ((2000 + 0j) ** rho - (1000 + 0j) ** rho) / rho
    assert abs(zero_term_integral(OscIntegralSpec(0.5, 14.134725, p)) - want) < 1e-12 * abs(want)


def test_stationary_point():
    p = SumParams(1000, 1, 1.0, 0.5)
    gamma = -2 * math.pi * 0.5 * 40.0  # v* = 40, inside [sqrt 1000, sqrt 2000]
    ph = PhaseFunction.for_zero(p, gamma)
    v = stationary_point(ph)
    assert v == pytest.approx(40.0, rel=1e-15)
    assert ph.derivative(v) == pytest.approx(0.0, abs=1e-14)
    assert stationary_point(PhaseFunction.for_zero(p, 10.0)) is None
    br = panel_breaks(ph)
    assert np.any(br == v)
    assert np.all(np.diff(br) > 0)


def test_panels_hold_at_most_half_a_cycle():
    p = SumParams(1e4, 3, 0.7, 0.5)
    ph = PhaseFunction.for_zero(p, -500.0)
    br = panel_breaks(ph)
    assert np.max(np.abs(np.diff(ph.value(br)))) <= 0.5 + 1e-9


def test_stationary_case_matches_oracle():
    p = SumParams(1000, 1, 1.0, 0.5)
    gamma = -2 * math.pi * 0.5 * 40.0
    got = zero_term_integral(OscIntegralSpec(0.5, gamma, p))
    want = simpson_oracle(0.5, gamma, 1000, 1.0, 0.5)
    assert abs(got - want) < 1e-9 * abs(want)


def test_conjugation():
    p = SumParams(5000, 2, 0.3, 0.4)
    a = zero_term_integral(OscIntegralSpec(0.7, 123.4, p))
    b = zero_term_integral(OscIntegralSpec(0.7, -123.4, p.with_alpha(-0.3)))
    assert b == a.conjugate()


@pytest.mark.parametrize("gamma", [0.0, 14.134725, 300.0, 5000.0])
def test_density_doubling_invariance(gamma):
    spec = OscIntegralSpec(0.5, gamma, SumParams(1e4, 1, 1.0, 1 / 3))
    a = zero_term_integral(spec)
    b = zero_term_integral(spec, density=2.0)
    assert abs(a - b) <= 1e-9 * abs(a)


def test_pair_terms_match_separate_integrals():
    p = SumParams(1e4, 1, 1.0, 1 / 3)
    g = np.array([14.134725142, 21.022039639, 236.524229666, 1000.0, 9877.782654006])
    pairs = pair_term_integrals(g, p)
    for gi, v in zip(g, pairs):
        want = zero_term_integral(OscIntegralSpec(0.5, gi, p)) + zero_term_integral(OscIntegralSpec(0.5, -gi, p))
        assert abs(v - want) <= 1e-8 * max(abs(want), 1.0)


def test_quadrature_reports_diagnostics():
    r = zero_term_quadrature(OscIntegralSpec(0.5, 100.0, SumParams(1e3, 1, 1.0, 0.5)))
    assert r.panels > 0 and r.error >= 0
    with pytest.raises(QuadratureError) as exc:
        adaptive_gauss(lambda v: np.sin(1e6 * v), np.array([0.0, 1.0]), 1e-14, max_depth=2)
    assert "tolerance" in exc.value.diagnostics


def test_too_many_cycles_is_an_error():
    ph = PhaseFunction.for_zero(SumParams(1e6, 1, 1e6, 0.5), 0.0)
    with pytest.raises(QuadratureError):
        panel_breaks(ph, max_panels=1000)


def test_certificate_regimes():
    p = SumParams(1e4, 1, 1.0, 0.5)
    assert derivative_test_bound(OscIntegralSpec(0.5, 10.0, p)).regime is Regime.SECOND
    big = derivative_test_bound(OscIntegralSpec(0.5, 1e5, p))
    assert big.regime is Regime.FIRST and big.value == pytest.approx(100 / (1 + 1e5))
    tiny = SumParams(2, 1, 1e-18, 0.5)  # curvature gain rounds away
    assert derivative_test_bound(OscIntegralSpec(0.5, 0.0, tiny)).regime is Regime.TRIVIAL
    with pytest.raises(DomainError):
        derivative_test_bound(OscIntegralSpec(0.5, 1.0, SumParams(10, 1, 0.0, 0.5, degenerate=True)))


def test_spec_validation():
    p = SumParams(10, 1, 1.0, 0.5)
    with pytest.raises(DomainError):
        OscIntegralSpec(0.0, 1.0, p)
    with pytest.raises(DomainError):
        OscIntegralSpec(1.5, 1.0, p)
    with pytest.raises(DomainError):
        OscIntegralSpec(0.5, math.inf, p)


spec_strategy = st.builds(
    lambda lx, th, k, la, sa, beta, lg, sg: OscIntegralSpec(
        beta, sg * 10**lg, SumParams(10**lx, k, sa * 10**la, th)),
    lx=st.floats(1, 4), th=st.floats(0.1, 0.9), k=st.integers(1, 5), la=st.floats(-1, 0.5),
    sa=st.sampled_from([-1, 1]), beta=st.floats(0.5, 1.0), lg=st.floats(-1, 3.5),
    sg=st.sampled_from([-1, 1]))


@settings(max_examples=40, deadline=None)
@given(spec_strategy)
def test_trivial_and_certificate_bounds(spec):
    v = abs(zero_term_integral(spec))
    assert v <= TRIVIAL_AUDIT * spec.params.x ** spec.beta
    assert v <= CERTIFICATE_AUDIT * derivative_test_bound(spec).value


def test_documented_examples():
    # unit-length interval with no phase
    assert main_term_integral(SumParams(1, 1, 0.0, 0.5, degenerate=True)) == 1.0
    assert zero_term_integral(OscIntegralSpec(1.0, 0.0, SumParams(37.5, 1, 0.0, 0.3, degenerate=True))) == 37.5
    c = derivative_test_bound(OscIntegralSpec(0.5, 0.0, SumParams(1e4, 1, 1.0, 0.5)))
    assert c.regime is Regime.SECOND and c.value == pytest.approx(100 / math.sqrt(51), rel=1e-15)
    c = derivative_test_bound(OscIntegralSpec(0.5, -1e6, SumParams(10, 1, 1.0, 0.5)))
    assert c.regime is Regime.FIRST and c.value == pytest.approx(10**0.5 / (1 + 1e6), rel=1e-15)


def test_stationary_point_examples():
    # gamma = -pi gives v* = 1, which is below x^theta for every admissible x
    assert stationary_point(PhaseFunction.for_zero(SumParams(2, 1, 1.0, 0.5), -math.pi)) is None
    ph = PhaseFunction(1.0, -1.0 / (2 * math.pi * 0.5) * math.pi, 0.5, 2.0)
    assert stationary_point(ph) == pytest.approx(1.0, rel=1e-15)
    assert stationary_point(PhaseFunction.for_zero(SumParams(100, 1, 1.0, 0.5), 50.0)) is None
    assert stationary_point(PhaseFunction.for_zero(SumParams(100, 1, 1.0, 0.5), 0.0)) is None


def test_regime_boundary_takes_minimum():
    p = SumParams(1e4, 1, 1.0, 0.5)
    threshold = 4 * (1 + 0.5 * math.pi * (2e4) ** 0.5)
    c = derivative_test_bound(OscIntegralSpec(0.5, threshold, p))
    first, second = 100 / (1 + threshold), 100 / math.sqrt(1 + 0.5 * 100)
    assert c.value == min(first, second)
    assert c.regime is (Regime.FIRST if first <= second else Regime.SECOND)


def test_main_term_audit_constant():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(200):
        x = 10 ** rng.uniform(1, 5)
        theta = rng.uniform(0.1, 0.9)
        k = int(rng.integers(1, 20))
        if k * x**theta < 1:
            continue
        r = abs(main_term_integral(SumParams(x, k, 1.0, theta))) / (x ** (1 - theta) / k)
        worst = max(worst, r)
    assert worst <= MAIN_TERM_AUDIT
