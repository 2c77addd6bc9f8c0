import math

import numpy as np
import pytest

from mangoldt_twists.errors import CoverageError, DomainError
from mangoldt_twists.explicit import (REMAINDER_AUDIT, REPORT_COLUMNS, approximate_sum, compare,
                                      error_scale, naive_zero_sum, zero_terms)
from mangoldt_twists.phase_sum import SumParams, direct_sum
from mangoldt_twists.zeros import ZeroTable


def test_error_scale_formula():
    p = SumParams(1e4, 1, 1.0, 1 / 3)
    want = (1 + 1e4 ** (1 / 3)) * 1e4 * math.log(1e6) ** 2 / 100
    assert error_scale(p, 100) == pytest.approx(want, rel=1e-14)
    with pytest.raises(DomainError):
        error_scale(p, 1.0)
    with pytest.raises(DomainError):
        error_scale(p, 2e4)


def test_error_scale_includes_ordinate_rounding(fixture_zeros):
    p = SumParams(1e3, 1, 1.0, 0.5)
    exact = ZeroTable(fixture_zeros.gammas)
    assert error_scale(p, 100, fixture_zeros) > error_scale(p, 100, exact) == error_scale(p, 100)


def test_pair_terms_equal_naive_two_sided_sum(fixture_zeros):
    p = SumParams(1e3, 2, 0.7, 0.4)
    g = fixture_zeros.up_to(100)
    terms = zero_terms(p, g)
    naive = naive_zero_sum(p, g)
    assert abs(complex(terms.sum()) - naive) <= 1e-9 * max(1.0, abs(naive))


def test_degenerate_alpha_rejected(fixture_zeros):
    p = SumParams(1e3, 1, 0.0, 0.5, degenerate=True)
    with pytest.raises(DomainError):
        zero_terms(p, fixture_zeros.gammas[:3])


def test_coverage(fixture_zeros):
    p = SumParams(1e3, 1, 1.0, 0.5)
    with pytest.raises(CoverageError, match="max ordinate"):
        approximate_sum(p, fixture_zeros, 500)
    with pytest.raises(CoverageError):
        compare(p, fixture_zeros, [100, 500])


def test_empty_T_list_gives_header_only(fixture_zeros):
    r = compare(SumParams(1e3, 1, 1.0, 0.5), fixture_zeros, [])
    assert r.rows == []
    assert r.to_csv() == ",".join(REPORT_COLUMNS) + "\n"


def test_compare_consistent_with_approximate_sum(fixture_zeros):
    p = SumParams(1e3, 1, 1.0, 1 / 3)
    rep = compare(p, fixture_zeros, [50, 200])
    for row in rep.rows:
        a = approximate_sum(p, fixture_zeros, row.T)
        assert abs(row.approx - a.approx) <= 1e-12 * abs(a.approx)
        assert row.direct == direct_sum(p)


@pytest.mark.parametrize("x,theta,k,alpha", [
    (1e3, 1 / 3, 1, 1.0), (1e3, 0.5, 2, 0.3), (1e3, 0.25, 1, -1.5),
])
def test_small_x_within_audit(fixture_zeros, x, theta, k, alpha):
    p = SumParams(x, k, alpha, theta)
    rep = compare(p, fixture_zeros, [20, 100, 200])
    assert all(r.ratio <= REMAINDER_AUDIT for r in rep.rows)


@pytest.mark.slow
def test_large_table_converges(zeros_table):
    p = SumParams(1e4, 2, 0.5, 0.25)
    rep = compare(p, zeros_table, [100, 1000, 10_000])
    assert all(r.ratio <= REMAINDER_AUDIT for r in rep.rows)
    assert rep.rows[-1].abs_diff * 5 <= rep.rows[0].abs_diff


def test_report_csv_round_trips_floats(fixture_zeros):
    rep = compare(SumParams(1e3, 1, 1.0, 0.5), fixture_zeros, [100])
    line = rep.to_csv().splitlines()[1].split(",")
    assert float(line[0]) == 100.0
    assert float(line[-1]) == rep.rows[0].ratio
    assert np.isfinite([float(v) for v in line]).all()


def test_error_scale_doubling():
    p = SumParams(1e4, 1, 1.0, 1 / 3)
    a, b = error_scale(p, 100), error_scale(p, 200)
    assert b == pytest.approx(a / 2 * (math.log(2e6) / math.log(1e6)) ** 2, rel=1e-14)


def test_T_below_first_zero(fixture_zeros):
    p = SumParams(1e3, 1, 1.0, 0.5)
    a = approximate_sum(p, fixture_zeros, 10)
    assert a.zero_sum == 0 and a.n_zeros == 0 and a.approx == a.main


def test_canonical_T_equals_x(zeros_table):
    p = SumParams(1e3, 1, 1.0, 0.25)
    rep = compare(p, zeros_table, [p.x])
    assert len(rep.rows) == 1 and rep.rows[0].ratio <= REMAINDER_AUDIT


def test_conjugate_symmetry(fixture_zeros):
    p = SumParams(1e3, 2, 0.8, 1 / 3)
    a = approximate_sum(p, fixture_zeros, 200)
    b = approximate_sum(p.with_alpha(-0.8), fixture_zeros, 200)
    assert abs(b.approx - a.approx.conjugate()) <= 1e-12 * abs(a.approx)


def test_approx_is_main_minus_zero_sum(fixture_zeros):
    a = approximate_sum(SumParams(1e3, 1, 1.0, 0.5), fixture_zeros, 100)
    assert a.approx == a.main - a.zero_sum


@pytest.mark.slow
@pytest.mark.parametrize("x", [1e3, 1e4])
@pytest.mark.parametrize("theta", [0.25, 1 / 3])
@pytest.mark.parametrize("k", [1, 2])
def test_grid_within_audit_and_converging(zeros_table, x, theta, k):
    p = SumParams(x, k, 1.0, theta)
    Ts = [1e2, 1e3, min(x, zeros_table.max_ordinate)]
    rep = compare(p, zeros_table, Ts)
    assert all(r.ratio <= REMAINDER_AUDIT for r in rep.rows)
    diffs = [r.abs_diff for r in rep.rows]
    assert all(b <= 2 * a for a, b in zip(diffs, diffs[1:]))
    if x >= 1e4:
        assert diffs[-1] * 5 <= diffs[0]
