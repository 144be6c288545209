import math
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp

from segproc import core, density
from segproc.rng import RngStream

x = sp.symbols("x")
F2 = 2 * x / (1 - x) - 4 * sp.log(1 - x)
F3 = (2 * x * (2 - x) / (1 - x) ** 2 + 4 * (1 - 2 * x) / (1 - x) * sp.log(1 - x)
      + 4 * sp.log(1 - x) ** 2)

# Taylor coefficients of the closed forms, frozen from sympy.series to order 10
F2_COEFFS = [0, 6, 4, Fraction(10, 3), 3, Fraction(14, 5), Fraction(8, 3), Fraction(18, 7),
             Fraction(5, 2), Fraction(22, 9), Fraction(12, 5)]
F3_COEFFS = [0, 0, 12, Fraction(50, 3), 20, Fraction(343, 15), Fraction(1148, 45),
             Fraction(981, 35), Fraction(853, 28), Fraction(2299, 70), Fraction(18469, 525)]


def taylor(expr, order):
    s = sp.series(expr, x, 0, order + 1).removeO()
    return [Fraction(int(sp.Rational(s.coeff(x, k)).p), int(sp.Rational(s.coeff(x, k)).q))
            for k in range(order + 1)]


def rows(n, order):
    r = density.first_row(order)
    out = [r]
    for _ in range(n - 1):
        r = density.next_coefficient_row(r, order)
        out.append(r)
    return out


def test_frozen_coefficients_match_sympy():
    assert taylor(F2, 10) == F2_COEFFS
    assert taylor(F3, 10) == F3_COEFFS


def test_row_two_small():
    assert density.next_coefficient_row([2, 0, 0], 3) == [0, 6, 4, Fraction(10, 3)]


def test_rows_match_closed_form_expansions():
    r = rows(3, 10)
    assert r[0] == [2] + [0] * 10
    assert r[1] == F2_COEFFS
    assert r[2] == F3_COEFFS
    assert r[2][2] == 12


def test_zero_row_maps_to_zero():
    assert density.next_coefficient_row([0] * 5, 5) == [0] * 6


def test_next_row_needs_enough_input():
    with pytest.raises(ValueError):
        density.next_coefficient_row([2, 0], 5)


def test_expectation_first_row_exact():
    e = density.expectation_s(density.first_row(4), 1e-12, n=1)
    assert e.es == Fraction(1, 4)
    assert e.figure_value == Fraction(1, 4)
    assert e.tail_bound == 0


def test_expectation_second_row_matches_symbolic_integral():
    exact = sp.integrate(x * F2, (x, 0, sp.Rational(1, 2)))
    assert sp.simplify(exact - sp.log(2) / 2) == 0
    e = density.expectation_s(rows(2, 200)[1], 1e-15, n=2)
    assert float(e.es) == pytest.approx(math.log(2) / 2, abs=1e-15)


def test_expectation_third_row_matches_symbolic_integral():
    exact = float(sp.integrate(x * F3, (x, 0, sp.Rational(1, 2))))
    e = density.expectation_s(rows(3, 200)[2], 1e-15, n=3)
    assert float(e.es) == pytest.approx(exact, abs=1e-14)


def test_zero_row_is_insufficient():
    with pytest.raises(density.TruncationInsufficient):
        density.expectation_s([Fraction(0)] * 4, 0.1, n=1)
    assert density.expectation_s([Fraction(0)] * 4, 0.5, n=1).tail_bound == Fraction(1, 2)


def test_short_row_is_insufficient():
    with pytest.raises(density.TruncationInsufficient):
        density.expectation_s(rows(10, 8)[-1], 1e-10, n=10)


def test_table_first_row():
    (row,) = density.density_table(1, 1e-10)
    assert (row.n, row.es, row.figure_value) == (1, Fraction(1, 4), Fraction(1, 4))


def test_table_invariants():
    table = density.coefficient_table(30, Fraction(1, 10 ** 12))
    expectations = [density.expectation_s(r, Fraction(1, 10 ** 12), n=n)
                    for n, r in enumerate(table.rows, 1)]
    for n, (r, tail) in enumerate(zip(table.rows, table.tail_bounds), 1):
        assert all(c >= 0 for c in r)
        if n >= 2:
            assert r[0] == 0
        m = density.mass(r)
        assert 1 - 2 * tail <= m <= 1
    es = [e.es for e in expectations]
    assert all(a < b for a, b in zip(es, es[1:]))
    assert all(0 <= e <= Fraction(1, 2) for e in es)


def test_exact_arithmetic_stays_exact():
    r = rows(10, 200)[-1]
    assert all(isinstance(c, Fraction) for c in r)
    assert density.mass(r) <= 1


def test_ceiling_error():
    with pytest.raises(density.CoefficientCeilingError):
        density.density_table(40, 1e-10, max_order=64)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("pt", [0.1, 0.25, 0.4])
def test_series_matches_closed_forms(n, pt):
    row = rows(n, 300)[-1]
    value, bound = density.eval_series(row, pt)
    ref = float(density.CLOSED_FORMS[n](pt))
    assert abs(value - ref) <= bound + 1e-13


def test_closed_forms_match_sympy_at_points():
    for pt in (0.1, 0.25, 0.4):
        assert float(density.f2(pt)) == pytest.approx(float(F2.subs(x, pt)), rel=1e-14)
        assert float(density.f3(pt)) == pytest.approx(float(F3.subs(x, pt)), rel=1e-14)


def test_quadrature_examples():
    assert density.density_eval_quadrature(1, 0.3) == 2.0
    assert density.density_eval_quadrature(2, 0.25) == pytest.approx(2 / 3 + 4 * math.log(4 / 3), abs=1e-9)
    assert density.density_eval_quadrature(3, 0.0) == 0.0


def test_quadrature_rejects_small_grid():
    with pytest.raises(ValueError):
        density.density_eval_quadrature(2, 0.2, grid=32)


@pytest.mark.parametrize("n", range(1, 11))
def test_series_agrees_with_quadrature(n):
    row = rows(n, 300)[-1]
    for pt in (0.1, 0.25, 0.4, 0.5):
        value, _ = density.eval_series(row, min(pt, 0.5))
        assert value == pytest.approx(density.density_eval_quadrature(n, pt, grid=512), abs=1e-8)
    e = density.expectation_s(row, 1e-12, n=n)
    assert float(e.es) == pytest.approx(density.expectation_quadrature(n), abs=1e-9)


def test_expectation_against_monte_carlo():
    # the direct simulator never touches the recursion
    n, N = 10, 400_000
    lo, hi = core.simulate_direct(n, N, RngStream(21, 7))
    s = 1.0 - 0.5 * (hi - lo)
    exact = float(density.density_table(n, 1e-12)[-1].es)
    assert abs(s.mean() - exact) < 4 * s.std() / math.sqrt(N)


def test_higher_moments_against_monte_carlo():
    n, N = 5, 400_000
    row = density.coefficient_table(n, 1e-12).row(n)
    lo, hi = core.simulate_direct(n, N, RngStream(22, 7))
    s = 1.0 - 0.5 * (hi - lo)
    for p in (2, 3):
        sp_ = s ** p
        assert abs(sp_.mean() - float(density.moment_s(row, p))) < 4 * sp_.std() / math.sqrt(N)
