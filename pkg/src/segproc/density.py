"""Exact Taylor coefficients of the shrinkage density and its expectations.

``f_n`` is the density of the accumulated shrinkage ``S_n = 1 - radius_n`` on
``[0, 1/2]``.  Its Taylor coefficients obey

    c_{n+1,0} = 0,    c_{n+1,k} = (k + 2) / k * sum_{j<k} c_{n,j}    (k >= 1)

starting from ``f_1 = 2``.  All coefficients are nonnegative, so truncating a
row loses mass ``1 - sum_k c_k 2^-(k+1) / (k+1)`` and the truncated
expectation ``sum_k c_k 2^-(k+2) / (k+2)`` is short by at most half of that.

Everything here is exact (``fractions.Fraction``) up to the final float
conversion.  ``density_eval_quadrature`` is a floating-point oracle that
iterates the integral recursion directly and shares no code with the
coefficient engine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

DEFAULT_START_ORDER = 16
DEFAULT_MAX_ORDER = 1 << 13


class TruncationInsufficient(ValueError):
    """The stored coefficients cannot certify the requested tolerance."""


class CoefficientCeilingError(RuntimeError):
    """Adaptive truncation order exceeded its configured ceiling."""


@dataclass(frozen=True)
class ExpectationRow:
    n: int
    es: Fraction
    tail_bound: Fraction

    @property
    def figure_value(self) -> Fraction:
        return self.n * (Fraction(1, 2) - self.es)


@dataclass
class CoefficientTable:
    rows: list          # rows[n - 1] = [c_{n,0}, ..., c_{n,K}]
    orders: list        # truncation order K_n per row
    tail_bounds: list   # bound on the neglected part of E S_n per row

    def row(self, n: int) -> list:
        return self.rows[n - 1]


def first_row(order: int) -> list:
    return [Fraction(2)] + [Fraction(0)] * order


def next_coefficient_row(row, order: int) -> list:
    """Coefficients ``c_{n+1,0..order}`` from ``c_{n,0..order-1}``."""
    if order < 1:
        raise ValueError("order must be >= 1")
    if len(row) < order:
        raise ValueError(f"need at least {order} coefficients, got {len(row)}")
    out = [Fraction(0)] * (order + 1)
    prefix = Fraction(0)
    for k in range(1, order + 1):
        prefix += row[k - 1]
        out[k] = Fraction(k + 2, k) * prefix
    return out


def mass(row) -> Fraction:
    """Integral of the truncated series over ``[0, 1/2]``."""
    return sum((c / ((k + 1) << (k + 1)) for k, c in enumerate(row) if c), Fraction(0))


def truncated_expectation(row) -> Fraction:
    return sum((c / ((k + 2) << (k + 2)) for k, c in enumerate(row) if c), Fraction(0))


def moment_s(row, p: int) -> Fraction:
    """Truncated ``E S_n^p``; short by at most ``2^-p`` times the missing mass."""
    return sum((c / ((k + p + 1) << (k + p + 1)) for k, c in enumerate(row) if c), Fraction(0))


def expectation_s(row, tol, *, n: int) -> ExpectationRow:
    """Truncated ``E S_n`` with a certified bound on what the truncation dropped."""
    tail = (1 - mass(row)) / 2
    if tail < 0:
        raise ValueError("row integrates to more than 1; not a density row")
    if tail > tol:
        raise TruncationInsufficient(f"tail bound {float(tail):.3g} exceeds tol {tol:g} for n={n}")
    return ExpectationRow(n, truncated_expectation(row), tail)


def coefficient_table(max_n: int, tol, start_order: int = DEFAULT_START_ORDER,
                      max_order: int = DEFAULT_MAX_ORDER) -> CoefficientTable:
    """Rows ``1..max_n``, doubling the truncation order until every tail bound is below ``tol``.

    Row ``n + 1`` needs row ``n`` only up to the same order, so a failed row
    triggers a rebuild of the whole table at twice the order.
    """
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    order = start_order
    while True:
        rows, tails = [first_row(order)], []
        ok = True
        for n in range(1, max_n + 1):
            if n > 1:
                rows.append(next_coefficient_row(rows[-1], order))
            tail = (1 - mass(rows[-1])) / 2
            tails.append(tail)
            if tail > tol:
                ok = False
                break
        if ok:
            return CoefficientTable(rows, [order] * max_n, tails)
        order *= 2
        if order > max_order:
            raise CoefficientCeilingError(
                f"truncation order would exceed {max_order} (row n={len(rows)} still has tail {float(tail):.3g})")


def density_table(max_n: int, tol, **kwargs) -> list[ExpectationRow]:
    table = coefficient_table(max_n, tol, **kwargs)
    return [expectation_s(row, tol, n=n) for n, row in enumerate(table.rows, start=1)]


def eval_series(row, x: float) -> tuple[float, float]:
    """Evaluate the truncated series at ``0 <= x <= 1/2``.

    Returns ``(value, tail_bound)``.  The bound uses the missing mass and the
    fact that ``2(k + 1)(2x)^k`` is decreasing past the truncation order; it is
    infinite when that does not yet hold.
    """
    if not 0.0 <= x <= 0.5:
        raise ValueError("x must lie in [0, 1/2]")
    xf = Fraction(x)
    value = sum((c * xf ** k for k, c in enumerate(row) if c), Fraction(0))
    missing = 1 - mass(row)
    K = len(row) - 1
    q = 2 * xf
    if missing == 0 or q == 0:
        bound = 0.0
    elif (K + 3) * q <= K + 2:
        bound = float(2 * (K + 2) * q ** (K + 1) * missing)
    else:
        bound = math.inf
    return float(value), bound


# -- closed forms for the first rows ----------------------------------------

def f1(x):
    return np.full_like(np.asarray(x, dtype=float), 2.0)


def f2(x):
    x = np.asarray(x, dtype=float)
    return 2 * x / (1 - x) - 4 * np.log1p(-x)


def f3(x):
    x = np.asarray(x, dtype=float)
    L = np.log1p(-x)
    return 2 * x * (2 - x) / (1 - x) ** 2 + 4 * (1 - 2 * x) / (1 - x) * L + 4 * L ** 2


CLOSED_FORMS = {1: f1, 2: f2, 3: f3}


# -- quadrature oracle --------------------------------------------------------

def _cumtrapz(y, h):
    out = np.zeros_like(y)
    out[1:] = np.cumsum(0.5 * h * (y[1:] + y[:-1]))
    return out


def _iterate_on_grid(n, x, grid):
    y = np.linspace(0.0, x, grid + 1)
    h = x / grid
    f = np.full_like(y, 2.0)
    for _ in range(n - 1):
        f = f * y / (1 - y) + 2 * _cumtrapz(f / (1 - y), h)
    return y, f


def density_eval_quadrature(n: int, x: float, grid: int = 256) -> float:
    """``f_n(x)`` by iterating the integral recursion with composite trapezoids.

    One Richardson step combines the ``grid`` and ``2 * grid`` results.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= x <= 0.5:
        raise ValueError("x must lie in [0, 1/2]")
    if grid < 64:
        raise ValueError("grid must be >= 64")
    if n == 1:
        return 2.0
    if x == 0.0:
        return 0.0
    coarse = _iterate_on_grid(n, x, grid)[1][-1]
    fine = _iterate_on_grid(n, x, 2 * grid)[1][-1]
    return float((4 * fine - coarse) / 3)


def expectation_quadrature(n: int, grid: int = 1024) -> float:
    """``E S_n = int_0^{1/2} x f_n(x) dx`` from the quadrature oracle, Richardson-extrapolated."""
    if n < 1:
        raise ValueError("n must be >= 1")

    def once(m):
        y, f = _iterate_on_grid(n, 0.5, m)
        return _cumtrapz(y * f, 0.5 / m)[-1]

    return float((4 * once(2 * grid) - once(grid)) / 3)
