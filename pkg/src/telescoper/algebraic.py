"""Differential equations for algebraic power series via telescoping.

A simple root a(x) of m(x, y) with a(0) = a0 is encoded as the integrand
y * (D_y m)/m, whose telescopers annihilate the series.  The series itself
is expanded by exact Newton iteration, and ``annihilates`` checks the
action of a telescoper on the truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polyarith import BiPoly, degree, MINUS_INFINITY
from .hyperexp import HyperexpTerm

ANNIHILATION_GUARD = 5


@dataclass(frozen=True)
class AlgebraicInput:
    """Bivariate polynomial m with a marked simple root y = a0 at x = 0."""

    m: BiPoly
    a0: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a0", Fraction(self.a0))
        if degree(self.m, "y") is MINUS_INFINITY or degree(self.m, "y") < 1:
            raise ValueError("m must have positive degree in y")
        if _eval00(self.m, self.a0) != 0:
            raise ValueError("a0 is not a root of m(0, y)")
        if _eval00(self.m.diff("y"), self.a0) == 0:
            raise ValueError("a0 is not a simple root of m(0, y)")


@dataclass(frozen=True)
class TruncatedSeries:
    """Exact rational coefficients a_0 ... a_N of a power series."""

    coeffs: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1


def _eval00(p: BiPoly, y0: Fraction) -> Fraction:
    total = Fraction(0)
    for (i, j), c in p.terms.items():
        if i == 0:
            total += Fraction(c) * y0 ** j
    return total


def to_hyperexp(inp: AlgebraicInput) -> HyperexpTerm:
    """The integrand y*(D_y m)/m as a hyperexponential term."""
    dm = inp.m.diff("y")
    if dm.is_zero():
        raise ValueError("m must depend on y")
    return HyperexpTerm(c0=BiPoly.var("y") * dm, a=BiPoly.zero(),
                        b=BiPoly.one(), factors=((inp.m, Fraction(-1)),))


# ---------------------------------------------------------------------------
# truncated power series arithmetic (dense Fraction lists)
# ---------------------------------------------------------------------------

def _ser_mul(a: Sequence[Fraction], b: Sequence[Fraction], n: int) -> list[Fraction]:
    out = [Fraction(0)] * n
    for i, ai in enumerate(a):
        if i >= n or not ai:
            continue
        for j, bj in enumerate(b):
            if i + j >= n:
                break
            if bj:
                out[i + j] += ai * bj
    return out


def _ser_inv(a: Sequence[Fraction], n: int) -> list[Fraction]:
    if not a or a[0] == 0:
        raise ZeroDivisionError("series has no inverse")
    inv = [Fraction(0)] * n
    inv[0] = 1 / a[0]
    for k in range(1, n):
        s = Fraction(0)
        for i in range(1, min(k, len(a) - 1) + 1):
            if a[i]:
                s += a[i] * inv[k - i]
        inv[k] = -s / a[0]
    return inv


def _poly_at_series(p: BiPoly, a: Sequence[Fraction], n: int) -> list[Fraction]:
    """p(x, a(x)) truncated at order n (Horner in y, series coefficients)."""
    dy = int(max((j for (_, j) in p.terms), default=0))
    ycoeffs = []
    for j in range(dy + 1):
        row = [Fraction(0)] * n
        for (i, jj), c in p.terms.items():
            if jj == j and i < n:
                row[i] += Fraction(c)
        ycoeffs.append(row)
    acc = ycoeffs[dy]
    for j in range(dy - 1, -1, -1):
        acc = _ser_mul(acc, a, n)
        acc = [acc[k] + ycoeffs[j][k] for k in range(n)]
    return acc


def series_solve(inp: AlgebraicInput, order: int) -> TruncatedSeries:
    """Coefficients a_0..a_order of the unique series root with a(0) = a0.

    Quadratically converging Newton update on truncated series:
    a <- a - m(x, a) / (D_y m)(x, a).
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    my = inp.m.diff("y")
    a = [inp.a0]
    prec = 1
    while prec < order + 1:
        prec = min(2 * prec, order + 1)
        a = a + [Fraction(0)] * (prec - len(a))
        val = _poly_at_series(inp.m, a, prec)
        der = _poly_at_series(my, a, prec)
        corr = _ser_mul(val, _ser_inv(der, prec), prec)
        a = [a[k] - corr[k] for k in range(prec)]
    residual = _poly_at_series(inp.m, a, order + 1)
    if any(residual):
        raise AssertionError("Newton iteration failed to cancel the residual")
    return TruncatedSeries(tuple(a))


def apply_operator(p: Sequence[BiPoly], series: TruncatedSeries) -> list[Fraction]:
    """Coefficients of sum_i p_i(x) * D_x^i applied to the truncated series.

    Only the first N - r + 1 output coefficients are meaningful, where N is
    the series order and r the operator order.
    """
    n = series.order + 1
    out = [Fraction(0)] * n
    for i, pi in enumerate(p):
        if pi.is_zero():
            continue
        if degree(pi, "y") > 0:
            raise ValueError("operator coefficients must be free of y")
        deriv = list(series.coeffs)
        for _ in range(i):
            deriv = [deriv[k + 1] * (k + 1) for k in range(len(deriv) - 1)]
        for (e, _), c in pi.terms.items():
            for k, ak in enumerate(deriv):
                if e + k < n and ak:
                    out[e + k] += Fraction(c) * ak
    return out


def annihilates(p: Sequence[BiPoly], series: TruncatedSeries,
                guard: int = ANNIHILATION_GUARD) -> bool:
    """True when the operator kills the series up to truncation effects.

    Checks all coefficients of index <= N - r - guard; requires the series
    to be long enough (more than r + d + guard terms).
    """
    r = len(p) - 1
    d = max((int(degree(pi, "x")) for pi in p if not pi.is_zero()), default=0)
    if series.order <= r + d + guard:
        raise ValueError("series too short for a meaningful annihilation check")
    result = apply_operator(p, series)
    limit = series.order - r - guard
    return all(result[k] == 0 for k in range(limit + 1))
