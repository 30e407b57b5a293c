"""Order/degree trade-off curves, output-size metrics, and optimizers.

The central object is a rational curve d(r) = (vartheta*r + varphi)/(r - psi)
such that a relation of order r and degree d is guaranteed to exist whenever
r >= psi + 1 and d lies strictly above the curve.  On top of it sit the
closed-form metrics (solver cost, output sizes, induced recurrence order)
and small exact integer optimizers that trade order for degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .hyperexp import GreekParams

ORDER = "ORDER"
COST = "COST"
SIZE_PQ = "SIZE_PQ"
SIZE_P = "SIZE_P"
REC_ORDER = "REC_ORDER"
DEGREE = "DEGREE"

METRICS = (ORDER, COST, SIZE_PQ, SIZE_P, REC_ORDER, DEGREE)

Number = Union[int, Fraction]


@dataclass(frozen=True)
class BoundCurve:
    """Sufficient-existence curve d > (vartheta*r + varphi)/(r - psi)."""

    psi: int
    vartheta: int
    varphi: int
    varphi_prime: Optional[int]
    case_tag: str

    @property
    def effective_varphi(self) -> int:
        return self.varphi if self.varphi_prime is None else self.varphi_prime


def _as_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise AssertionError(f"curve offset came out non-integral: {x}")
    return int(x)


def curve(params: GreekParams) -> BoundCurve:
    """Curve coefficients from the measured parameters.

    The sharpened offset varphi_prime is present exactly when omega is a
    natural number below gamma - 1 + phi3; it uses the degree drop at its
    guaranteed value omega + 1 and is never larger than varphi.
    """
    a, b, g = params.alpha, params.beta, params.gamma
    p1, p2, p3 = params.phi1, params.phi2, params.phi3
    cx, cy = params.degx_c0, params.degy_c0
    psi = g + p3 - 2
    if params.case1:
        vartheta = (a + b) * (2 * g - 1 + p3) + g - 1
        varphi = _as_int(
            Fraction(cx) + (a + b + 1) * cy + (g - 2 + p3) * (cx - a - b - p2)
            - (1 - p2) * max(g - 2 + p3, 0) * (p1 + Fraction(b * (g - 1 + p3), 2)))
        return BoundCurve(psi, vartheta, varphi, None, "CASE1")
    vartheta = a * (2 * g - 1 + p3) - 1
    varphi = _as_int(
        Fraction(cx) + a * cy + (g - 2 + p3) * (cx + 1 - a)
        - Fraction(max(g - 2 + p3, 0) * (g + 1 + p3), 2))
    varphi_prime = None
    if params.omega_is_nat and g - 1 + p3 > params.omega:
        delta = int(params.omega) + 1
        varphi_prime = varphi - delta * (g - 2 + p3 - int(params.omega)) + 1
    return BoundCurve(psi, vartheta, varphi, varphi_prime, "CASE2")


def degree_for_order(c: BoundCurve, r: int) -> int:
    """Least integer degree strictly above the curve at order r."""
    if r <= c.psi:
        raise ValueError(f"curve has a pole at r = psi = {c.psi}; need r >= {c.psi + 1}")
    val = Fraction(c.vartheta * r + c.effective_varphi, r - c.psi)
    return math.floor(val) + 1


def curve_degree(c: BoundCurve, r: int) -> Fraction:
    """The exact rational on-curve degree (curve value + 1) at order r."""
    if r <= c.psi:
        raise ValueError(f"need r >= {c.psi + 1}")
    return Fraction(c.vartheta * r + c.effective_varphi, r - c.psi) + 1


def extremal_corollary(params: GreekParams) -> tuple[int, int]:
    """(minimal guaranteed order, minimal guaranteed degree).

    The minimal order is psi + 1 (clamped to 1: orders start there, and the
    guarantee only strengthens as r grows).
    """
    c = curve(params)
    return max(c.psi + 1, 1), c.vartheta + 1


# ---------------------------------------------------------------------------
# metrics
# ---------------------------------------------------------------------------

def theorem_w(params: GreekParams) -> int:
    """The analysis-level cutoff: gamma - 1 + phi3 (0 in case 1 with beta = 0)."""
    if params.case1 and params.beta == 0:
        return 0
    return params.gamma - 1 + params.phi3


def _s1_closed_form(params: GreekParams, r: int, d: Number) -> Number:
    """Certificate x-degree bound at the analysis-level cutoff.

    Uses the degree drop at its guaranteed value omega + 1 in the sharpened
    regime, matching the curve the metrics are evaluated on.
    """
    w = theorem_w(params)
    if params.case1:
        return (params.degx_c0 + d + (params.alpha + params.beta) * (r - 1)
                - params.beta * w - params.phi2 - 1)
    s1 = params.degx_c0 + d + params.alpha * (r - 1) - w
    if params.omega_is_nat and params.gamma - 1 + params.phi3 > params.omega:
        s1 -= int(params.omega) + 1
    return s1


def metrics(params: GreekParams, r: int, d: Number) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """(solver cost, total output size, telescoper size, recurrence order).

    d may be an exact rational (a point on the curve) or an integer.
    """
    if r < 1 or d < 0:
        raise ValueError("need r >= 1 and d >= 0")
    g, p3 = params.gamma, params.phi3
    s1 = Fraction(_s1_closed_form(params, r, d))
    cost = s1 * (params.degy_c0 + (g + 1) * r - g - p3 + 3) ** 3
    size_pq = Fraction((r + 1)) * (d + 1) + (s1 + 1) * (params.degx_c0 + g * (r - 1) + 2)
    size_p = Fraction(r + 1) * (d + 1)
    rec = Fraction(r + d)
    return cost, size_pq, size_p, rec


@dataclass(frozen=True)
class MetricReport:
    metric: str
    r_opt: int
    d_opt: int
    value: Fraction


def _metric_value(params: GreekParams, metric: str, r: int, d: Number) -> Fraction:
    cost, size_pq, size_p, rec = metrics(params, r, d)
    return {COST: cost, SIZE_PQ: size_pq, SIZE_P: size_p, REC_ORDER: rec}[metric]


def optimize_metric(params: GreekParams, metric: str,
                    r_cap: Optional[int] = None) -> MetricReport:
    """Order minimizing the metric along the curve, by exact integer scan.

    The scan evaluates the metric at the exact rational on-curve degree
    (ties broken toward the smaller order); the reported degree is the
    least integer degree above the curve at the winning order.
    """
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}")
    c = curve(params)
    r_min = max(c.psi + 1, 1)
    if metric == ORDER:
        d = degree_for_order(c, r_min)
        return MetricReport(ORDER, r_min, d, Fraction(r_min))
    if r_cap is None:
        tau = max(params.alpha, params.gamma, params.degx_c0, params.degy_c0, 1)
        r_cap = max(4 * c.psi + 8, 2 * asymptotic_choice(tau, metric), r_min)
    if r_cap < r_min:
        raise ValueError("r_cap below the minimal order")
    if metric == DEGREE:
        best = min(range(r_min, r_cap + 1),
                   key=lambda r: (degree_for_order(c, r), r))
        d = degree_for_order(c, best)
        return MetricReport(DEGREE, best, d, Fraction(d))
    best = min(range(r_min, r_cap + 1),
               key=lambda r: (_metric_value(params, metric, r, curve_degree(c, r)), r))
    d = degree_for_order(c, best)
    return MetricReport(metric, best, d, _metric_value(params, metric, best, d))


# ---------------------------------------------------------------------------
# asymptotic order recommendations
# ---------------------------------------------------------------------------

def _floor_quadratic(a: int, n: int, m: int) -> int:
    """floor((a + sqrt(n))/m) computed exactly (n >= 0, m > 0)."""
    t = (a + math.isqrt(n)) // m
    while True:
        lhs = (t + 1) * m - a
        if lhs <= 0 or lhs * lhs <= n:
            t += 1
        else:
            break
    while True:
        lhs = t * m - a
        if lhs > 0 and lhs * lhs > n:
            t -= 1
        else:
            break
    return t


def _round_quadratic(a: int, n: int, m: int) -> int:
    """Nearest integer to (a + sqrt(n))/m, halves rounding up."""
    return _floor_quadratic(2 * a + m, 4 * n, 2 * m)


def asymptotic_choice(tau: int, metric: str) -> int:
    """Leading-term order recommendation as a function of the size measure tau."""
    if tau < 1:
        raise ValueError("tau must be positive")
    if metric == ORDER:
        return tau
    if metric == COST:
        return _round_quadratic(tau, 17 * tau * tau, 4)
    if metric == SIZE_PQ:
        return _round_quadratic(tau, 5 * tau * tau, 2)
    if metric == SIZE_P:
        return 2 * tau
    if metric == REC_ORDER:
        return _round_quadratic(0, 2 * tau ** 3, 1)
    if metric == DEGREE:
        return 2 * tau ** 3
    raise ValueError(f"unknown metric {metric!r}")


# ---------------------------------------------------------------------------
# differential equations for algebraic functions: predicted sizes
# ---------------------------------------------------------------------------

def _ceil_plus_sqrt(a: int, n: int) -> int:
    """ceil(a + sqrt(n)) exactly."""
    s = math.isqrt(n)
    return a + s + (0 if s * s == n else 1)


def _ceil_plus_half_sqrt(a: int, n: int) -> int:
    """ceil(a + sqrt(n)/2) exactly."""
    k = math.isqrt(n) // 2
    while 4 * k * k < n:
        k += 1
    return a + k


def algebraic_size_formulas(tau_x: int, tau_y: int) -> tuple[tuple[int, int], tuple[int, int], tuple[int, int]]:
    """Predicted (order, degree) pairs for the series of an algebraic function.

    Three trade-off points for a root of a minimal polynomial of bidegree
    (tau_x, tau_y): the minimal-order differential equation, a double-order
    one with smaller degree, and the induced recurrence (order, degree).
    Fractional halves (possible for odd tau_y in the second pair) round up,
    which stays inside the feasible region.
    """
    if tau_x < 1 or tau_y < 1:
        raise ValueError("tau_x and tau_y must be positive")
    num1 = 4 * tau_x * tau_y ** 2 - tau_y ** 2 + 2 * tau_x * tau_y - 3 * tau_y + 2 * tau_x + 6
    d1 = -(-num1 // 2)
    part1 = (tau_y, d1)

    half = Fraction(8 * tau_x * tau_y - tau_y, 2) - 3 * tau_x - 1
    d2 = half + -(-4 * (tau_x + 1) // (tau_y + 1))
    part2 = (2 * tau_y, math.ceil(d2))

    n = (8 * tau_y ** 2 - 4 * tau_y + 4) * tau_x - 2 * tau_y ** 2 - 6 * tau_y + 12
    r3 = _ceil_plus_sqrt(2 * tau_x * tau_y + tau_y - 1, n)
    d3 = _ceil_plus_half_sqrt(tau_y - 1, n)
    return part1, part2, (r3, d3)
