"""Hyperexponential terms and their derivative structure.

A term is stored as exact polynomial data ``c0 * exp(a/b) * prod c_l^e_l``.
This module computes logarithmic derivatives, the quotients
``(D_x^i h)/h`` (kept internally as exact numerators over the known
denominator ``c0 * (b * sqfp(b) * prod c_l)^i``), the integer/flag
parameters measuring the term, and the predicted degree and leading
coefficient of those numerators.
"""

from __future__ import annotations

import threading
import weakref
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .polyarith import (
    BiPoly,
    MINUS_INFINITY,
    RatFun,
    Rat,
    degree,
    exact_div,
    gcd_poly,
    leading_coeff,
    poly_str,
    rf_normalize,
    squarefree_part,
)


class TermError(ValueError):
    """Structurally invalid hyperexponential term data."""


def falling_factorial(z, n: int) -> Fraction:
    """z*(z-1)*...*(z-n+1); defined as 1 for n <= 0."""
    out = Fraction(1)
    z = Fraction(z)
    for k in range(max(n, 0)):
        out *= z - k
    return out


@dataclass(frozen=True)
class HyperexpTerm:
    """Exact representation c0 * exp(a/b) * prod of c_l^e_l."""

    c0: BiPoly
    a: BiPoly
    b: BiPoly
    factors: tuple[tuple[BiPoly, Fraction], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors",
                           tuple((p, Fraction(e)) for p, e in self.factors))
        if self.b.is_zero():
            raise TermError("b must be nonzero")
        if self.c0.is_zero():
            raise TermError("c0 must be nonzero")
        for k, (p, e) in enumerate(self.factors):
            if p.is_zero():
                raise TermError(f"factor {k} is the zero polynomial")
            if e == 0:
                raise TermError(f"factor {k} has zero exponent")

    def __str__(self) -> str:
        parts = [poly_str(self.c0)]
        if not self.a.is_zero():
            parts.append(f"exp(({poly_str(self.a)})/({poly_str(self.b)}))")
        for p, e in self.factors:
            parts.append(f"({poly_str(p)})^({e})")
        return " * ".join(parts)


def validate(term: HyperexpTerm) -> list[str]:
    """Check a term, returning warnings for conditions that cost sharpness.

    Raises TermError when the term is degenerate (independent of x or of y,
    or a plain polynomial); returns warning strings when some c_l is not
    square-free, two c_l share a factor, or an exponent is a natural number.
    """
    dx = max(_d(term.a, "x"), _d(term.b, "x")) + sum(_d(p, "x") for p, _ in term.factors)
    dy = max(_d(term.a, "y"), _d(term.b, "y")) + sum(_d(p, "y") for p, _ in term.factors)
    if dx <= 0 or dy <= 0:
        raise TermError("term must depend on both x and y and not be a plain polynomial")
    warnings = []
    polys = [p for p, _ in term.factors]
    for k, (p, e) in enumerate(term.factors):
        if not p.is_constant() and squarefree_part(p) != p.normalized():
            warnings.append(f"factor {k} is not square-free")
        if e.denominator == 1 and e >= 1:
            warnings.append(f"factor {k} has a natural-number exponent")
    for k in range(len(polys)):
        for m in range(k + 1, len(polys)):
            if not gcd_poly(polys[k], polys[m]).is_constant():
                warnings.append(f"factors {k} and {m} are not coprime")
    return warnings


def _d(p: BiPoly, var: str) -> int:
    """Degree as an int, with the zero polynomial counting as 0."""
    d = degree(p, var)
    return 0 if d == MINUS_INFINITY else d


# ---------------------------------------------------------------------------
# per-term cached core data
# ---------------------------------------------------------------------------

class _TermCore:
    """Shared exact data for one term: denominator base and numerators.

    v = b * sqfp(b) * prod c_l.  The quotient (D_x^i h)/h equals
    N_i / (c0 * v^i) where the N_i satisfy
    N_{i+1} = (D_x N_i) * v - i * N_i * (D_x v) + N_i * W_x,
    with W_x = v * (D_x(a/b) + sum e_l (D_x c_l)/c_l), a polynomial.
    """

    def __init__(self, term: HyperexpTerm):
        self.term = term
        self.sqfp_b = BiPoly.one() if term.b.is_constant() else squarefree_part(term.b)
        prod_c = BiPoly.one()
        for p, _ in term.factors:
            prod_c = prod_c * p
        self.prod_c = prod_c
        self.v = term.b * self.sqfp_b * prod_c
        self.wx = self._log_deriv_numerator("x")
        self.wy = self._log_deriv_numerator("y")
        self._numerators = [term.c0]
        self._v_powers = [BiPoly.one()]
        self.lock = threading.RLock()

    def _log_deriv_numerator(self, var: str) -> BiPoly:
        """v * (D(a/b) + sum e_l (D c_l)/c_l) as an exact polynomial."""
        term = self.term
        w = self.sqfp_b * self.prod_c * term.a.diff(var)
        db = term.b.diff(var)
        if not db.is_zero():
            w = w - term.a * exact_div(self.sqfp_b * db, term.b) * self.prod_c
        base = term.b * self.sqfp_b
        for k, (p, e) in enumerate(term.factors):
            rest = BiPoly.one()
            for m, (q, _) in enumerate(term.factors):
                if m != k:
                    rest = rest * q
            w = w + (base * rest * p.diff(var)) * e
        return w

    def v_power(self, k: int) -> BiPoly:
        with self.lock:
            while len(self._v_powers) <= k:
                self._v_powers.append(self._v_powers[-1] * self.v)
            return self._v_powers[k]

    def numerator(self, i: int) -> BiPoly:
        with self.lock:
            while len(self._numerators) <= i:
                k = len(self._numerators) - 1
                n = self._numerators[-1]
                nxt = n.diff("x") * self.v - (n * self.v.diff("x")) * k + n * self.wx
                self._numerators.append(nxt)
            return self._numerators[i]


_cores: "weakref.WeakKeyDictionary[HyperexpTerm, _TermCore]" = weakref.WeakKeyDictionary()
_cores_lock = threading.Lock()


def term_core(term: HyperexpTerm) -> _TermCore:
    with _cores_lock:
        core = _cores.get(term)
        if core is None:
            core = _TermCore(term)
            _cores[term] = core
        return core


# ---------------------------------------------------------------------------
# logarithmic derivatives and derivative quotients
# ---------------------------------------------------------------------------

def dlog(term: HyperexpTerm, var: str) -> RatFun:
    """The normalized logarithmic derivative (D_var h)/h."""
    f = rf_normalize(term.c0.diff(var), term.c0)
    f = f + rf_normalize(term.a, term.b).diff(var)
    for p, e in term.factors:
        f = f + rf_normalize(p.diff(var), p) * e
    return f


def lifted_numerator(term: HyperexpTerm, i: int) -> BiPoly:
    """N_i with (D_x^i h)/h = N_i / (c0 * (b*sqfp(b)*prod c_l)^i)."""
    if i < 0:
        raise ValueError("derivative order must be nonnegative")
    return term_core(term).numerator(i)


def quotient_denominator(term: HyperexpTerm, i: int) -> BiPoly:
    """The denominator c0 * (b*sqfp(b)*prod c_l)^i paired with lifted_numerator."""
    core = term_core(term)
    return term.c0 * core.v_power(i)


def derivative_quotient(term: HyperexpTerm, i: int) -> RatFun:
    """The normalized rational function (D_x^i h)/h; the order-0 quotient is 1."""
    if i == 0:
        return RatFun.one()
    core = term_core(term)
    return rf_normalize(core.numerator(i), term.c0 * core.v_power(i))


# ---------------------------------------------------------------------------
# measured parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GreekParams:
    """Degree data and flags measuring a hyperexponential term.

    ``delta`` is the default admissible degree-drop value (omega+1 when the
    drop phenomenon applies, else 0) used by the bound curves; ``delta_true``
    is the exact measured drop, which may be larger and is what the shaped
    ansatz uses.  ``lc_ratio`` is the constant lc_x(a)/lc_x(b) when that
    ratio is constant (phi1 = 1), else None.
    """

    alpha: int
    beta: int
    gamma: int
    omega: Fraction
    omega_is_nat: bool
    delta: int
    delta_true: int
    eta: Fraction
    phi1: int
    phi2: int
    phi3: int
    degx_c0: int
    degy_c0: int
    lc_ratio: Optional[Fraction] = None

    @property
    def case1(self) -> bool:
        """True when deg_x a > deg_x b (the beta >= 0 regime)."""
        return self.beta >= 0


def greek_params(term: HyperexpTerm) -> GreekParams:
    core = term_core(term)
    dxa, dxb = degree(term.a, "x"), degree(term.b, "x")
    dya, dyb = degree(term.a, "y"), degree(term.b, "y")
    degx_c0, degy_c0 = _d(term.c0, "x"), _d(term.c0, "y")
    alpha = _d(core.sqfp_b, "x") + _d(term.b, "x") + sum(_d(p, "x") for p, _ in term.factors)
    gamma = _d(core.sqfp_b, "y") + int(max(dya, dyb, 0)) + sum(_d(p, "y") for p, _ in term.factors)
    beta_raw = dxa - dxb - 1 if not term.a.is_zero() else MINUS_INFINITY
    beta = int(max(beta_raw, -1))
    case1 = beta >= 0

    omega = Fraction(degx_c0) + sum((e * _d(p, "x") for p, e in term.factors), Fraction(0))
    omega_is_nat = omega.denominator == 1 and omega >= 0
    eta = sum((e * _d(p, "y") for p, e in term.factors), Fraction(0))

    if term.a.is_zero():
        phi1, lc_ratio = 1, Fraction(0)
    else:
        la, lb = leading_coeff(term.a, "x"), leading_coeff(term.b, "x")
        if la.normalized() == lb.normalized():
            phi1 = 1
            lc_ratio = la.lead_coeff_glex() / lb.lead_coeff_glex()
        else:
            phi1, lc_ratio = 0, None
    phi2 = 1 if (phi1 and beta == 0) else 0

    ab = rf_normalize(term.a, term.b)
    ab_free_of_y = _d(ab.num, "y") == 0 and _d(ab.den, "y") == 0
    factors_ok = all(_d(p, "y") == 0 or e.denominator == 1 for p, e in term.factors)
    phi3 = 1 if (ab_free_of_y and factors_ok and degy_c0 + eta + 1 >= 0) else 0

    if not case1 and omega_is_nat:
        w = int(omega)
        delta = w + 1
        n_next = core.numerator(w + 1)
        if n_next.is_zero():
            delta_true = delta
        else:
            delta_true = degx_c0 + (w + 1) * (alpha - 1) - int(degree(n_next, "x"))
            delta_true = max(delta_true, delta)
    else:
        delta = delta_true = 0

    return GreekParams(alpha=alpha, beta=beta, gamma=gamma, omega=omega,
                       omega_is_nat=omega_is_nat, delta=delta,
                       delta_true=delta_true, eta=eta, phi1=phi1, phi2=phi2,
                       phi3=phi3, degx_c0=degx_c0, degy_c0=degy_c0,
                       lc_ratio=lc_ratio)


# ---------------------------------------------------------------------------
# predicted numerator shape at common denominator exponent r
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NumeratorProfile:
    """Predicted x-degree (exact), y-degree bound, and x-leading coefficient
    of the numerator of (D_x^i h)/h over the denominator c0 * v^r."""

    deg_x_exact: int
    deg_y_bound: int
    lc_x: BiPoly


def numerator_profile(term: HyperexpTerm, r: int, i: int) -> NumeratorProfile:
    if not (0 <= i <= r):
        raise ValueError("need 0 <= i <= r")
    core = term_core(term)
    params = greek_params(term)
    lc_c0 = leading_coeff(term.c0, "x")
    deg_y_bound = params.degy_c0 + r * params.gamma
    if params.case1:
        deg_x = params.degx_c0 + r * params.alpha + i * params.beta
        lc = (lc_c0
              * leading_coeff(term.a, "x") ** i
              * leading_coeff(term.b, "x") ** (r - i)
              * leading_coeff(core.sqfp_b, "x") ** r
              * leading_coeff(core.prod_c, "x") ** r)
        lc = lc * Fraction(params.beta + 1) ** i
        return NumeratorProfile(deg_x, deg_y_bound, lc)
    if not params.omega_is_nat or i <= params.omega:
        deg_x = params.degx_c0 + r * params.alpha - i
        lc = (lc_c0
              * leading_coeff(term.b * core.sqfp_b, "x") ** r
              * leading_coeff(core.prod_c, "x") ** r)
        lc = lc * falling_factorial(params.omega, i)
        return NumeratorProfile(deg_x, deg_y_bound, lc)
    w = int(params.omega)
    dt = params.delta_true
    deg_x = params.degx_c0 + r * params.alpha - i - dt
    lc_base = leading_coeff(core.numerator(w + 1), "x")
    lc = (lc_base
          * leading_coeff(core.v, "x") ** (r - (w + 1))
          * falling_factorial(Fraction(-dt - 1), i - (w + 1)))
    return NumeratorProfile(deg_x, deg_y_bound, lc)
