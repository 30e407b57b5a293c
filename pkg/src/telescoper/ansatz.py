"""Shaped ansatz construction and exact linear-system assembly.

The telescoper ansatz is a grid of unknowns p_{i,j} (coefficient of
x^j D_x^i) with per-order degree caps d_i, plus optional coupled unknowns
("white bullets") whose two-term contributions are built so that their
leading x-terms cancel.  The certificate ansatz is a dense box of unknowns
q_{i,j} over a fixed denominator, with one y-row removed when the term is
rational in y (which forces a nonzero y-derivative for every nonzero
choice of the q's).  Comparing coefficients of the common numerator of
(P h - D_y Q)/h yields one homogeneous linear equation per monomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .polyarith import BiPoly, Fraction as _F, gcd_poly, exact_div, try_exact_div
from .hyperexp import (
    GreekParams,
    HyperexpTerm,
    falling_factorial,
    greek_params,
    term_core,
)

CASE1 = "CASE1"
CASE2 = "CASE2"
CASE2P = "CASE2P"
NAIVE = "NAIVE"


class ShapeError(ValueError):
    """Requested ansatz parameters are outside their legal range."""


@dataclass(frozen=True)
class CoupledTerm:
    """One coupled unknown: self_coeff * x^j D_x^i + partner_coeff * x^pj D_x^pi."""

    i: int
    j: int
    partner_i: int
    partner_j: int
    self_coeff: Fraction
    partner_coeff: Fraction


@dataclass(frozen=True)
class AnsatzShape:
    case_tag: str
    r: int
    d: int
    w: int
    di: tuple[int, ...]
    coupled_terms: tuple[CoupledTerm, ...] = ()

    def variable_count(self) -> int:
        return sum(d + 1 for d in self.di if d >= 0) + len(self.coupled_terms)


@dataclass(frozen=True)
class CertificateShape:
    s1: int
    s2: int
    removed_row: Optional[int]
    denom_power: int

    def variable_count(self) -> int:
        removed = 1 if self.removed_row is not None else 0
        return (self.s1 + 1) * (self.s2 + 1 - removed)


def w_range(params: GreekParams, r: int, d: int, case_tag: str) -> tuple[int, int]:
    """Legal inclusive range for the cutoff parameter w."""
    if case_tag == NAIVE:
        return 0, 0
    if case_tag == CASE1:
        if not params.case1:
            raise ShapeError("case-1 ansatz needs deg_x a > deg_x b")
        if params.beta == 0:
            return 0, 0
        return 0, min(r, d // params.beta)
    if case_tag == CASE2:
        if params.case1:
            raise ShapeError("case-2 ansatz needs deg_x a <= deg_x b")
        return 0, min(d + 1, r + 1)
    if case_tag == CASE2P:
        if params.case1 or not params.omega_is_nat:
            raise ShapeError("case-2' ansatz needs deg_x a <= deg_x b and a natural omega")
        lo = int(params.omega)
        hi = min(d - params.delta_true + 1, r + 1)
        if lo > hi:
            raise ShapeError(f"empty w-range for case 2' at r={r}, d={d}")
        return lo, hi
    raise ShapeError(f"unknown case tag {case_tag!r}")


def optimal_w(params: GreekParams, r: int, d: int, case_tag: str) -> int:
    """The cutoff gamma - 1 + phi3 clamped into the legal range.

    The count of variables minus equations is quadratic in w with its vertex
    at (or next to) gamma - 1 + phi3, so when the preferred value falls
    outside the range the best legal choice is the nearer boundary point.
    For case 1 with beta = 0 (in particular whenever phi2 = 1) the only
    choice is w = 0.
    """
    lo, hi = w_range(params, r, d, case_tag)
    preferred = params.gamma - 1 + params.phi3
    return min(max(preferred, lo), hi)


def telescoper_shape(params: GreekParams, r: int, d: int, w: int,
                     case_tag: str) -> AnsatzShape:
    """Degree caps and coupled unknowns for the telescoper ansatz."""
    if r < 1 or d < 0:
        raise ShapeError("need r >= 1 and d >= 0")
    lo, hi = w_range(params, r, d, case_tag)
    if not lo <= w <= hi:
        raise ShapeError(f"w={w} outside legal range [{lo}, {hi}] for {case_tag}")
    coupled: list[CoupledTerm] = []
    if case_tag == NAIVE:
        di = tuple(d for _ in range(r + 1))
        return AnsatzShape(NAIVE, r, d, 0, di)
    if case_tag == CASE1:
        beta, phi2 = params.beta, params.phi2
        di = tuple(d - beta * max(w + i - r, 0) - phi2 for i in range(r + 1))
        lam = params.lc_ratio
        if beta != 0 and params.phi1:
            for i in range(r - w + 1, r):
                coeff = (lam * (beta + 1)) ** (r - i)
                coupled.append(CoupledTerm(i, di[i] + 1, r, di[r] + 1,
                                           coeff, Fraction(-1)))
        if phi2:
            for i in range(r):
                coupled.append(CoupledTerm(i, di[i] + 1, r, di[r] + 1,
                                           lam ** (r - i), Fraction(-1)))
        return AnsatzShape(CASE1, r, d, w, di, tuple(coupled))
    if case_tag == CASE2:
        di = tuple(d - max(w - i, 0) for i in range(r + 1))
        for i in range(1, w):
            coupled.append(CoupledTerm(i, di[i] + 1, 0, di[0] + 1,
                                       Fraction(1), -falling_factorial(params.omega, i)))
        return AnsatzShape(CASE2, r, d, w, di, tuple(coupled))
    # CASE2P
    om = int(params.omega)
    delta = params.delta_true
    di = tuple(d - max(w - i, 0) - (delta if i <= om else 0) for i in range(r + 1))
    for i in range(1, om + 1):
        coupled.append(CoupledTerm(i, di[i] + 1, 0, di[0] + 1,
                                   Fraction(1), -falling_factorial(params.omega, i)))
    for i in range(om + 2, w):
        coupled.append(CoupledTerm(i, di[i] + 1, om + 1, di[om + 1] + 1,
                                   Fraction(1),
                                   -falling_factorial(Fraction(-delta - 1), i - (om + 1))))
    return AnsatzShape(CASE2P, r, d, w, di, tuple(coupled))


def certificate_shape(params: GreekParams, r: int, d: int, w: int,
                      case_tag: str) -> CertificateShape:
    """Box bounds s1, s2 and the removed y-row for the certificate ansatz."""
    if r < 1:
        raise ShapeError("need r >= 1")
    a, b, g = params.alpha, params.beta, params.gamma
    if case_tag == NAIVE:
        w = 0
        case_tag = CASE1 if params.case1 else CASE2
    if case_tag == CASE1:
        s1 = params.degx_c0 + d + (a + b) * (r - 1) - b * w - params.phi2 - 1
    elif case_tag == CASE2:
        s1 = params.degx_c0 + d + a * (r - 1) - w
    elif case_tag == CASE2P:
        s1 = params.degx_c0 + d + a * (r - 1) - w - params.delta_true
    else:
        raise ShapeError(f"unknown case tag {case_tag!r}")
    if s1 < 0:
        raise ShapeError(f"degree d={d} too small for a certificate at order r={r}")
    s2 = params.degy_c0 + g * (r - 1) + 1
    removed = None
    if params.phi3:
        row = g * (r - 1) - int(params.eta)
        if 0 <= row <= s2:
            removed = row
    return CertificateShape(s1, s2, removed, r - 1)


def count(shape: AnsatzShape, cert: CertificateShape,
          params: GreekParams) -> tuple[int, int]:
    """(total variables, bounding-box bound on the number of equations)."""
    variables = shape.variable_count() + cert.variable_count()
    r, d, w = shape.r, shape.d, shape.w
    if shape.case_tag == CASE1:
        degx = params.degx_c0 + d + (params.alpha + params.beta) * r \
            - params.beta * w - params.phi2
    elif shape.case_tag == CASE2:
        degx = params.degx_c0 + d + params.alpha * r - w
    elif shape.case_tag == CASE2P:
        degx = params.degx_c0 + d + params.alpha * r - w - params.delta_true
    else:  # NAIVE
        degx = params.degx_c0 + d + params.alpha * r
        if params.case1:
            degx += params.beta * r
    degy = params.degy_c0 + params.gamma * r
    return variables, (degx + 1) * (degy + 1)


# ---------------------------------------------------------------------------
# linear system assembly
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearSystem:
    """Homogeneous system: one row per realized monomial, one column per unknown."""

    matrix: tuple             # row-major tuples of int/Fraction
    col_index: tuple          # ("P", i, j) | ("PC", CoupledTerm) | ("Q", i, j)
    row_index: tuple          # (x-power, y-power) per row
    p_column_set: frozenset

    @property
    def rows(self) -> int:
        return len(self.matrix)

    @property
    def cols(self) -> int:
        return len(self.col_index)


def build_system(term: HyperexpTerm, shape: AnsatzShape,
                 cert: CertificateShape) -> LinearSystem:
    """Assemble the exact coefficient-comparison system for the shapes.

    All contributions are expressed over one common denominator; the common
    polynomial content of the stacked numerators (equivalently, the gap
    between that denominator and the least common denominator of the
    normalized contributions) is cancelled before rows are extracted, and
    all-zero rows are dropped.
    """
    core = term_core(term)
    r = shape.r
    k = cert.denom_power
    m = max(r, k + 1)

    lifted: dict[int, BiPoly] = {}

    def n_at_m(i: int) -> BiPoly:
        if i not in lifted:
            lifted[i] = core.numerator(i) * core.v_power(m - i)
        return lifted[i]

    columns: list[tuple] = []
    numerators: list[BiPoly] = []

    for i in range(r + 1):
        if shape.di[i] < 0:
            continue
        ni = n_at_m(i)
        for j in range(shape.di[i] + 1):
            columns.append(("P", i, j))
            numerators.append(ni.shift(j, 0))
    for ct in shape.coupled_terms:
        contribution = (n_at_m(ct.i).shift(ct.j, 0) * ct.self_coeff
                        + n_at_m(ct.partner_i).shift(ct.partner_j, 0) * ct.partner_coeff)
        columns.append(("PC", ct))
        numerators.append(contribution)

    # - (D_y Q_{i,j})/h over the same denominator:
    #   Q_{i,j} = x^i y^j h / (c0 v^k)  gives numerator  v D_y(x^i y^j) + x^i y^j W
    # with W = wy - k * D_y(v), all polynomial.
    w_cert = core.wy - core.v.diff("y") * k
    v_lift = core.v_power(m - k - 1)
    wq = w_cert * v_lift
    vq = core.v * v_lift
    removed = cert.removed_row
    q_reps = {}
    for j in range(cert.s2 + 1):
        if j == removed:
            continue
        rep = wq.shift(0, j)
        if j:
            rep = rep + (vq.shift(0, j - 1) * j)
        q_reps[j] = rep
    for i in range(cert.s1 + 1):
        for j, rep in q_reps.items():
            columns.append(("Q", i, j))
            numerators.append(-rep.shift(i, 0))

    # Cancel common content against the common denominator c0 * v^m.  Every
    # column is an x-shift (or a combination of x-shifts) of one of the
    # family representatives below, and each representative occurs as the
    # shift-0 column of its family, so the gcd over the representatives
    # equals the gcd over all columns.
    g = term.c0 * core.v_power(m)
    reps = list(lifted.values()) + list(q_reps.values())
    for rep in reps:
        if g.is_constant():
            break
        if not rep.is_zero():
            g = gcd_poly(g, rep)
    if not g.is_constant():
        numerators = [exact_div(num, g) if not num.is_zero() else num
                      for num in numerators]

    monomials: set[tuple[int, int]] = set()
    for num in numerators:
        monomials.update(num.terms)
    row_index = tuple(sorted(monomials))
    row_pos = {mono: idx for idx, mono in enumerate(row_index)}

    matrix = [[0] * len(columns) for _ in row_index]
    for cidx, num in enumerate(numerators):
        for mono, coeff in num.terms.items():
            matrix[row_pos[mono]][cidx] = coeff

    p_cols = frozenset(idx for idx, tag in enumerate(columns) if tag[0] != "Q")
    return LinearSystem(tuple(tuple(row) for row in matrix), tuple(columns),
                        row_index, p_cols)
