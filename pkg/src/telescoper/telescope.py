"""Finding, verifying, and mapping telescoping relations.

``telescope_at`` builds the shaped (or naive) ansatz at a requested order
and degree, solves the exact linear system, and assembles a verified
relation from a kernel vector with a nonzero telescoper block.
``region_scan`` maps the set of feasible (order, degree) pairs by a
monotone search along each order, using the kernel test only.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .polyarith import BiPoly, degree, poly_str
from .hyperexp import HyperexpTerm, greek_params, term_core
from .ansatz import (
    CASE1,
    CASE2,
    CASE2P,
    NAIVE,
    ShapeError,
    build_system,
    certificate_shape,
    optimal_w,
    telescoper_shape,
    w_range,
)
from .exactsolve import QMatrix, kernel_block_vector, nullspace
from . import bounds

SHAPED = "SHAPED"


@dataclass(frozen=True)
class TelescopingRelation:
    """p_0 h + p_1 D_x h + ... + p_r D_x^r h = D_y (q_num h / (c0 v^k)).

    Here v = b * sqfp(b) * prod c_l and k = q_denom_power.  The p_i are
    univariate in x; p_r is allowed to be zero but not all of them.
    """

    r: int
    d: int
    p: tuple[BiPoly, ...]
    q_num: BiPoly
    q_denom_power: int

    def __post_init__(self):
        if all(pi.is_zero() for pi in self.p):
            raise ValueError("telescoper must be nonzero")
        for pi in self.p:
            if degree(pi, "y") > 0:
                raise ValueError("telescoper coefficients must be free of y")

    def __str__(self) -> str:
        parts = [f"({poly_str(pi)})*Dx^{i}" for i, pi in enumerate(self.p)
                 if not pi.is_zero()]
        return " + ".join(parts) + f"  with certificate power {self.q_denom_power}"


def _select_case(params, r: int, d: int) -> str:
    if params.case1:
        return CASE1
    if params.omega_is_nat and params.gamma - 1 + params.phi3 > params.omega:
        try:
            w_range(params, r, d, CASE2P)
            return CASE2P
        except ShapeError:
            pass
    return CASE2


def telescope_at(term: HyperexpTerm, r: int, d: int, mode: str = SHAPED,
                 w_override: Optional[int] = None) -> Optional[TelescopingRelation]:
    """A verified relation of order <= r and degree <= d, or None.

    SHAPED mode uses the case-appropriate shaped ansatz with the optimal
    cutoff (or the caller's override); NAIVE uses flat degree caps.
    Returns None when the system has no kernel vector with a nonzero
    telescoper block.
    """
    if r < 1 or d < 0:
        raise ValueError("need r >= 1 and d >= 0")
    params = greek_params(term)
    if mode == NAIVE:
        case = NAIVE
        w = 0
    else:
        case = _select_case(params, r, d)
        w = optimal_w(params, r, d, case) if w_override is None else w_override
    shape = telescoper_shape(params, r, d, w, case)
    cert = certificate_shape(params, r, d, w, case)
    system = build_system(term, shape, cert)
    basis = nullspace(QMatrix.from_rows(system.matrix) if system.matrix
                      else QMatrix(0, system.cols, ()))
    candidates = []
    for v in basis.vectors:
        if any(v[c] for c in system.p_column_set):
            candidates.append(_assemble(system, v, r, cert.denom_power))
    if not candidates:
        return None
    best = min(candidates, key=lambda rel: (rel.r, rel.d))
    rel = _normalize_relation(best)
    if not verify_relation(term, rel):
        raise AssertionError("assembled relation failed exact verification")
    return rel


def _assemble(system, vector, r: int, denom_power: int) -> TelescopingRelation:
    p = [BiPoly.zero() for _ in range(r + 1)]
    q_num = BiPoly.zero()
    for idx, tag in enumerate(system.col_index):
        val = vector[idx]
        if not val:
            continue
        if tag[0] == "P":
            _, i, j = tag
            p[i] = p[i] + BiPoly.monomial(j, 0, val)
        elif tag[0] == "PC":
            ct = tag[1]
            p[ct.i] = p[ct.i] + BiPoly.monomial(ct.j, 0, val * ct.self_coeff)
            p[ct.partner_i] = p[ct.partner_i] + BiPoly.monomial(
                ct.partner_j, 0, val * ct.partner_coeff)
        else:
            _, i, j = tag
            q_num = q_num + BiPoly.monomial(i, j, val)
    order = max(i for i, pi in enumerate(p) if not pi.is_zero())
    deg = max(int(degree(pi, "x")) for pi in p if not pi.is_zero())
    return TelescopingRelation(order, deg, tuple(p[:order + 1]), q_num, denom_power)


def _normalize_relation(rel: TelescopingRelation) -> TelescopingRelation:
    lead = None
    for pi in rel.p:
        for e in sorted(pi.terms):
            lead = pi.terms[e]
            break
        if lead is not None:
            break
    inv = 1 / Fraction(lead)
    return TelescopingRelation(rel.r, rel.d,
                               tuple(pi * inv for pi in rel.p),
                               rel.q_num * inv, rel.q_denom_power)


def verify_relation(term: HyperexpTerm, rel: TelescopingRelation) -> bool:
    """Exact check over the common denominator c0 * v^m."""
    core = term_core(term)
    k = rel.q_denom_power
    m = max(len(rel.p) - 1, k + 1)
    lhs = BiPoly.zero()
    for i, pi in enumerate(rel.p):
        if not pi.is_zero():
            lhs = lhs + pi * core.numerator(i) * core.v_power(m - i)
    w_cert = core.wy - core.v.diff("y") * k
    rhs = (core.v * rel.q_num.diff("y") + rel.q_num * w_cert) * core.v_power(m - k - 1)
    return lhs == rhs


def scalar_equivalent(rel1: TelescopingRelation, rel2: TelescopingRelation) -> bool:
    """True when the two relations agree up to one rational scalar."""
    return (_normalize_relation(rel1).p == _normalize_relation(rel2).p
            and _normalize_relation(rel1).q_num == _normalize_relation(rel2).q_num
            and rel1.q_denom_power == rel2.q_denom_power)


# ---------------------------------------------------------------------------
# feasibility and region scanning
# ---------------------------------------------------------------------------

def feasible(term: HyperexpTerm, r: int, d: int) -> bool:
    """Kernel test only: does the naive ansatz at (r, d) admit a relation?"""
    params = greek_params(term)
    try:
        shape = telescoper_shape(params, r, d, 0, NAIVE)
        cert = certificate_shape(params, r, d, 0, NAIVE)
    except ShapeError:
        return False
    system = build_system(term, shape, cert)
    if not system.matrix:
        return bool(system.p_column_set)
    vec = kernel_block_vector(QMatrix.from_rows(system.matrix), system.p_column_set)
    return vec is not None


@dataclass(frozen=True)
class RegionReport:
    """Feasible (order, degree) pairs in a window, as boundary + closure."""

    r_range: tuple[int, int]
    d_range: tuple[int, int]
    boundary: dict
    feasible: frozenset

    def minimal_degree(self, r: int) -> Optional[int]:
        return self.boundary.get(r)


def _min_feasible_degree(term, r: int, hi_feasible: int, probe) -> int:
    """Least feasible degree below a known-feasible one (monotone search).

    Gallops downward from the known-feasible point (boundaries usually sit
    close to it), then finishes with bisection inside the last bracket.
    """
    cur = hi_feasible
    step = 1
    while cur > 0:
        cand = max(cur - step, 0)
        if probe(term, r, cand):
            cur = cand
            step *= 2
        else:
            lo, hi = cand + 1, cur
            while lo < hi:
                mid = (lo + hi) // 2
                if probe(term, r, mid):
                    hi = mid
                else:
                    lo = mid + 1
            return lo
    return 0


def region_scan(term: HyperexpTerm, r_max: int, d_max: int, r_min: int = 1,
                threads: Optional[int] = None,
                probe=feasible) -> RegionReport:
    """Minimal feasible degree for each order in the window.

    Each order's search starts from the curve degree when that is inside
    the window (guaranteed feasible), else from d_max.  Orders whose whole
    degree window is infeasible are absent from the boundary.
    """
    if r_max < r_min or d_max < 0:
        raise ValueError("empty scan window")
    params = greek_params(term)
    curve = bounds.curve(params)

    def scan_column(r: int) -> Optional[tuple[int, int]]:
        hi = d_max
        if r >= curve.psi + 1:
            hi = min(d_max, bounds.degree_for_order(curve, r))
        if not probe(term, r, hi):
            if hi < d_max and probe(term, r, d_max):
                hi = d_max
            else:
                return None
        return r, _min_feasible_degree(term, r, hi, probe)

    orders = range(r_min, r_max + 1)
    if threads is None:
        threads = int(os.environ.get("TELESCOPER_THREADS", "1"))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(scan_column, orders))
    else:
        results = [scan_column(r) for r in orders]
    boundary = {r: d for rd in results if rd is not None for r, d in [rd]}
    feas = frozenset((r, d) for r, dmin in boundary.items()
                     for d in range(dmin, d_max + 1))
    return RegionReport((r_min, r_max), (0, d_max), boundary, feas)


def minimal_order_relation(term: HyperexpTerm, r_max: int,
                           d_cap: Optional[int] = None) -> Optional[TelescopingRelation]:
    """Relation at the smallest feasible order <= r_max, with minimal degree.

    Below the curve's minimal guaranteed order, feasibility is probed at
    d_cap (default: the curve degree at its minimal order); at and above
    it, at the curve degree itself.
    """
    if r_max < 1:
        raise ValueError("need r_max >= 1")
    params = greek_params(term)
    curve = bounds.curve(params)
    if d_cap is None:
        d_cap = bounds.degree_for_order(curve, max(curve.psi + 1, 1))
    for r in range(1, r_max + 1):
        hi = bounds.degree_for_order(curve, r) if r >= curve.psi + 1 else d_cap
        if not feasible(term, r, hi):
            continue
        d_min = _min_feasible_degree(term, r, hi, feasible)
        return telescope_at(term, r, d_min, mode=NAIVE)
    return None
