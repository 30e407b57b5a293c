"""Deterministic term corpus for property and soundness tests."""

from __future__ import annotations

import random
from fractions import Fraction

from telescoper.polyarith import BiPoly, gcd_poly, parse_poly, squarefree_part
from telescoper.hyperexp import HyperexpTerm, greek_params, validate


def dense_poly(rnd: random.Random, dx: int, dy: int, lo: int = 1, hi: int = 9) -> BiPoly:
    terms = {}
    for i in range(dx + 1):
        for j in range(dy + 1):
            terms[(i, j)] = rnd.randint(lo, hi)
    # force full degree in both variables
    terms[(dx, dy)] = rnd.randint(1, hi)
    return BiPoly(terms)


def _conforming_factor(rnd: random.Random, dx: int, dy: int, others) -> BiPoly:
    for _ in range(50):
        p = dense_poly(rnd, dx, dy)
        if squarefree_part(p) != p.normalized():
            continue
        if any(not gcd_poly(p, q).is_constant() for q in others):
            continue
        return p
    raise AssertionError("could not sample a conforming factor")


def random_case1_term(seed: int, coupled: bool = False) -> HyperexpTerm:
    """deg_x a > deg_x b; with coupled=True, lc_x a is constant (phi1 = 1)."""
    rnd = random.Random(seed)
    if coupled:
        a = BiPoly.monomial(2, 0, rnd.randint(1, 5)) + dense_poly(rnd, 1, 2)
    else:
        a = dense_poly(rnd, 2, 1)
    c1 = _conforming_factor(rnd, 1, 1, [])
    term = HyperexpTerm(c0=dense_poly(rnd, 1, 1), a=a, b=BiPoly.one(),
                        factors=((c1, Fraction(1, 2)),))
    assert validate(term) == []
    assert greek_params(term).case1
    return term


def random_case2_term(seed: int) -> HyperexpTerm:
    """Rational term u/v with a single square-free quadratic denominator."""
    rnd = random.Random(seed)
    v = _conforming_factor(rnd, 2, 2, [])
    term = HyperexpTerm(c0=dense_poly(rnd, 1, 1), a=BiPoly.zero(), b=BiPoly.one(),
                        factors=((v, Fraction(-1)),))
    assert validate(term) == []
    p = greek_params(term)
    assert not p.case1
    return term


def random_case2p_term(seed: int) -> HyperexpTerm:
    """omega natural and below gamma-1+phi3, so the sharpened shape applies."""
    rnd = random.Random(seed)
    for _ in range(40):
        c1 = _conforming_factor(rnd, 2, 4, [])
        term = HyperexpTerm(c0=dense_poly(rnd, 1, 1), a=BiPoly.zero(), b=BiPoly.one(),
                            factors=((c1, Fraction(-1, 2)),))
        if validate(term):
            continue
        p = greek_params(term)
        if (not p.case1 and p.omega_is_nat
                and p.gamma - 1 + p.phi3 > p.omega
                and p.delta_true == int(p.omega) + 1):
            return term
    raise AssertionError("could not sample a case-2' term")


def random_mixed_term(seed: int) -> HyperexpTerm:
    """Small random term of any shape (for structural property tests)."""
    rnd = random.Random(seed)
    kind = rnd.randrange(4)
    if kind == 0:
        return random_case1_term(seed * 31 + 1, coupled=bool(seed % 2))
    if kind == 1:
        return random_case2_term(seed * 31 + 2)
    if kind == 2:
        rnd2 = random.Random(seed * 31 + 3)
        a = dense_poly(rnd2, 1, 1)
        b = dense_poly(rnd2, 1, 1)
        c1 = _conforming_factor(rnd2, 1, 1, [b])
        return HyperexpTerm(c0=dense_poly(rnd2, 1, 0), a=a, b=b,
                            factors=((c1, Fraction(-1, 3)),))
    rnd2 = random.Random(seed * 31 + 4)
    c1 = _conforming_factor(rnd2, 1, 1, [])
    c2 = _conforming_factor(rnd2, 1, 1, [c1])
    return HyperexpTerm(c0=BiPoly.one(), a=dense_poly(rnd2, 1, 1), b=BiPoly.one(),
                        factors=((c1, Fraction(1, 2)), (c2, Fraction(-2, 1))))


# canonical example terms ----------------------------------------------------

def exp_sqrt_term() -> HyperexpTerm:
    return HyperexpTerm(c0=BiPoly.one(), a=parse_poly("x^2*y"), b=BiPoly.one(),
                        factors=((parse_poly("x - 2*y"), Fraction(1, 2)),))


def intro_rational_term() -> HyperexpTerm:
    u = parse_poly("3*x^2*y^2 + 9*x^2*y + 9*x^2 + 10*x*y^2 + 3*x*y + 4*x + 1")
    v = parse_poly("3*x^3*y^3 + 9*x^3*y^2 + x^3*y + 3*x^3 + 7*x^2*y^3 + 8*x^2*y^2"
                   " + 5*x^2 + 8*x*y^3 + 10*x*y^2 + 10*x*y + x + 5*y^3 + 10*y^2 + 5*y + 5")
    return HyperexpTerm(c0=u, a=BiPoly.zero(), b=BiPoly.one(),
                        factors=((v, Fraction(-1)),))


def u_exp_v_term() -> HyperexpTerm:
    u = parse_poly("7*x^3*y^3+8*x^3*y^2+9*x^3*y+3*x^3+10*x^2*y^3+2*x^2*y^2+3*x^2*y"
                   "+9*x^2+7*x*y^3+4*x*y^2+5*x*y+3*x+9*y^3+6*y^2+6*y+1")
    v = parse_poly("6*x^3*y^3+4*x^3*y^2+x^3*y+9*x^3+8*x^2*y^3+8*x^2*y^2+2*x^2*y"
                   "+8*x^2+3*x*y^3+7*x*y^2+4*x*y+8*x+5*y^3+2*y^2+7*y+6")
    return HyperexpTerm(c0=u, a=v, b=BiPoly.one(), factors=())


def exp_u_over_v_term() -> HyperexpTerm:
    u = parse_poly("4*x^2*y^2+7*x^2*y+9*x^2+5*x*y^2+2*x*y+3*x+5*y^2+y+6")
    v = parse_poly("6*x^2*y^2+10*x^2*y+6*x^2+9*x*y^2+5*x*y+8*x+8*y^2+10*y+8")
    return HyperexpTerm(c0=BiPoly.one(), a=u, b=BiPoly.one(),
                        factors=((v, Fraction(-1)),))


def rational_two_factor_term() -> HyperexpTerm:
    u = parse_poly("4*x^2*y^2+7*x^2*y+9*x^2+5*x*y^2+2*x*y+3*x+5*y^2+y+6")
    v1 = parse_poly("6*x^2*y^2+10*x^2*y+6*x^2+9*x*y^2+5*x*y+8*x+8*y^2+10*y+8")
    v2 = parse_poly("8*x^2*y^2+7*x^2*y+4*x^2+5*x*y^2+3*x*y+7*x+9*y^2+7*y+7")
    return HyperexpTerm(c0=u, a=BiPoly.zero(), b=BiPoly.one(),
                        factors=((v1, Fraction(-1)), (v2, Fraction(-1))))


def sqrt_u_term() -> HyperexpTerm:
    u = parse_poly("4*x^2*y^6+8*x^2*y^5+2*x^2*y^4+7*x^2*y^3+7*x^2*y^2+2*x^2*y+7*x^2"
                   "+10*x*y^6+7*x*y^5+9*x*y^4+4*x*y^3+5*x*y^2+5*x*y+7*x"
                   "+4*y^6+3*y^5+2*y^4+8*y^3+3*y^2+7*y+2")
    return HyperexpTerm(c0=BiPoly.one(), a=BiPoly.zero(), b=BiPoly.one(),
                        factors=((u, Fraction(1, 2)),))


def cost_tradeoff_term() -> HyperexpTerm:
    """Concrete instance with the degree profile of the cost-trade-off example."""
    return HyperexpTerm(
        c0=parse_poly("x^2*y^2 + x^2 + y^2 + x*y + x + y + 3"),
        a=parse_poly("x*y + 2*x + 3*y + 5"),
        b=parse_poly("2*x*y + x + y + 1"),
        factors=((parse_poly("x^4*y^6 + x^4 + y^6 + x^3*y^5 + x*y + x + y + 2"),
                  Fraction(1, 2)),))


def hc_polyomino_term() -> HyperexpTerm:
    return HyperexpTerm(
        c0=parse_poly("x*(1-y)^3"), a=BiPoly.zero(), b=BiPoly.one(),
        factors=((parse_poly("y"), Fraction(-1)),
                 (parse_poly("(1-y)^4 - x*(1 - y + x*y - y^2 + y^3)"), Fraction(-1))))


def univariate_table_term() -> HyperexpTerm:
    """y-free rational function used for the derivative-quotient table."""
    return HyperexpTerm(c0=parse_poly("2*x^5 - 3*x^4 + 5"), a=BiPoly.zero(),
                        b=BiPoly.one(),
                        factors=((parse_poly("3*x^3 - 4*x + 8"), Fraction(-1)),))
