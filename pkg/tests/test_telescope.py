from fractions import Fraction

import pytest

import corpus
from telescoper.polyarith import BiPoly, degree, parse_poly
from telescoper.hyperexp import greek_params
from telescoper.ansatz import NAIVE, certificate_shape
from telescoper.telescope import (
    TelescopingRelation,
    feasible,
    minimal_order_relation,
    region_scan,
    scalar_equivalent,
    telescope_at,
    verify_relation,
)
from telescoper import bounds

EXP_SQRT_RELATION = TelescopingRelation(
    1, 3, (parse_poly("3*x^3 - 6"), parse_poly("-2*x")), parse_poly("3*x - 4*y"), 0)


class TestTelescopeAt:
    def test_reference_order_one(self):
        t = corpus.exp_sqrt_term()
        rel = telescope_at(t, 1, 3)
        assert rel is not None
        assert scalar_equivalent(rel, EXP_SQRT_RELATION)

    def test_naive_mode_finds_same(self):
        t = corpus.exp_sqrt_term()
        rel = telescope_at(t, 1, 3, mode=NAIVE)
        assert rel is not None and scalar_equivalent(rel, EXP_SQRT_RELATION)

    def test_below_region_returns_none(self):
        t = corpus.intro_rational_term()
        assert telescope_at(t, 3, 10) is None

    def test_order_too_small_returns_none(self):
        t = corpus.intro_rational_term()
        assert telescope_at(t, 1, 10, mode=NAIVE) is None

    def test_relation_fits_naive_box(self):
        # a shaped solution is also a naive-ansatz solution at the same (r, d)
        t = corpus.u_exp_v_term()
        r, d = 2, 36
        rel = telescope_at(t, r, d)
        assert rel is not None and verify_relation(t, rel)
        assert rel.r <= r and rel.d <= d
        p = greek_params(t)
        cert = certificate_shape(p, r, d, 0, NAIVE)
        assert degree(rel.q_num, "x") <= cert.s1
        assert degree(rel.q_num, "y") <= cert.s2

    def test_validation_rejects_bad_orders(self):
        with pytest.raises(ValueError):
            telescope_at(corpus.exp_sqrt_term(), 0, 3)


class TestVerifyRelation:
    def test_reference_relation(self):
        assert verify_relation(corpus.exp_sqrt_term(), EXP_SQRT_RELATION)

    def test_perturbed_relation_fails(self):
        t = corpus.exp_sqrt_term()
        bad = TelescopingRelation(1, 3,
                                  (parse_poly("3*x^3 - 5"), parse_poly("-2*x")),
                                  parse_poly("3*x - 4*y"), 0)
        assert not verify_relation(t, bad)

    def test_zero_telescoper_rejected_at_construction(self):
        with pytest.raises(ValueError):
            TelescopingRelation(1, 0, (BiPoly.zero(), BiPoly.zero()),
                                BiPoly.one(), 0)

    def test_y_in_telescoper_rejected(self):
        with pytest.raises(ValueError):
            TelescopingRelation(0, 1, (parse_poly("x*y"),), BiPoly.zero(), 0)


class TestMinimalOrder:
    def test_exp_sqrt_minimal_order_one(self):
        rel = minimal_order_relation(corpus.exp_sqrt_term(), 3)
        assert rel is not None and rel.r == 1

    def test_rational_bound_from_denominator(self):
        # u/v with v irreducible-ish and deg_y u < deg_y v: order <= deg_y v
        u = BiPoly.one()
        v = parse_poly("x*y^2 + y + x + 3")
        t = corpus.HyperexpTerm(c0=u, a=BiPoly.zero(), b=BiPoly.one(),
                                factors=((v, Fraction(-1)),))
        rel = minimal_order_relation(t, 4)
        assert rel is not None
        assert rel.r <= degree(v, "y")

    def test_none_when_cap_too_small(self):
        t = corpus.intro_rational_term()
        assert minimal_order_relation(t, 1, d_cap=20) is None


class TestRegionScan:
    @pytest.fixture(scope="class")
    def small_region(self):
        # integrand for the sqrt(1+x) series: cheap systems
        from telescoper.algebraic import AlgebraicInput, to_hyperexp
        term = to_hyperexp(AlgebraicInput(parse_poly("y^2 - x - 1"), Fraction(1)))
        return term, region_scan(term, r_max=4, d_max=12, r_min=1)

    def test_monotone_boundary(self, small_region):
        _, rep = small_region
        bnd = rep.boundary
        orders = sorted(bnd)
        assert all(bnd[a] >= bnd[b] for a, b in zip(orders, orders[1:]))

    def test_upward_closure(self, small_region):
        _, rep = small_region
        for (r, d) in rep.feasible:
            if d + 1 <= rep.d_range[1]:
                assert (r, d + 1) in rep.feasible
            if r + 1 <= rep.r_range[1] and (r + 1) in rep.boundary:
                assert (r + 1, d) in rep.feasible

    def test_boundary_is_sharp(self, small_region):
        term, rep = small_region
        for r, dmin in rep.boundary.items():
            assert feasible(term, r, dmin)
            if dmin > 0:
                assert not feasible(term, r, dmin - 1)

    def test_feasible_matches_curve_guarantee(self, small_region):
        term, rep = small_region
        c = bounds.curve(greek_params(term))
        for r in range(max(c.psi + 1, rep.r_range[0]), rep.r_range[1] + 1):
            d = bounds.degree_for_order(c, r)
            if d <= rep.d_range[1]:
                assert (r, d) in rep.feasible

    def test_empty_window_rejected(self):
        with pytest.raises(ValueError):
            region_scan(corpus.exp_sqrt_term(), r_max=0, d_max=5)

    def test_threads_give_same_result(self, small_region):
        term, rep = small_region
        rep2 = region_scan(term, r_max=4, d_max=12, r_min=1, threads=3)
        assert rep2.boundary == rep.boundary
