import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from telescoper.polyarith import BiPoly


def small_bipoly(max_deg=3, max_terms=5, coeff_range=6, allow_zero=True):
    """Hypothesis strategy for small exact bivariate polynomials."""
    coeffs = st.fractions(min_value=-coeff_range, max_value=coeff_range,
                          max_denominator=4)
    term = st.tuples(st.integers(0, max_deg), st.integers(0, max_deg), coeffs)
    min_size = 0 if allow_zero else 1
    return st.lists(term, min_size=min_size, max_size=max_terms).map(
        lambda ts: BiPoly({(i, j): c for i, j, c in ts}))


def nonzero_bipoly(max_deg=3, max_terms=5, coeff_range=6):
    return small_bipoly(max_deg, max_terms, coeff_range, allow_zero=False).filter(
        lambda p: not p.is_zero())


@pytest.fixture(scope="session")
def rng():
    return random.Random(20260808)
