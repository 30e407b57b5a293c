import random
from fractions import Fraction

import pytest

from telescoper.exactsolve import (
    NullspaceBasis,
    QMatrix,
    nullspace,
    rank_of,
    solution_with_nonzero_block,
)


def check_kernel(m: QMatrix, basis: NullspaceBasis):
    for v in basis.vectors:
        for i in range(m.rows):
            assert sum(m.get(i, j) * v[j] for j in range(m.cols)) == 0


class TestNullspacePins:
    def test_identity(self):
        m = QMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        assert nullspace(m).vectors == ()

    def test_single_row(self):
        m = QMatrix.from_rows([[1, -1]])
        assert nullspace(m).vectors == ((Fraction(1), Fraction(1)),)

    def test_rank_two(self):
        m = QMatrix.from_rows([[1, 0, 1], [0, 1, 1]])
        ns = nullspace(m)
        assert ns.vectors == ((Fraction(-1), Fraction(-1), Fraction(1)),)

    def test_zero_matrix(self):
        m = QMatrix.from_rows([[0, 0], [0, 0]])
        ns = nullspace(m)
        assert ns.dimension == 2


class TestNonzeroBlock:
    def test_direct_hit(self):
        b = NullspaceBasis(((Fraction(1), Fraction(0)),))
        assert solution_with_nonzero_block(b, {0}) == (Fraction(1), Fraction(0))

    def test_no_candidate(self):
        b = NullspaceBasis(((Fraction(0), Fraction(1)),))
        assert solution_with_nonzero_block(b, {0}) is None

    def test_second_vector(self):
        b = NullspaceBasis(((Fraction(0), Fraction(1)), (Fraction(1), Fraction(1))))
        assert solution_with_nonzero_block(b, {0}) == (Fraction(1), Fraction(1))


class TestRoutesAgree:
    @pytest.mark.parametrize("seed", range(20))
    def test_random_small(self, seed):
        rnd = random.Random(seed)
        nr, nc = rnd.randrange(1, 10), rnd.randrange(1, 10)
        rows = [[Fraction(rnd.randrange(-6, 7), rnd.randrange(1, 4))
                 for _ in range(nc)] for _ in range(nr)]
        if nr > 2:
            rows[-1] = [a + b for a, b in zip(rows[0], rows[1])]
        m = QMatrix.from_rows(rows)
        dense = nullspace(m, method="dense")
        modular = nullspace(m, method="modular")
        assert dense.vectors == modular.vectors
        check_kernel(m, dense)
        assert dense.dimension == m.cols - rank_of(m)

    def test_medium_planted_kernel(self):
        rnd = random.Random(99)
        nr, nc = 120, 110
        rows = [[rnd.randrange(-9, 10) if rnd.random() < 0.5 else 0
                 for _ in range(nc)] for _ in range(nr)]
        for r in rows:
            r[7] = 2 * r[3] - r[5]
        m = QMatrix.from_rows(rows)
        dense = nullspace(m, method="dense")
        modular = nullspace(m, method="modular")
        assert dense.vectors == modular.vectors
        assert dense.dimension >= 1
        check_kernel(m, modular)

    def test_determinism(self):
        rnd = random.Random(4)
        rows = [[rnd.randrange(-50, 51) for _ in range(40)] for _ in range(35)]
        m = QMatrix.from_rows(rows)
        assert nullspace(m).vectors == nullspace(m).vectors
        assert nullspace(m, method="modular").vectors \
            == nullspace(m, method="modular").vectors


class TestRank:
    @pytest.mark.parametrize("seed", range(10))
    def test_pivot_order_invariance(self, seed):
        rnd = random.Random(seed + 1000)
        nr, nc = rnd.randrange(2, 8), rnd.randrange(2, 8)
        rows = [[rnd.randrange(-4, 5) for _ in range(nc)] for _ in range(nr)]
        m = QMatrix.from_rows(rows)
        assert rank_of(m) == rank_of(m, reverse_pivots=True)

    def test_kernel_dimension_identity(self):
        rnd = random.Random(5)
        rows = [[rnd.randrange(-3, 4) for _ in range(12)] for _ in range(9)]
        m = QMatrix.from_rows(rows)
        assert nullspace(m).dimension == m.cols - rank_of(m)
