"""Exact dense linear algebra over the rationals.

The one operation that matters is an exact nullspace.  Matrices are first
scaled row-wise to integers (row scaling leaves the kernel unchanged).  Two
routes are provided:

* a fraction-free (Bareiss) forward elimination with first-nonzero pivoting
  and rational back-substitution -- simple, exact, and the reference route;
* a modular route for large systems: row echelon modulo a word-size prime
  (vectorized with numpy) to locate the pivot structure, then p-adic lifting
  with output-sensitive rational reconstruction for the kernel vectors.

Every vector produced by the modular route is verified exactly against the
full integer matrix, and the certified kernel dimension is pinned between
``cols - rank_p`` (an upper bound, since rank mod p never exceeds the true
rank) and the number of verified independent vectors, so the result is exact
regardless of the primes used.  Unlucky primes only cost a retry.  Both
routes return the same canonical basis: one vector per free column, with
value 1 at that free column and 0 at the other free columns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

try:
    import numpy as _np
except ImportError:  # pragma: no cover - numpy is a hard dependency
    _np = None

try:
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - optional speedup
    _mpz = int

#: Column-count threshold below which the fraction-free route is used directly.
SMALL_SYSTEM = 64

#: Entry-magnitude limit for the modular route (digit decomposition).
_MAX_ENTRY_BITS = 36

# 13-bit digit slices keep every float64 product of the BLAS-backed exact
# matrix arithmetic below 2**53 (digit * value * row-length < 2**47).
_SPLIT_BITS = 13


def _first_primes_below(bound: int, count: int) -> list[int]:
    out = []
    n = bound
    while len(out) < count:
        n -= 1
        if n % 2 == 0:
            continue
        d, is_p = 3, n % 2 != 0
        while d * d <= n:
            if n % d == 0:
                is_p = False
                break
            d += 2
        if is_p:
            out.append(n)
    return out


_PRIMES = _first_primes_below(1 << 25, 8)


@dataclass(frozen=True)
class QMatrix:
    """Dense matrix of exact rationals, row-major."""

    rows: int
    cols: int
    entries: tuple

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "QMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        flat = []
        for r in rows:
            if len(r) != nc:
                raise ValueError("ragged rows")
            flat.extend(r)
        return QMatrix(nr, nc, tuple(flat))

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def get(self, i: int, j: int):
        return self.entries[i * self.cols + j]


@dataclass(frozen=True)
class NullspaceBasis:
    """Canonical basis of an exact kernel (possibly empty)."""

    vectors: tuple

    @property
    def dimension(self) -> int:
        return len(self.vectors)


def nullspace(m: QMatrix, method: str = "auto") -> NullspaceBasis:
    """Exact kernel basis of m, canonical and deterministic.

    method: 'auto' (default), 'dense' (force fraction-free), or 'modular'.
    """
    rows = _integer_rows(m)
    if not rows:
        vecs = tuple(_unit_vector(m.cols, f) for f in range(m.cols))
        return NullspaceBasis(vecs)
    if _use_modular(method, m.cols, rows):
        basis = _nullspace_modular(rows, m.cols)
        if basis is not None:
            return basis
    return _nullspace_fraction_free(rows, m.cols)


def kernel_block_vector(m: QMatrix, block, method: str = "auto"):
    """Some exact kernel vector with a nonzero entry in the block, or None.

    Cheaper than a full nullspace when only feasibility is asked: on the
    modular route one verified vector certifies existence, and only the
    all-zero-on-block outcome requires the whole (verified) kernel.
    """
    cols = sorted(set(block))
    rows = _integer_rows(m)
    if not rows:
        return _unit_vector(m.cols, cols[0]) if cols else None
    if _use_modular(method, m.cols, rows):
        result = _nullspace_modular(rows, m.cols, block=cols)
        if result is not None:
            found, payload = result
            return payload if found else None
    return solution_with_nonzero_block(_nullspace_fraction_free(rows, m.cols), cols)


def _use_modular(method: str, cols: int, rows) -> bool:
    return (method == "modular"
            or (method == "auto" and _np is not None
                and cols > SMALL_SYSTEM
                and max(abs(e) for r in rows for e in r).bit_length() <= _MAX_ENTRY_BITS))


def solution_with_nonzero_block(basis: NullspaceBasis,
                                block: Iterable[int]) -> Optional[tuple]:
    """Some kernel vector whose restriction to the block is nonzero.

    If no basis vector has a nonzero entry in the block, none exists: the
    kernel vectors vanishing on the block form a subspace containing every
    basis vector, hence the whole kernel.
    """
    cols = set(block)
    for v in basis.vectors:
        if any(v[c] for c in cols):
            return v
    return None


# ---------------------------------------------------------------------------
# integerization
# ---------------------------------------------------------------------------

def _integer_rows(m: QMatrix) -> list[list[int]]:
    out = []
    for i in range(m.rows):
        r = m.row(i)
        if not any(r):
            continue
        den = 1
        for e in r:
            if isinstance(e, Fraction) and e.denominator != 1:
                den = den * e.denominator // math.gcd(den, e.denominator)
        ints = [int(e * den) if isinstance(e, Fraction) else int(e) * den for e in r]
        g = 0
        for e in ints:
            g = math.gcd(g, e)
            if g == 1:
                break
        if g > 1:
            ints = [e // g for e in ints]
        out.append(ints)
    return out


def _unit_vector(n: int, k: int) -> tuple:
    return tuple(Fraction(1) if i == k else Fraction(0) for i in range(n))


# ---------------------------------------------------------------------------
# fraction-free route
# ---------------------------------------------------------------------------

def _echelon_fraction_free(rows: list[list[int]], cols: int,
                           reverse_pivots: bool = False):
    """Bareiss forward elimination; returns (matrix, pivot columns).

    Pivot selection is the first nonzero entry scanning rows in ascending
    index (descending when reverse_pivots, used only for cross-checks).
    """
    m = [list(map(_mpz, r)) for r in rows]
    nr = len(m)
    piv_cols: list[int] = []
    prev = _mpz(1)
    pr = 0
    for c in range(cols):
        if pr >= nr:
            break
        rng = range(pr, nr) if not reverse_pivots else range(nr - 1, pr - 1, -1)
        pivot = next((i for i in rng if m[i][c]), None)
        if pivot is None:
            continue
        if pivot != pr:
            m[pr], m[pivot] = m[pivot], m[pr]
        pv = m[pr][c]
        for i in range(pr + 1, nr):
            fi = m[i][c]
            row_i, row_p = m[i], m[pr]
            if fi:
                for j in range(c + 1, cols):
                    row_i[j] = (pv * row_i[j] - fi * row_p[j]) // prev
                row_i[c] = _mpz(0)
            else:
                for j in range(c + 1, cols):
                    row_i[j] = (pv * row_i[j]) // prev
        prev = pv
        piv_cols.append(c)
        pr += 1
    return m, piv_cols


def _nullspace_fraction_free(rows: list[list[int]], cols: int) -> NullspaceBasis:
    m, piv_cols = _echelon_fraction_free(rows, cols)
    rank = len(piv_cols)
    free = [c for c in range(cols) if c not in set(piv_cols)]
    vectors = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for k in range(rank - 1, -1, -1):
            pc = piv_cols[k]
            s = Fraction(0)
            row = m[k]
            for j in range(pc + 1, cols):
                if row[j] and v[j]:
                    s += Fraction(int(row[j])) * v[j]
            v[pc] = -s / Fraction(int(row[pc]))
        vectors.append(tuple(v))
    return NullspaceBasis(tuple(vectors))


def rank_of(m: QMatrix, reverse_pivots: bool = False) -> int:
    """Exact rank by fraction-free elimination (cross-check helper)."""
    rows = _integer_rows(m)
    if not rows:
        return 0
    _, piv = _echelon_fraction_free(rows, m.cols, reverse_pivots=reverse_pivots)
    return len(piv)


# ---------------------------------------------------------------------------
# modular route
# ---------------------------------------------------------------------------

# Elimination works on float64 matrices holding integer values.  Pivot rows
# and factor columns are reduced to balanced residues (|.| <= p/2 < 2**24)
# before each rank-1 update, so one update adds at most 2**48 in magnitude;
# a full reduction every _MOD_BATCH pivots keeps everything below 2**53,
# hence every float64 operation is exact.
_MOD_BATCH = 16


def _balanced(v, p: int):
    v = _np.mod(v, p)
    return v - p * (v > p // 2)


def _echelon_mod_p(mat, p: int):
    """Row echelon mod p; returns (rank, pivot cols, original pivot row ids)."""
    m = (mat % p).astype(_np.float64)
    nr, nc = m.shape
    perm = list(range(nr))
    piv_cols, piv_rows = [], []
    pr = 0
    batch = 0
    for c in range(nc):
        if pr >= nr:
            break
        col = _np.mod(m[pr:, c], p)
        nz = _np.nonzero(col)[0]
        if nz.size == 0:
            m[pr:, c] = 0.0
            continue
        r0 = pr + int(nz[0])
        if r0 != pr:
            m[[pr, r0]] = m[[r0, pr]]
            perm[pr], perm[r0] = perm[r0], perm[pr]
            col[[0, r0 - pr]] = col[[r0 - pr, 0]]
        row = _balanced(m[pr, c:], p)
        m[pr, c:] = row
        if pr + 1 < nr:
            inv = pow(int(col[0]), p - 2, p)
            f = _balanced(col[1:] * float(inv), p)
            m[pr + 1:, c + 1:] -= _np.outer(f, row[1:])
            m[pr + 1:, c] = 0.0
        piv_cols.append(c)
        piv_rows.append(perm[pr])
        pr += 1
        batch += 1
        if batch >= _MOD_BATCH:
            m[pr:, c + 1:] = _np.mod(m[pr:, c + 1:], p)
            batch = 0
    return len(piv_cols), piv_cols, piv_rows


def _inverse_mod_p(a, p: int):
    """Inverse of a (assumed nonsingular mod p) by Gauss-Jordan mod p."""
    n = a.shape[0]
    m = _np.concatenate([(a % p).astype(_np.float64),
                         _np.eye(n, dtype=_np.float64)], axis=1)
    batch = 0
    for c in range(n):
        col = _np.mod(m[:, c], p)
        nz = _np.nonzero(col[c:])[0]
        if nz.size == 0:
            return None
        r0 = c + int(nz[0])
        if r0 != c:
            m[[c, r0]] = m[[r0, c]]
            col[[c, r0]] = col[[r0, c]]
        inv = pow(int(col[c]), p - 2, p)
        row = _np.mod(_np.mod(m[c, c:], p) * float(inv), p)
        row -= p * (row > p // 2)
        m[c, c:] = row
        f = _balanced(col, p)
        f[c] = 0.0
        m[:, c + 1:] -= _np.outer(f, row[1:])
        m[:, c] = 0.0
        m[c, c] = 1.0
        batch += 1
        if batch >= _MOD_BATCH:
            m[:, c + 1:] = _np.mod(m[:, c + 1:], p)
            batch = 0
    return _np.mod(m[:, n:], p).astype(_np.int64)


class _SplitMatvec:
    """Exact integer matvec via balanced 13-bit digit slices in float64.

    For |x| < 2**25 and row length < 2**11 each digit product sum stays
    below 2**50, so the BLAS matvecs are exact; digits are recombined in
    exact integer arithmetic.
    """

    def __init__(self, m):
        digits = []
        rem = m.astype(_np.int64).copy()
        half = 1 << (_SPLIT_BITS - 1)
        full = 1 << _SPLIT_BITS
        while _np.any(rem):
            low = ((rem + half) % full) - half
            digits.append(low.astype(_np.float64))
            rem = (rem - low) >> _SPLIT_BITS
        self.digits = digits or [_np.zeros(m.shape, dtype=_np.float64)]

    def __call__(self, x):
        xf = x.astype(_np.float64)
        total = None
        for k, d in enumerate(self.digits):
            y = _np.rint(d @ xf).astype(_np.int64).astype(object)
            y = y * (1 << (_SPLIT_BITS * k)) if k else y
            total = y if total is None else total + y
        return total


def _rational_reconstruct(x: int, m: int, bound: int):
    """n/d with n ≡ x*d (mod m), |n| <= bound, 0 < d <= bound; None if absent."""
    r0, r1 = _mpz(m), _mpz(x % m)
    t0, t1 = _mpz(0), _mpz(1)
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0:
        return None
    n, d = int(r1), int(t1)
    if d < 0:
        n, d = -n, -d
    if d > bound or math.gcd(abs(n), d) != 1:
        return None
    return n, d


class _DixonLifter:
    """p-adic lifting of the solution of A x = b (A square, invertible mod p)."""

    def __init__(self, a_exact, a_inv_p, p: int):
        self.p = p
        self.a_inv = _SplitMatvec(a_inv_p)
        self.a_mat = _SplitMatvec(a_exact)
        self.n = a_exact.shape[0]

    def solve(self, b, max_steps: int, verify_rows, full_verify):
        """Lift until rational reconstruction + verification succeed.

        verify_rows(vec) -> bool is a cheap probe; full_verify(vec) -> bool
        is the exact check.  Returns the solution as a list of Fractions, or
        None when max_steps is exhausted.
        """
        p = self.p
        half = p // 2
        r = _np.array([int(e) for e in b], dtype=object)
        x_acc = [0] * self.n
        p_pow = 1
        k = 0
        checkpoint = 16
        while k < max_steps:
            r_mod = (r % p).astype(_np.int64)
            xi = (self.a_inv(r_mod) % p).astype(_np.int64)
            xi = xi - p * (xi > half)  # balanced digits: terminating expansions
            r = (r - self.a_mat(xi)) // p
            xi_obj = xi.tolist()
            for i in range(self.n):
                if xi_obj[i]:
                    x_acc[i] += xi_obj[i] * p_pow
            p_pow *= p
            k += 1
            if not _np.any(r):
                sol = [Fraction(v) for v in x_acc]
                if full_verify(sol):
                    return sol
                return None
            if k >= checkpoint or k == max_steps:
                checkpoint *= 2
                sol = self._reconstruct(x_acc, p_pow)
                if sol is not None and verify_rows(sol) and full_verify(sol):
                    return sol
        return None

    def _reconstruct(self, x_acc, modulus):
        bound = math.isqrt(modulus // 2)
        if bound == 0:
            return None
        out = []
        den = 1
        for xi in x_acc:
            y = xi * den % modulus
            centered = y - modulus if y > modulus - y else y
            if abs(centered) <= bound:
                out.append((centered, 1))
                continue
            rec = _rational_reconstruct(y, modulus, bound)
            if rec is None:
                return None
            n, d = rec
            out.append((n, d))
            den *= d
        # entry_i = n_i / (d_i * prod of the d_j found before it)
        sol = []
        before = 1
        for n, d in out:
            sol.append(Fraction(n, before * d))
            before *= d
        return sol


def _nullspace_modular(rows: list[list[int]], cols: int, block=None):
    """Kernel via pivot structure mod p and verified p-adic lifting.

    block=None: the full canonical basis (NullspaceBasis) or None on failure.
    block given: (True, vector-with-nonzero-block) / (False, None), or None
    on failure; a single verified vector certifies the positive answer, and
    the negative one is certified by the full verified kernel.
    """
    mat = _np.array(rows, dtype=_np.int64)
    nrows = len(rows)
    for p in _PRIMES:
        rank, piv_cols, piv_rows = _echelon_mod_p(mat, p)
        if rank == cols:
            # rank mod p never exceeds the true rank, so the kernel is trivial
            return NullspaceBasis(()) if block is None else (False, None)
        free = [c for c in range(cols) if c not in set(piv_cols)]
        a_exact = mat[_np.ix_(piv_rows, piv_cols)]
        a_inv = _inverse_mod_p(a_exact, p)
        if a_inv is None:
            continue
        lifter = _DixonLifter(a_exact, a_inv, p)
        max_entry = int(_np.max(_np.abs(a_exact))) if rank else 0
        det_bits = rank * (max(max_entry, 2).bit_length() + rank.bit_length() / 2 + 1)
        max_steps = int((2 * det_bits + 16) / math.log2(p)) + 8
        probe_ids = list(range(0, nrows, max(1, nrows // 3)))[:3]

        def make_checks(fcol):
            # verification in cleared-denominator integer arithmetic: Fraction
            # dot products would pay a huge-gcd normalization per operation
            def verify_rows(sol):
                w, den = _clear_denominators(sol)
                return all(_dot_row_int(rows[i], piv_cols, w, fcol, den) == 0
                           for i in probe_ids)

            def full_verify(sol):
                w, den = _clear_denominators(sol)
                return all(_dot_row_int(rows[i], piv_cols, w, fcol, den) == 0
                           for i in range(nrows))

            return verify_rows, full_verify

        def lift(f):
            b = [-int(mat[i, f]) for i in piv_rows]
            verify_rows, full_verify = make_checks(f)
            sol = lifter.solve(b, max_steps, verify_rows, full_verify)
            if sol is None:
                return None
            v = [Fraction(0)] * cols
            v[f] = Fraction(1)
            for idx, c in enumerate(piv_cols):
                v[c] = sol[idx]
            return tuple(v)

        if block is None:
            vectors = []
            for f in free:
                v = lift(f)
                if v is None:
                    break
                vectors.append(v)
            else:
                return NullspaceBasis(tuple(vectors))
            continue

        blockset = set(block)
        piv_in_block = [idx for idx, c in enumerate(piv_cols) if c in blockset]
        candidates, others = [], []
        for f in free:
            if f in blockset:
                candidates.append(f)
                continue
            xp = (lifter.a_inv((-mat[piv_rows, f]) % p) % p).astype(_np.int64)
            if any(xp[idx] for idx in piv_in_block):
                candidates.append(f)
            else:
                others.append(f)
        failed = False
        for f in candidates:
            v = lift(f)
            if v is None:
                failed = True
                break
            return True, v
        if failed:
            continue
        # no candidate is visibly nonzero mod p: certify via the full kernel
        full = []
        for f in others:
            v = lift(f)
            if v is None:
                full = None
                break
            full.append(v)
        if full is None:
            continue
        for v in full:
            if any(v[c] for c in blockset):
                return True, v
        return False, None
    return None


def _clear_denominators(sol) -> tuple[list, int]:
    den = 1
    for s in sol:
        d = s.denominator
        den = den * d // math.gcd(den, d)
    big = _mpz(den)
    w = [_mpz(s.numerator) * (big // s.denominator) for s in sol]
    return w, big


def _dot_row_int(row: list[int], piv_cols: list[int], w: list[int],
                 fcol: int, den: int) -> int:
    s = row[fcol] * den
    for idx, c in enumerate(piv_cols):
        rc = row[c]
        if rc:
            wi = w[idx]
            if wi:
                s += rc * wi
    return s
