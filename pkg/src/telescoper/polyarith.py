"""Exact arithmetic for bivariate polynomials and rational functions.

Everything in this module is exact: coefficients are arbitrary-precision
rationals, polynomials are sparse maps from exponent pairs to nonzero
coefficients, and rational functions are kept in a canonical reduced form
(coprime numerator/denominator, denominator monic with respect to the
graded-lexicographic term order).  No floating point is used anywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

Rat = Fraction

#: Degree of the zero polynomial.  Compares below every integer.
MINUS_INFINITY = float("-inf")

Coeff = Union[int, Fraction]


def _canon_coeff(c: Coeff) -> Coeff:
    """Collapse integral fractions to plain ints (cheaper arithmetic)."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _glex_key(expo: tuple[int, int]) -> tuple[int, int]:
    i, j = expo
    return (i + j, i)


class BiPoly:
    """A polynomial in ``x`` and ``y`` with exact rational coefficients.

    Instances are immutable; all operations return new polynomials.  The
    zero polynomial has an empty term map.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], Coeff] | None = None):
        clean: dict[tuple[int, int], Coeff] = {}
        if terms:
            for (i, j), c in terms.items():
                c = _canon_coeff(c)
                if c:
                    clean[(int(i), int(j))] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("BiPoly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "BiPoly":
        return _ZERO

    @staticmethod
    def one() -> "BiPoly":
        return _ONE

    @staticmethod
    def const(c: Coeff) -> "BiPoly":
        return BiPoly({(0, 0): Fraction(c)})

    @staticmethod
    def monomial(i: int, j: int, c: Coeff = 1) -> "BiPoly":
        return BiPoly({(i, j): Fraction(c)})

    @staticmethod
    def var(name: str) -> "BiPoly":
        if name == "x":
            return BiPoly({(1, 0): 1})
        if name == "y":
            return BiPoly({(0, 1): 1})
        raise ValueError(f"unknown variable {name!r}")

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0, 0) in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return Fraction(self.terms[(0, 0)])

    def coeff(self, i: int, j: int) -> Fraction:
        return Fraction(self.terms.get((i, j), 0))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(frozenset((e, Fraction(c)) for e, c in self.terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        return f"BiPoly({poly_str(self)!r})"

    def __str__(self) -> str:
        return poly_str(self)

    # -- ring operations ---------------------------------------------------

    def __neg__(self) -> "BiPoly":
        return BiPoly({e: -c for e, c in self.terms.items()})

    def __add__(self, other: "BiPoly") -> "BiPoly":
        if not isinstance(other, BiPoly):
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
        res = dict(self.terms)
        for e, c in other.terms.items():
            s = res.get(e, 0) + c
            if s:
                res[e] = s
            else:
                res.pop(e, None)
        return BiPoly(res)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other) -> "BiPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return _ZERO
            return BiPoly({e: c * other for e, c in self.terms.items()})
        if not isinstance(other, BiPoly):
            return NotImplemented
        if not self.terms or not other.terms:
            return _ZERO
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        res: dict[tuple[int, int], Coeff] = {}
        for (i1, j1), c1 in a.items():
            for (i2, j2), c2 in b.items():
                e = (i1 + i2, j1 + j2)
                s = res.get(e, 0) + c1 * c2
                if s:
                    res[e] = s
                else:
                    res.pop(e, None)
        return BiPoly(res)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = _ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def shift(self, di: int, dj: int) -> "BiPoly":
        """Multiply by the monomial x^di * y^dj."""
        if not self.terms:
            return _ZERO
        return BiPoly({(i + di, j + dj): c for (i, j), c in self.terms.items()})

    def scale(self, c: Coeff) -> "BiPoly":
        return self * c

    # -- calculus and structure -------------------------------------------

    def diff(self, var: str) -> "BiPoly":
        res: dict[tuple[int, int], Coeff] = {}
        if var == "x":
            for (i, j), c in self.terms.items():
                if i:
                    res[(i - 1, j)] = c * i
        elif var == "y":
            for (i, j), c in self.terms.items():
                if j:
                    res[(i, j - 1)] = c * j
        else:
            raise ValueError(f"unknown variable {var!r}")
        return BiPoly(res)

    def lead_exponent(self) -> tuple[int, int]:
        """Exponent of the graded-lex leading term (error on zero)."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=_glex_key)

    def lead_coeff_glex(self) -> Fraction:
        return Fraction(self.terms[self.lead_exponent()])

    def normalized(self) -> "BiPoly":
        """Scalar multiple with graded-lex leading coefficient 1."""
        if not self.terms:
            return _ZERO
        lc = self.lead_coeff_glex()
        if lc == 1:
            return self
        inv = 1 / lc
        return BiPoly({e: c * inv for e, c in self.terms.items()})

    def eval_y(self, y0: Coeff) -> dict[int, Fraction]:
        """Coefficients (by x-power) of the substitution y = y0."""
        out: dict[int, Fraction] = {}
        for (i, j), c in self.terms.items():
            out[i] = out.get(i, 0) + Fraction(c) * Fraction(y0) ** j
        return {i: c for i, c in out.items() if c}

    def x_coeffs(self) -> dict[int, "BiPoly"]:
        """Split into coefficients of powers of x (each a polynomial in y)."""
        out: dict[int, dict[tuple[int, int], Coeff]] = {}
        for (i, j), c in self.terms.items():
            out.setdefault(i, {})[(0, j)] = c
        return {i: BiPoly(t) for i, t in out.items()}


_ZERO = BiPoly()
_ONE = BiPoly({(0, 0): 1})


# ---------------------------------------------------------------------------
# degree / leading coefficient with respect to one variable
# ---------------------------------------------------------------------------

def degree(p: BiPoly, var: str):
    """Degree of p in the given variable; MINUS_INFINITY for the zero poly."""
    if not p.terms:
        return MINUS_INFINITY
    k = 0 if var == "x" else 1 if var == "y" else None
    if k is None:
        raise ValueError(f"unknown variable {var!r}")
    return max(e[k] for e in p.terms)


def leading_coeff(p: BiPoly, var: str) -> BiPoly:
    """Coefficient of var^deg(p, var), a polynomial in the other variable.

    The leading coefficient of the zero polynomial is 0.
    """
    if not p.terms:
        return _ZERO
    d = degree(p, var)
    if var == "x":
        return BiPoly({(0, j): c for (i, j), c in p.terms.items() if i == d})
    return BiPoly({(i, 0): c for (i, j), c in p.terms.items() if j == d})


# ---------------------------------------------------------------------------
# exact division
# ---------------------------------------------------------------------------

def try_exact_div(p: BiPoly, q: BiPoly) -> BiPoly | None:
    """p / q when q divides p exactly, else None."""
    if q.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if p.is_zero():
        return _ZERO
    if q.is_constant():
        inv = 1 / q.constant_value()
        return p * inv
    qlead = q.lead_exponent()
    qlc = q.terms[qlead]
    rem = dict(p.terms)
    quot: dict[tuple[int, int], Coeff] = {}
    qi, qj = qlead
    qitems = list(q.terms.items())
    while rem:
        e = max(rem, key=_glex_key)
        i, j = e
        if i < qi or j < qj:
            return None
        t = (i - qi, j - qj)
        c = _canon_coeff(Fraction(rem[e]) / Fraction(qlc))
        quot[t] = c
        ti, tj = t
        for (bi, bj), bc in qitems:
            k = (bi + ti, bj + tj)
            s = rem.get(k, 0) - c * bc
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return BiPoly(quot)


def exact_div(p: BiPoly, q: BiPoly) -> BiPoly:
    """p / q, raising ValueError when the division is not exact."""
    r = try_exact_div(p, q)
    if r is None:
        raise ValueError("inexact polynomial division")
    return r


# ---------------------------------------------------------------------------
# univariate helpers (dense lists of Fractions) used by the gcd machinery
# ---------------------------------------------------------------------------

def _uni_trim(u: list) -> list:
    while u and not u[-1]:
        u.pop()
    return u


def _uni_to_primitive_int(u: list) -> list[int]:
    """Scale a coefficient list to primitive integers (positive leading coeff)."""
    u = _uni_trim(list(u))
    if not u:
        return []
    den = 1
    for c in u:
        if isinstance(c, Fraction) and c.denominator != 1:
            den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) if isinstance(c, Fraction) else int(c) * den for c in u]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
        if g == 1:
            break
    if ints[-1] < 0:
        g = -g
    if g not in (0, 1):
        ints = [c // g for c in ints]
    return ints


def _uni_gcd_int(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd in Z[t] by a primitive pseudo-remainder sequence."""
    a, b = _uni_to_primitive_int(a), _uni_to_primitive_int(b)
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while True:
        db, lb = len(b) - 1, b[-1]
        r = list(a)
        while r and len(r) - 1 >= db:
            la, sh = r[-1], len(r) - 1 - db
            for k in range(db):
                r[sh + k] = r[sh + k] * lb - la * b[k]
            r[-1] = 0
            for k in range(sh):
                r[k] *= lb
            _uni_trim(r)
        if not r:
            return b
        if len(r) == 1:
            return [1]
        a, b = b, _uni_to_primitive_int(r)


def _uni_gcd(a: list, b: list) -> list:
    """Monic gcd of two univariate polynomials (dense coeff lists)."""
    g = _uni_gcd_int(a, b)
    if not g:
        return []
    lc = g[-1]
    return [_canon_coeff(Fraction(c, lc)) for c in g]


def _poly_to_uni_y(p: BiPoly) -> list:
    """Dense y-coefficient list of a polynomial free of x."""
    if not p.terms:
        return []
    d = max(j for (_, j) in p.terms)
    out = [0] * (d + 1)
    for (i, j), c in p.terms.items():
        if i:
            raise ValueError("polynomial involves x")
        out[j] = c
    return out


def _uni_y_to_poly(u: list) -> BiPoly:
    return BiPoly({(0, j): c for j, c in enumerate(u) if c})


def _poly_primitive_int(p: BiPoly) -> BiPoly:
    """Scalar multiple of p with primitive integer coefficients."""
    if not p.terms:
        return _ZERO
    den = 1
    for c in p.terms.values():
        if isinstance(c, Fraction) and c.denominator != 1:
            den = den * c.denominator // math.gcd(den, c.denominator)
    g = 0
    for c in p.terms.values():
        g = math.gcd(g, int(c * den) if isinstance(c, Fraction) else int(c) * den)
        if g == 1:
            break
    if g == 0:
        return _ZERO
    scale = Fraction(den, g)
    return p * scale if scale != 1 else p


def _content_y(p: BiPoly) -> BiPoly:
    """Primitive gcd in Z[y] of the x-coefficients of p (0 for p = 0)."""
    if not p.terms:
        return _ZERO
    cols = p.x_coeffs()
    g: list = []
    for i in sorted(cols):
        g = _uni_gcd_int(g, _uni_to_primitive_int(_poly_to_uni_y(cols[i])))
        if len(g) == 1:
            break
    return _uni_y_to_poly(g)


def _uni_gcd_x(a: dict[int, Fraction], b: dict[int, Fraction]) -> int:
    """Degree of the gcd of two univariate-in-x polynomials over Q mod a prime.

    Uses arithmetic modulo a fixed word-size prime; the returned degree is an
    upper bound for the rational gcd degree except for unluckily chosen
    primes, and equals 0 only if the rational gcd is constant (sound for the
    coprimality fast path).  Returns -1 when the modular image degenerates.
    """
    p = 2147483629
    def reduce(u: dict[int, Fraction]) -> list | None:
        if not u:
            return []
        d = max(u)
        out = [0] * (d + 1)
        for i, c in u.items():
            c = Fraction(c)
            if c.denominator % p == 0:
                return None
            out[i] = c.numerator * pow(c.denominator, p - 2, p) % p
        while out and not out[-1]:
            out.pop()
        return out

    fa, fb = reduce(a), reduce(b)
    if fa is None or fb is None or len(fa) != (max(a) + 1 if a else 0) \
            or len(fb) != (max(b) + 1 if b else 0):
        return -1
    while fb:
        db, lb = len(fb) - 1, fb[-1]
        inv = pow(lb, p - 2, p)
        while fa and len(fa) - 1 >= db:
            f = fa[-1] * inv % p
            sh = len(fa) - 1 - db
            for k in range(db + 1):
                fa[sh + k] = (fa[sh + k] - f * fb[k]) % p
            while fa and not fa[-1]:
                fa.pop()
        fa, fb = fb, fa
    return len(fa) - 1


def _coprime_fast(p: BiPoly, q: BiPoly) -> bool:
    """Sound quick test that gcd(p, q) is constant (False = inconclusive)."""
    lp = leading_coeff(p, "x")
    lq = leading_coeff(q, "x")
    for y0 in (0, 1, -1, 2, 3):
        if not lp.eval_y(y0) and not lq.eval_y(y0):
            continue
        d = _uni_gcd_x(p.eval_y(y0), q.eval_y(y0))
        if d != 0:
            return False
        # gcd is free of x; it divides both y-contents
        cy = _uni_gcd(_poly_to_uni_y(_content_y(p)), _poly_to_uni_y(_content_y(q)))
        return len(cy) == 1
    return False


def _primitive_x(p: BiPoly) -> tuple[BiPoly, BiPoly]:
    """(content, primitive part) with respect to Z[y] as coefficient ring."""
    p = _poly_primitive_int(p)
    cont = _content_y(p)
    if cont.is_constant():
        return _ONE, p
    return cont, exact_div(p, cont)


def _eval_gcd_x(p: BiPoly, q: BiPoly) -> BiPoly | None:
    """Gcd of primitive p, q by y-evaluation and interpolation, or None.

    Univariate gcds at enough sample points are scaled to the leading
    coefficient gcd and interpolated; specializing can only inflate the
    gcd, so retaining minimal-degree images and checking divisibility of
    the interpolated candidate at the end makes the result exact whenever
    one is returned.
    """
    lp, lq = leading_coeff(p, "x"), leading_coeff(q, "x")
    gamma = _uni_gcd_int(_poly_to_uni_y(lp), _poly_to_uni_y(lq))
    gamma_poly = _uni_y_to_poly(gamma)
    dy = min(_deg0(p, "y"), _deg0(q, "y")) + len(gamma) - 1
    needed = dy + 1
    images: list[tuple[int, list]] = []
    best = None
    idx = 0
    while len(images) < needed and idx < 4 * needed + 24:
        point = (idx + 1) // 2 if idx % 2 == 1 else -(idx // 2)
        idx += 1
        gval = _eval_uni(gamma, point)
        if not gval:
            continue
        up = _uni_from_eval(p, point)
        uq = _uni_from_eval(q, point)
        if len(up) - 1 != _deg0(p, "x") or len(uq) - 1 != _deg0(q, "x"):
            continue
        u = _uni_gcd_int(up, uq)
        d = len(u) - 1
        if d == 0:
            return _ONE
        if best is None or d < best:
            best, images = d, []
        if d == best:
            scale = Fraction(gval) / u[-1]
            images.append((point, [c * scale for c in u]))
    if best is None or len(images) < needed:
        return None
    cand = _interpolate_images(images, best)
    if cand is None:
        return None
    cand = _primitive_x(_poly_primitive_int(cand))[1]
    if try_exact_div(p, cand) is None or try_exact_div(q, cand) is None:
        return None
    return cand


def _deg0(p: BiPoly, var: str) -> int:
    d = degree(p, var)
    return 0 if d == MINUS_INFINITY else int(d)


def _eval_uni(coeffs: list, y0: int):
    total = 0
    for c in reversed(coeffs):
        total = total * y0 + c
    return total


def _uni_from_eval(p: BiPoly, y0: int) -> list:
    vals = p.eval_y(y0)
    if not vals:
        return []
    out = [0] * (max(vals) + 1)
    for i, c in vals.items():
        out[i] = c
    return out


def _interpolate_images(images: list, deg_x: int) -> BiPoly | None:
    """Newton interpolation in y of the scaled univariate gcd images."""
    points = [Fraction(pt) for pt, _ in images]
    terms: dict[tuple[int, int], Fraction] = {}
    for k in range(deg_x + 1):
        values = [Fraction(u[k]) if k < len(u) else Fraction(0) for _, u in images]
        # divided differences
        coeffs = list(values)
        n = len(points)
        for j in range(1, n):
            for i in range(n - 1, j - 1, -1):
                denom = points[i] - points[i - j]
                coeffs[i] = (coeffs[i] - coeffs[i - 1]) / denom
        # expand the Newton form into monomial coefficients
        poly = [Fraction(0)] * n
        acc = [Fraction(1)]
        for j in range(n):
            for e, c in enumerate(acc):
                poly[e] += coeffs[j] * c
            if j < n - 1:
                nxt = [Fraction(0)] * (len(acc) + 1)
                for e, c in enumerate(acc):
                    nxt[e] -= c * points[j]
                    nxt[e + 1] += c
                acc = nxt
        for e, c in enumerate(poly):
            if c:
                terms[(k, e)] = c
    return BiPoly(terms)


def _pseudo_rem_x(f: BiPoly, g: BiPoly) -> BiPoly:
    """Standard pseudo-remainder lc_x(g)^(deg f - deg g + 1) * f mod g."""
    df, dg = degree(f, "x"), degree(g, "x")
    lg = leading_coeff(g, "x")
    r = f
    scale = df - dg + 1
    while not r.is_zero():
        dr = degree(r, "x")
        if dr < dg:
            break
        lr = leading_coeff(r, "x")
        r = r * lg - g * lr.shift(dr - dg, 0)
        scale -= 1
    if scale > 0 and not r.is_zero():
        r = r * lg ** scale
    return r


def gcd_poly(p: BiPoly, q: BiPoly) -> BiPoly:
    """A gcd of p and q, primitive and normalized (glex-monic).

    gcd(p, 0) is the normalization of p; gcd(0, 0) = 0.  Computed by a
    primitive polynomial remainder sequence over K[y] with x as the main
    variable, with a cheap modular pre-test for the (common) coprime case.
    """
    if p.is_zero():
        return q.normalized()
    if q.is_zero():
        return p.normalized()
    if p.is_constant() or q.is_constant():
        return _ONE
    dpx, dqx = degree(p, "x"), degree(q, "x")
    if dpx == 0 and dqx == 0:
        return _uni_y_to_poly(_uni_gcd(_poly_to_uni_y(p), _poly_to_uni_y(q))).normalized()
    if dpx == 0:
        return _uni_y_to_poly(_uni_gcd(_poly_to_uni_y(p), _poly_to_uni_y(_content_y(q)))).normalized()
    if dqx == 0:
        return _uni_y_to_poly(_uni_gcd(_poly_to_uni_y(q), _poly_to_uni_y(_content_y(p)))).normalized()
    if _coprime_fast(p, q):
        return _ONE
    cp, fp = _primitive_x(p)
    cq, fq = _primitive_x(q)
    cont = _uni_y_to_poly(_uni_gcd_int(_poly_to_uni_y(cp), _poly_to_uni_y(cq)))
    if degree(fp, "x") < degree(fq, "x"):
        fp, fq = fq, fp
    fast = _eval_gcd_x(fp, fq)
    if fast is not None:
        return (cont * fast).normalized()
    # subresultant remainder sequence: pseudo-remainders shrunk by the known
    # divisor g*h^d, which contains coefficient growth without any content
    # computations along the way
    gg, hh = _ONE, _ONE
    while True:
        d = int(degree(fp, "x")) - int(degree(fq, "x"))
        r = _pseudo_rem_x(fp, fq)
        if r.is_zero():
            g = _primitive_x(fq)[1]
            break
        if degree(r, "x") == 0:
            g = _ONE
            break
        fp, fq = fq, exact_div(r, gg * hh ** d)
        gg = leading_coeff(fp, "x")
        if d == 1:
            hh = gg
        elif d > 1:
            hh = exact_div(gg ** d, hh ** (d - 1))
    return (cont * g).normalized()


def lcm_poly(p: BiPoly, q: BiPoly) -> BiPoly:
    if p.is_zero() or q.is_zero():
        return _ZERO
    return exact_div(p * q, gcd_poly(p, q)).normalized()


def squarefree_part(p: BiPoly) -> BiPoly:
    """Product of the distinct irreducible factors of p, glex-monic.

    Uses the derivative-gcd method once per variable; factors involving only
    one of the variables are picked up by the corresponding pass and the two
    results are merged with an lcm.
    """
    if p.is_zero():
        raise ValueError("square-free part of the zero polynomial")
    if p.is_constant():
        return _ONE
    parts = []
    for var in ("x", "y"):
        dp = p.diff(var)
        if not dp.is_zero():
            parts.append(exact_div(p, gcd_poly(p, dp)))
    if len(parts) == 1:
        return parts[0].normalized()
    return lcm_poly(parts[0], parts[1])


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RatFun:
    """A reduced bivariate rational function num/den.

    Invariants: den != 0, gcd(num, den) constant, den glex-monic.  Use
    :func:`rf_normalize` (or the arithmetic operators) to construct values.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: BiPoly, den: BiPoly, _normalized: bool = False):
        if not _normalized:
            f = rf_normalize(num, den)
            num, den = f.num, f.den
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("RatFun is immutable")

    @staticmethod
    def from_poly(p: BiPoly) -> "RatFun":
        return RatFun(p, _ONE, _normalized=True)

    @staticmethod
    def zero() -> "RatFun":
        return RatFun(_ZERO, _ONE, _normalized=True)

    @staticmethod
    def one() -> "RatFun":
        return RatFun(_ONE, _ONE, _normalized=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == _ONE

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RatFun({poly_str(self.num)!r}, {poly_str(self.den)!r})"

    def __neg__(self) -> "RatFun":
        return RatFun(-self.num, self.den, _normalized=True)

    def __add__(self, other: "RatFun") -> "RatFun":
        if not isinstance(other, RatFun):
            return NotImplemented
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den,
                      self.den * other.den)

    def __sub__(self, other: "RatFun") -> "RatFun":
        return self + (-other)

    def __mul__(self, other) -> "RatFun":
        if isinstance(other, (int, Fraction)):
            return RatFun(self.num * other, self.den, _normalized=bool(other))
        if not isinstance(other, RatFun):
            return NotImplemented
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: "RatFun") -> "RatFun":
        if not isinstance(other, RatFun):
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def diff(self, var: str) -> "RatFun":
        return rf_diff(self, var)


def rf_normalize(num: BiPoly, den: BiPoly) -> RatFun:
    """Reduced, canonically normalized rational function num/den."""
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return RatFun(_ZERO, _ONE, _normalized=True)
    g = gcd_poly(num, den)
    if not g.is_constant():
        num, den = exact_div(num, g), exact_div(den, g)
    lc = den.lead_coeff_glex()
    if lc != 1:
        inv = 1 / lc
        num, den = num * inv, den * inv
    return RatFun(num, den, _normalized=True)


def rf_diff(f: RatFun, var: str) -> RatFun:
    """Partial derivative of a rational function (quotient rule)."""
    if f.den == _ONE:
        return RatFun(f.num.diff(var), _ONE, _normalized=True)
    return rf_normalize(f.num.diff(var) * f.den - f.num * f.den.diff(var),
                        f.den * f.den)


# ---------------------------------------------------------------------------
# parsing and printing
# ---------------------------------------------------------------------------

class ParseError(ValueError):
    """Syntax error in the polynomial grammar, with a character position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class _Tokens:
    def __init__(self, src: str):
        self.src = src
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def take(self) -> str:
        c = self.peek()
        self.pos += 1
        return c

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.src) and self.src[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected an integer", start)
        return int(self.src[start:self.pos])


def parse_poly(src: str) -> BiPoly:
    """Parse a polynomial in x and y.

    Grammar: integers, rational literals ``p/q``, the variables ``x`` and
    ``y``, operators ``+ - * ^`` and parentheses; ``^`` binds tighter than
    ``*``, which binds tighter than ``+``/``-``; unary minus is allowed;
    whitespace is insignificant.
    """
    t = _Tokens(src)
    p = _parse_sum(t)
    t.skip_ws()
    if t.pos != len(src):
        raise ParseError(f"unexpected {src[t.pos]!r}", t.pos)
    return p


def parse_rational(src: str) -> Fraction:
    """Parse a rational literal such as '5', '-3/4'."""
    try:
        return Fraction(src.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"invalid rational literal {src!r}: {exc}", 0) from None


def _parse_sum(t: _Tokens) -> BiPoly:
    terms = []
    sign = 1
    while True:
        c = t.peek()
        if c == "-":
            t.take()
            sign = -sign
            continue
        if c == "+":
            t.take()
            continue
        break
    terms.append(_parse_product(t) * sign)
    while True:
        c = t.peek()
        if c == "+":
            t.take()
            terms.append(_parse_product(t))
        elif c == "-":
            t.take()
            terms.append(-_parse_product(t))
        else:
            break
    total = terms[0]
    for p in terms[1:]:
        total = total + p
    return total


def _parse_product(t: _Tokens) -> BiPoly:
    p = _parse_power(t)
    while t.peek() == "*":
        t.take()
        p = p * _parse_power(t)
    return p


def _parse_power(t: _Tokens) -> BiPoly:
    base = _parse_atom(t)
    if t.peek() == "^":
        t.take()
        pos = t.pos
        t.skip_ws()
        if t.peek() and t.peek().isdigit():
            n = t.integer()
        else:
            raise ParseError("exponent must be a nonnegative integer", pos)
        return base ** n
    return base


def _parse_atom(t: _Tokens) -> BiPoly:
    c = t.peek()
    pos = t.pos
    if c == "(":
        t.take()
        p = _parse_sum(t)
        if t.peek() != ")":
            raise ParseError("expected ')'", t.pos)
        t.take()
        return p
    if c == "-":
        t.take()
        return -_parse_power(t)
    if c.isdigit():
        n = t.integer()
        # rational literal p/q
        save = t.pos
        t.skip_ws()
        if t.peek() == "/":
            t.take()
            t.skip_ws()
            dpos = t.pos
            if not (t.peek() and t.peek().isdigit()):
                raise ParseError("expected denominator digits after '/'", dpos)
            d = t.integer()
            if d == 0:
                raise ParseError("zero denominator in rational literal", dpos)
            return BiPoly.const(Fraction(n, d))
        t.pos = save
        return BiPoly.const(n)
    if c in ("x", "y"):
        t.take()
        nxt = t.src[t.pos] if t.pos < len(t.src) else ""
        if nxt.isalnum() or nxt == "_":
            raise ParseError(f"unknown variable starting at {c!r}", pos)
        return BiPoly.var(c)
    if c.isalpha():
        raise ParseError(f"unknown variable {c!r} (only x and y are allowed)", pos)
    raise ParseError("expected a term", pos)


def _format_coeff(c: Fraction) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def poly_str(p: BiPoly) -> str:
    """Render with terms in graded-lex descending order; parses back exactly."""
    if not p.terms:
        return "0"
    parts = []
    for e in sorted(p.terms, key=_glex_key, reverse=True):
        i, j = e
        c = Fraction(p.terms[e])
        mono = "*".join(s for s in (
            f"x^{i}" if i > 1 else "x" if i == 1 else "",
            f"y^{j}" if j > 1 else "y" if j == 1 else "") if s)
        if mono:
            if c == 1:
                body = mono
            elif c == -1:
                body = f"-{mono}"
            else:
                body = f"{_format_coeff(c)}*{mono}"
        else:
            body = _format_coeff(c)
        parts.append(body)
    out = parts[0]
    for body in parts[1:]:
        if body.startswith("-"):
            out += f" - {body[1:]}"
        else:
            out += f" + {body}"
    return out


def ratfun_str(f: RatFun) -> str:
    if f.den == _ONE:
        return poly_str(f.num)
    return f"({poly_str(f.num)})/({poly_str(f.den)})"
