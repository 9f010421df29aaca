"""Exact univariate Laurent-polynomial and rational-function arithmetic.

Coefficients are exact rationals (`int` or `fractions.Fraction`); there is no
floating-point mode anywhere in this module.  The variable is abstract.  In
most of this package it stands for the spectral parameter z = q**(-s), so the
substitution z -> 1/(q*z) (`dual_substitute`) realizes s -> 1-s.

Canonical form of a rational function: the denominator is an ordinary
polynomial (lowest exponent 0) with coprime integer coefficients whose
lowest-order coefficient is positive; numerator and denominator share no
polynomial factor.  Equality of canonical forms is plain dict equality, and
the string grammar "(<num>)/(<den>)" with exponents ascending is stable, so
serialized values are byte-identical across runs.

`solve_param_system` is a parametrized exact linear solver: fraction-free
(Bareiss) elimination over the polynomial ring locates a maximal pivot minor,
back-substitution over the rational-function field produces a solution with
non-pivot coordinates set to zero, and the determinant of the pivot minor is
returned as the exceptional locus polynomial.  Off the zero set of the locus
the solution evaluates to a solution of the evaluated numeric system.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _int_gcd
from typing import Iterable, Sequence


class PoleError(ArithmeticError):
    """Evaluation of a rational function at a zero of its denominator."""


class NoSolutionError(ValueError):
    """A parametrized linear system is inconsistent over the function field."""


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    return Fraction(c)


class LaurentPoly:
    """A Laurent polynomial stored as {exponent: nonzero rational coefficient}."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        if not coeffs:
            self.coeffs = {}
        else:
            self.coeffs = {int(e): c for e, c in dict(coeffs).items() if c != 0}

    @classmethod
    def _raw(cls, d):
        # internal: d already filtered
        p = object.__new__(cls)
        p.coeffs = d
        return p

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls._raw({0: 1})

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def term(cls, c, k: int) -> "LaurentPoly":
        return cls({k: c})

    @classmethod
    def var(cls) -> "LaurentPoly":
        return cls._raw({1: 1})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def min_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no minimal exponent")
        return min(self.coeffs)

    def max_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no maximal exponent")
        return max(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.coeffs
            return self.coeffs == {0: other}
        return NotImplemented

    def __hash__(self):
        return hash(frozenset((e, _as_fraction(c)) for e, c in self.coeffs.items()))

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self.coeffs.items()})

    def __add__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        d = dict(a)
        for e, c in b.items():
            s = d.get(e)
            if s is None:
                d[e] = c
            else:
                s = s + c
                if s:
                    d[e] = s
                else:
                    del d[e]
        return LaurentPoly._raw(d)

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return LaurentPoly.zero()
            return LaurentPoly._raw({e: c * other for e, c in self.coeffs.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        d = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                s = d.get(e)
                if s is None:
                    d[e] = c1 * c2
                else:
                    s = s + c1 * c2
                    if s:
                        d[e] = s
                    else:
                        del d[e]
        return LaurentPoly._raw(d)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative power of a LaurentPoly; use RationalFunc")
        out = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by z**k."""
        return LaurentPoly._raw({e + k: c for e, c in self.coeffs.items()})

    def evaluate(self, z0) -> Fraction:
        z0 = _as_fraction(z0)
        if z0 == 0 and self.coeffs and self.min_exp() < 0:
            raise PoleError("negative exponents evaluated at zero")
        total = Fraction(0)
        for e, c in self.coeffs.items():
            total += _as_fraction(c) * z0 ** e
        return total

    def substitute_recip_scaled(self, q: int) -> "LaurentPoly":
        """Substitute z -> 1/(q*z)."""
        return LaurentPoly({-e: _as_fraction(c) * Fraction(1, q) ** e
                            for e, c in self.coeffs.items()})

    def __str__(self) -> str:
        return format_laurent(self)

    def __repr__(self) -> str:
        return "LaurentPoly(%r)" % (dict(sorted(self.coeffs.items())),)


def format_laurent(p: LaurentPoly) -> str:
    """Ascending-exponent string like "1/2-2z^2+z^-1" (constant "0" for zero)."""
    if p.is_zero():
        return "0"
    parts = []
    for e in sorted(p.coeffs):
        c = _as_fraction(p.coeffs[e])
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if e == 0:
            body = str(mag)
        else:
            zs = "z" if e == 1 else "z^%d" % e
            body = zs if mag == 1 else "%s%s" % (mag, zs)
        if not parts:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(sign + body)
    return "".join(parts)


_TERM_SPLIT = re.compile(r"(?<!\^)(?=[+-])")


def parse_laurent(s: str) -> LaurentPoly:
    """Parse the grammar emitted by `format_laurent`."""
    s = s.strip().replace(" ", "")
    if not s:
        raise ValueError("empty polynomial string")
    if s == "0":
        return LaurentPoly.zero()
    coeffs = {}
    for term in _TERM_SPLIT.split(s):
        if not term:
            continue
        sign = 1
        if term[0] == "+":
            term = term[1:]
        elif term[0] == "-":
            sign = -1
            term = term[1:]
        if "z" in term:
            cpart, _, epart = term.partition("z")
            coef = Fraction(cpart[:-1] if cpart.endswith("*") else cpart) if cpart else Fraction(1)
            if epart.startswith("^"):
                exp = int(epart[1:])
            elif epart == "":
                exp = 1
            else:
                raise ValueError("bad term %r" % term)
        else:
            coef = Fraction(term)
            exp = 0
        coeffs[exp] = coeffs.get(exp, Fraction(0)) + sign * coef
    return LaurentPoly(coeffs)


# ----------------------------------------------------------------------------
# dense ordinary-polynomial helpers (ascending coefficient lists over Fraction)
# ----------------------------------------------------------------------------

def _dense(p: LaurentPoly) -> list:
    if p.is_zero():
        return []
    lo = p.min_exp()
    if lo < 0:
        raise ValueError("dense form requires an ordinary polynomial")
    out = [Fraction(0)] * (p.max_exp() + 1)
    for e, c in p.coeffs.items():
        out[e] = _as_fraction(c)
    return out


def _from_dense(lst) -> LaurentPoly:
    return LaurentPoly({e: c for e, c in enumerate(lst) if c})


def _dense_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _dense_divmod(a, b):
    a = list(a)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        f = a[i + len(b) - 1] * inv
        if f:
            q[i] = f
            for j, bc in enumerate(b):
                a[i + j] -= f * bc
    return _dense_trim(q), _dense_trim(a)


def _dense_gcd(a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, _dense_divmod(a, b)[1]
    if a:
        inv = 1 / a[-1]
        a = [c * inv for c in a]  # monic
    return a


def poly_gcd(p: LaurentPoly, r: LaurentPoly) -> LaurentPoly:
    """Monic gcd of two ordinary polynomials."""
    return _from_dense(_dense_gcd(_dense(p), _dense(r)))


def poly_divmod(p: LaurentPoly, r: LaurentPoly):
    q, rem = _dense_divmod(_dense(p), _dense(r))
    return _from_dense(q), _from_dense(rem)


def poly_div_exact(p: LaurentPoly, r: LaurentPoly) -> LaurentPoly:
    """Exact division of Laurent polynomials (raises if the remainder is nonzero)."""
    if r.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return LaurentPoly.zero()
    sp, sr = p.min_exp(), r.min_exp()
    q, rem = _dense_divmod(_dense(p.shift(-sp)), _dense(r.shift(-sr)))
    if rem:
        raise ValueError("inexact polynomial division")
    return _from_dense(q).shift(sp - sr)


def _signed_content(p: LaurentPoly) -> Fraction:
    """Content of p, signed so that p / content has positive lowest coefficient."""
    if p.is_zero():
        raise ValueError("zero polynomial has no content")
    fracs = [_as_fraction(c) for c in p.coeffs.values()]
    num_gcd = 0
    den_lcm = 1
    for f in fracs:
        num_gcd = _int_gcd(num_gcd, abs(f.numerator))
        den_lcm = den_lcm * f.denominator // _int_gcd(den_lcm, f.denominator)
    content = Fraction(num_gcd, den_lcm)
    if _as_fraction(p.coeffs[p.min_exp()]) < 0:
        content = -content
    return content


def normalize_poly(p: LaurentPoly) -> LaurentPoly:
    """Shift to lowest exponent 0 and divide by the signed content.

    The result has coprime integer coefficients and a positive lowest-order
    coefficient; it is the canonical representative of p up to units z**k * c.
    """
    if p.is_zero():
        return LaurentPoly.zero()
    p = p.shift(-p.min_exp())
    c = _signed_content(p)
    return LaurentPoly._raw({e: _as_fraction(v) / c for e, v in p.coeffs.items()})


def rational_roots(p: LaurentPoly) -> list:
    """All rational roots of a nonzero Laurent polynomial (z = 0 excluded)."""
    p = normalize_poly(p)
    if p == LaurentPoly.one() or p.max_exp() == 0:
        return []
    a0 = abs(int(p.coeffs[0]))
    atop = abs(int(p.coeffs[p.max_exp()]))

    def divisors(n):
        out = []
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.append(d)
                out.append(n // d)
            d += 1
        return out

    roots = set()
    for pnum in divisors(a0):
        for pden in divisors(atop):
            for cand in (Fraction(pnum, pden), Fraction(-pnum, pden)):
                if p.evaluate(cand) == 0:
                    roots.add(cand)
    return sorted(roots)


class RationalFunc:
    """A quotient of Laurent polynomials kept in canonical form."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = LaurentPoly.one()
        num = self._coerce(num)
        den = self._coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = self._canonicalize(num, den)

    @staticmethod
    def _coerce(x) -> LaurentPoly:
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return LaurentPoly.const(x)
        raise TypeError("cannot build RationalFunc from %r" % (x,))

    @staticmethod
    def _canonicalize(num: LaurentPoly, den: LaurentPoly):
        if num.is_zero():
            return LaurentPoly.zero(), LaurentPoly.one()
        dshift = den.min_exp()
        den = den.shift(-dshift)
        num = num.shift(-dshift)
        v = num.min_exp()
        numpoly = num.shift(-v)
        g = poly_gcd(numpoly, den)
        if g.max_exp() > 0:
            numpoly = poly_div_exact(numpoly, g)
            den = poly_div_exact(den, g)
        c = _signed_content(den)
        den = LaurentPoly._raw({e: _as_fraction(x) / c for e, x in den.coeffs.items()})
        numpoly = LaurentPoly._raw({e: _as_fraction(x) / c for e, x in numpoly.coeffs.items()})
        return numpoly.shift(v), den

    @classmethod
    def zero(cls):
        return cls(0)

    @classmethod
    def one(cls):
        return cls(1)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = RationalFunc(other)
        if not isinstance(other, RationalFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        out = object.__new__(RationalFunc)
        out.num, out.den = -self.num, self.den
        return out

    def __add__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = RationalFunc(other)
        if not isinstance(other, RationalFunc):
            return NotImplemented
        return RationalFunc(self.num * other.den + other.num * self.den,
                            self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = RationalFunc(other)
        if not isinstance(other, RationalFunc):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = RationalFunc(other)
        if not isinstance(other, RationalFunc):
            return NotImplemented
        return RationalFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = RationalFunc(other)
        if not isinstance(other, RationalFunc):
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RationalFunc(other) / self

    def inverse(self):
        return RationalFunc(1) / self

    def __pow__(self, k: int):
        if k < 0:
            return (RationalFunc(1) / self) ** (-k)
        return RationalFunc(self.num ** k, self.den ** k)

    def evaluate(self, z0) -> Fraction:
        z0 = _as_fraction(z0)
        d = self.den.evaluate(z0)
        if d == 0:
            raise PoleError("pole at z = %s" % z0)
        try:
            n = self.num.evaluate(z0)
        except PoleError:
            raise PoleError("pole at z = %s" % z0)
        return n / d

    def __str__(self) -> str:
        return "(%s)/(%s)" % (format_laurent(self.num), format_laurent(self.den))

    def __repr__(self) -> str:
        return "RationalFunc(%s)" % self

    @classmethod
    def from_string(cls, s: str) -> "RationalFunc":
        s = s.strip().replace(" ", "")
        if s.startswith("(") and ")/(" in s and s.endswith(")"):
            numpart, _, denpart = s[1:-1].partition(")/(")
            return cls(parse_laurent(numpart), parse_laurent(denpart))
        # bare polynomial is accepted for convenience
        return cls(parse_laurent(s))


def arith(op: str, x: RationalFunc, y: RationalFunc) -> RationalFunc:
    """Field arithmetic by name: "add", "mul" or "div"."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError("unknown operation %r" % op)


def dual_substitute(x, q: int):
    """Substitute z -> 1/(q*z); an involutive field homomorphism."""
    if q < 2:
        raise ValueError("q must be at least 2")
    if isinstance(x, LaurentPoly):
        return RationalFunc(x.substitute_recip_scaled(q))
    if not isinstance(x, RationalFunc):
        x = RationalFunc(x)
    return RationalFunc(x.num.substitute_recip_scaled(q),
                        x.den.substitute_recip_scaled(q))


def evaluate(x, z0) -> Fraction:
    """Exact evaluation of a LaurentPoly or RationalFunc at a rational point."""
    if isinstance(x, LaurentPoly):
        return x.evaluate(z0)
    if isinstance(x, RationalFunc):
        return x.evaluate(z0)
    return _as_fraction(x)


# ----------------------------------------------------------------------------
# parametrized linear systems
# ----------------------------------------------------------------------------

@dataclass
class ParamSystem:
    """A rows x cols linear system over the rational-function field."""

    matrix: list
    rhs: list

    def __post_init__(self):
        rows = len(self.matrix)
        if rows != len(self.rhs):
            raise ValueError("matrix/rhs row count mismatch")
        if rows == 0:
            raise ValueError("empty system")
        cols = len(self.matrix[0])
        for row in self.matrix:
            if len(row) != cols:
                raise ValueError("ragged matrix")
        self.matrix = [[_as_ratfunc(x) for x in row] for row in self.matrix]
        self.rhs = [_as_ratfunc(x) for x in self.rhs]

    @property
    def shape(self):
        return len(self.matrix), len(self.matrix[0])


def _as_ratfunc(x) -> RationalFunc:
    return x if isinstance(x, RationalFunc) else RationalFunc(x)


def _poly_lcm(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    out = LaurentPoly.one()
    for p in polys:
        g = poly_gcd(out, p)
        out = poly_div_exact(out * p, g)
    return out


def _clear_row(row: Sequence[RationalFunc], b: RationalFunc):
    """Multiply one equation by a polynomial so all entries become polynomials."""
    lcm = _poly_lcm([x.den for x in row] + [b.den])
    ents = []
    shift = 0
    for x in list(row) + [b]:
        p = x.num * poly_div_exact(lcm, x.den)
        ents.append(p)
        if p and p.min_exp() < shift:
            shift = p.min_exp()
    ents = [p.shift(-shift) for p in ents]
    return ents[:-1], ents[-1]


def _det_ratfunc(matrix) -> RationalFunc:
    """Determinant over the rational-function field by fraction elimination."""
    n = len(matrix)
    m = [row[:] for row in matrix]
    det = RationalFunc(1)
    for k in range(n):
        piv = None
        for r in range(k, n):
            if not m[r][k].is_zero():
                piv = r
                break
        if piv is None:
            return RationalFunc(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det = det * m[k][k]
        inv = m[k][k].inverse()
        for r in range(k + 1, n):
            if m[r][k].is_zero():
                continue
            f = m[r][k] * inv
            for c in range(k, n):
                m[r][c] = m[r][c] - f * m[k][c]
    return det


def solve_param_system(system: ParamSystem):
    """Solve a parametrized linear system exactly.

    Returns (solution, locus): `solution` is a vector of rational functions
    with non-pivot coordinates equal to zero, and `locus` is the canonical
    polynomial whose zero set carries the chosen pivot minor's degeneration.
    Raises NoSolutionError when the system is inconsistent over the function
    field (augmented rank exceeds matrix rank).
    """
    rows, cols = system.shape
    mat = []
    rhs = []
    for r in range(rows):
        a, b = _clear_row(system.matrix[r], system.rhs[r])
        mat.append(a)
        rhs.append(b)

    # Bareiss fraction-free elimination with row swaps; pivot columns in order.
    piv_rows = []
    piv_cols = []
    prev = LaurentPoly.one()
    row_perm = list(range(rows))
    r = 0
    for c in range(cols):
        pr = None
        for rr in range(r, rows):
            if mat[rr][c]:
                pr = rr
                break
        if pr is None:
            continue
        if pr != r:
            mat[r], mat[pr] = mat[pr], mat[r]
            rhs[r], rhs[pr] = rhs[pr], rhs[r]
            row_perm[r], row_perm[pr] = row_perm[pr], row_perm[r]
        piv = mat[r][c]
        for rr in range(r + 1, rows):
            f = mat[rr][c]
            for cc in range(cols):
                mat[rr][cc] = poly_div_exact(mat[rr][cc] * piv - f * mat[r][cc], prev)
            rhs[rr] = poly_div_exact(rhs[rr] * piv - f * rhs[r], prev)
        prev = piv
        piv_rows.append(row_perm[r])
        piv_cols.append(c)
        r += 1
        if r == rows:
            break

    rank = len(piv_cols)
    for rr in range(rank, rows):
        if rhs[rr]:
            raise NoSolutionError("system is generically inconsistent")

    # Back-substitution over the function field; free variables are zero.
    solution = [RationalFunc(0)] * cols
    for k in range(rank - 1, -1, -1):
        c = piv_cols[k]
        acc = RationalFunc(rhs[k])
        for cc in range(c + 1, cols):
            if mat[k][cc] and not solution[cc].is_zero():
                acc = acc - RationalFunc(mat[k][cc]) * solution[cc]
        solution[c] = acc / RationalFunc(mat[k][c])

    if rank == 0:
        locus = LaurentPoly.one()
    else:
        minor = [[system.matrix[r][c] for c in piv_cols] for r in piv_rows]
        det = _det_ratfunc(minor)
        locus = normalize_poly(det.num)
    return solution, locus
