"""Dense univariate polynomials over the rationals.

Coefficients are `fractions.Fraction`; arithmetic is exact everywhere.  The
gcd / squarefree machinery runs on primitive integer coefficient lists to keep
intermediate growth under control, then re-normalises to monic rational form.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd
from typing import Iterable, Sequence

from .errors import ZeroPolynomial

Frac = Fraction


def _trim(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class UniPoly:
    """p(x) = sum(c[i] * x**i); c has no trailing zeros."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable[Fraction | int] = ()):
        self.c: tuple[Fraction, ...] = _trim([Fraction(v) for v in coeffs])

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero() -> "UniPoly":
        return UniPoly()

    @staticmethod
    def one() -> "UniPoly":
        return UniPoly([1])

    @staticmethod
    def x() -> "UniPoly":
        return UniPoly([0, 1])

    @staticmethod
    def const(v: Fraction | int) -> "UniPoly":
        return UniPoly([Fraction(v)])

    @staticmethod
    def from_roots(roots: Sequence[Fraction | int]) -> "UniPoly":
        p = UniPoly.one()
        for r in roots:
            p = p * UniPoly([-Fraction(r), 1])
        return p

    # -- basic queries -------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.c) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.c

    def lc(self) -> Fraction:
        if not self.c:
            raise ZeroPolynomial("leading coefficient of 0")
        return self.c[-1]

    def __bool__(self) -> bool:
        return bool(self.c)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, UniPoly) and self.c == other.c

    def __hash__(self) -> int:
        return hash(self.c)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return UniPoly(out)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __neg__(self) -> "UniPoly":
        return UniPoly([-v for v in self.c])

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if not self.c or not other.c:
            return UniPoly()
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    if b:
                        out[i + j] += a * b
        return UniPoly(out)

    def scale(self, k: Fraction | int) -> "UniPoly":
        k = Fraction(k)
        return UniPoly([v * k for v in self.c])

    def shift_up(self, n: int) -> "UniPoly":
        """Multiply by x**n."""
        if not self.c:
            return UniPoly()
        return UniPoly([Fraction(0)] * n + list(self.c))

    def __pow__(self, n: int) -> "UniPoly":
        r = UniPoly.one()
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def divmod(self, d: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(0, len(self.c) - len(d.c) + 1)
        r = list(self.c)
        dlc = d.lc()
        dd = d.degree
        while len(r) - 1 >= dd and any(r):
            while r and r[-1] == 0:
                r.pop()
            if len(r) - 1 < dd:
                break
            k = len(r) - 1 - dd
            f = r[-1] / dlc
            q[k] = f
            for i, v in enumerate(d.c):
                r[k + i] -= f * v
            r.pop()
        return UniPoly(q), UniPoly(r)

    def __floordiv__(self, d: "UniPoly") -> "UniPoly":
        return self.divmod(d)[0]

    def __mod__(self, d: "UniPoly") -> "UniPoly":
        return self.divmod(d)[1]

    def exact_div(self, d: "UniPoly") -> "UniPoly":
        q, r = self.divmod(d)
        if not r.is_zero():
            raise ValueError("exact_div: division not exact")
        return q

    def derivative(self) -> "UniPoly":
        return UniPoly([self.c[i] * i for i in range(1, len(self.c))])

    def eval(self, x: Fraction | int) -> Fraction:
        acc = Fraction(0)
        for v in reversed(self.c):
            acc = acc * x + v
        return acc

    def compose_linear(self, a: Fraction, b: Fraction) -> "UniPoly":
        """p(a + b*x)."""
        acc = UniPoly()
        lin = UniPoly([a, b])
        for v in reversed(self.c):
            acc = acc * lin + UniPoly.const(v)
        return acc

    def reverse(self) -> "UniPoly":
        """x**deg * p(1/x)."""
        return UniPoly(list(reversed(self.c)))

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self.scale(1 / self.lc())

    # -- integer normal form --------------------------------------------------

    def int_primitive(self) -> list[int]:
        """Primitive integer coefficient list (positive leading coefficient)."""
        if not self.c:
            return []
        l = 1
        for v in self.c:
            l = l * v.denominator // _igcd(l, v.denominator)
        ints = [int(v * l) for v in self.c]
        g = 0
        for v in ints:
            g = _igcd(g, abs(v))
        if g > 1:
            ints = [v // g for v in ints]
        if ints[-1] < 0:
            ints = [-v for v in ints]
        return ints

    # -- display --------------------------------------------------------------

    def __repr__(self) -> str:
        if not self.c:
            return "UniPoly(0)"
        parts = []
        for i in range(len(self.c) - 1, -1, -1):
            v = self.c[i]
            if v == 0:
                continue
            if i == 0:
                parts.append(str(v))
            elif i == 1:
                parts.append(f"{v}*x" if abs(v) != 1 else ("x" if v > 0 else "-x"))
            else:
                parts.append(f"{v}*x^{i}" if abs(v) != 1 else (f"x^{i}" if v > 0 else f"-x^{i}"))
        s = " + ".join(parts).replace("+ -", "- ")
        return f"UniPoly({s})"


# -- integer-list helpers (fast paths) ----------------------------------------


def _ilist_divmod_exact(a: list[int], b: list[int]) -> list[int] | None:
    """Exact division of integer polynomials, or None if not exact over Q."""
    pa = UniPoly(a)
    pb = UniPoly(b)
    q, r = pa.divmod(pb)
    if not r.is_zero():
        return None
    return q.int_primitive()


def _ilist_pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """Primitive pseudo-remainder of integer coefficient lists."""
    r = [Fraction(v) for v in a]
    d = len(b) - 1
    blc = b[-1]
    while len(r) - 1 >= d:
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < d:
            break
        k = len(r) - 1 - d
        f = r[-1] / blc
        for i, v in enumerate(b):
            r[k + i] -= f * v
        r.pop()
    return UniPoly(r).int_primitive()


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic greatest common divisor; poly_gcd(a, 0) = monic(a)."""
    ia, ib = a.int_primitive(), b.int_primitive()
    while ib:
        ia, ib = ib, _ilist_pseudo_rem(ia, ib)
    if not ia:
        return UniPoly.zero()
    return UniPoly(ia).monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    """Monic product of the distinct irreducible factors of p."""
    if p.is_zero():
        raise ZeroPolynomial("squarefree_part(0)")
    if p.degree == 0:
        return UniPoly.one()
    g = poly_gcd(p, p.derivative())
    if g.degree == 0:
        return p.monic()
    return p.exact_div(g).monic()


def sylvester_resultant(a: UniPoly, b: UniPoly) -> Fraction:
    """Resultant of two univariate polynomials via Bareiss elimination."""
    m, n = a.degree, b.degree
    if m < 0 or n < 0:
        return Fraction(0)
    if m == 0:
        return a.c[0] ** n
    if n == 0:
        return b.c[0] ** m
    size = m + n
    rows: list[list[Fraction]] = []
    ra = list(reversed(a.c))
    rb = list(reversed(b.c))
    for i in range(n):
        rows.append([Fraction(0)] * i + ra + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + rb + [Fraction(0)] * (size - n - 1 - i))
    # fraction-free Gaussian elimination
    sign = 1
    prev = Fraction(1)
    for k in range(size - 1):
        if rows[k][k] == 0:
            for j in range(k + 1, size):
                if rows[j][k] != 0:
                    rows[k], rows[j] = rows[j], rows[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) / prev
            rows[i][k] = Fraction(0)
        prev = rows[k][k]
    return sign * rows[size - 1][size - 1]
