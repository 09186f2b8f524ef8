"""Sparse bivariate polynomials over the rationals.

The canonical text form uses variables x and y, ``^`` for powers and ``*`` for
products, e.g. ``y^2 - x^3``.  Resultants are computed as Sylvester
determinants, evaluated by specialisation at integer abscissae and recovered
by Lagrange interpolation (determinants commute with specialisation, so no
leading-coefficient caveats apply).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator

from .errors import DegreeZero, ZeroPolynomial
from .unipoly import UniPoly, poly_gcd, squarefree_part, sylvester_resultant

Frac = Fraction
Term = tuple[int, int]  # (i, j) exponents of x^i y^j


class BiPoly:
    """Finite map (i, j) -> nonzero rational coefficient of x^i y^j."""

    __slots__ = ("t",)

    def __init__(self, terms: dict[Term, Fraction] | None = None):
        self.t: dict[Term, Fraction] = {}
        if terms:
            for k, v in terms.items():
                v = Fraction(v)
                if v != 0:
                    self.t[k] = v

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero() -> "BiPoly":
        return BiPoly()

    @staticmethod
    def const(v: Fraction | int) -> "BiPoly":
        return BiPoly({(0, 0): Fraction(v)})

    @staticmethod
    def x() -> "BiPoly":
        return BiPoly({(1, 0): Fraction(1)})

    @staticmethod
    def y() -> "BiPoly":
        return BiPoly({(0, 1): Fraction(1)})

    @staticmethod
    def from_y_coeffs(coeffs: list[UniPoly]) -> "BiPoly":
        """coeffs[j] is the UniPoly-in-x coefficient of y^j."""
        t: dict[Term, Fraction] = {}
        for j, p in enumerate(coeffs):
            for i, v in enumerate(p.c):
                if v:
                    t[(i, j)] = v
        return BiPoly(t)

    # -- queries ---------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.t

    def __bool__(self) -> bool:
        return bool(self.t)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BiPoly) and self.t == other.t

    def __hash__(self) -> int:
        return hash(frozenset(self.t.items()))

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.t), default=-1)

    @property
    def deg_x(self) -> int:
        return max((i for i, _ in self.t), default=-1)

    @property
    def deg_y(self) -> int:
        return max((j for _, j in self.t), default=-1)

    def is_const(self) -> bool:
        return all(k == (0, 0) for k in self.t)

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other: "BiPoly") -> "BiPoly":
        t = dict(self.t)
        for k, v in other.t.items():
            t[k] = t.get(k, Fraction(0)) + v
        return BiPoly(t)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        t = dict(self.t)
        for k, v in other.t.items():
            t[k] = t.get(k, Fraction(0)) - v
        return BiPoly(t)

    def __neg__(self) -> "BiPoly":
        return BiPoly({k: -v for k, v in self.t.items()})

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        t: dict[Term, Fraction] = {}
        for (i1, j1), v1 in self.t.items():
            for (i2, j2), v2 in other.t.items():
                k = (i1 + i2, j1 + j2)
                t[k] = t.get(k, Fraction(0)) + v1 * v2
        return BiPoly(t)

    def scale(self, k: Fraction | int) -> "BiPoly":
        k = Fraction(k)
        return BiPoly({key: v * k for key, v in self.t.items()})

    def __pow__(self, n: int) -> "BiPoly":
        r = BiPoly.const(1)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def partial_x(self) -> "BiPoly":
        return BiPoly({(i - 1, j): v * i for (i, j), v in self.t.items() if i > 0})

    def partial_y(self) -> "BiPoly":
        return BiPoly({(i, j - 1): v * j for (i, j), v in self.t.items() if j > 0})

    # -- evaluation / specialisation ------------------------------------------------

    def eval(self, x: Fraction | int, y: Fraction | int) -> Fraction:
        x, y = Fraction(x), Fraction(y)
        # Horner in y with x-evaluated coefficients
        acc = Fraction(0)
        for p in reversed(self.y_coeffs()):
            acc = acc * y + p.eval(x)
        return acc

    def sign_at(self, x: Fraction | int, y: Fraction | int) -> int:
        v = self.eval(x, y)
        return (v > 0) - (v < 0)

    def y_coeffs(self) -> list[UniPoly]:
        """Coefficients as polynomials in x, indexed by y-power."""
        if not self.t:
            return []
        dy = self.deg_y
        rows: list[dict[int, Fraction]] = [dict() for _ in range(dy + 1)]
        for (i, j), v in self.t.items():
            rows[j][i] = v
        out = []
        for row in rows:
            if row:
                n = max(row)
                out.append(UniPoly([row.get(i, Fraction(0)) for i in range(n + 1)]))
            else:
                out.append(UniPoly.zero())
        return out

    def x_coeffs(self) -> list[UniPoly]:
        return self.swap_xy().y_coeffs()

    def specialize_x(self, x0: Fraction | int) -> UniPoly:
        """p(x0, y) as a univariate polynomial in y."""
        x0 = Fraction(x0)
        return UniPoly([p.eval(x0) for p in self.y_coeffs()])

    def specialize_y(self, y0: Fraction | int) -> UniPoly:
        """p(x, y0) as a univariate polynomial in x."""
        return self.swap_xy().specialize_x(y0)

    def swap_xy(self) -> "BiPoly":
        return BiPoly({(j, i): v for (i, j), v in self.t.items()})

    def translate(self, a: Fraction | int, b: Fraction | int) -> "BiPoly":
        """p(x + a, y + b)."""
        a, b = Fraction(a), Fraction(b)
        acc = BiPoly.zero()
        ypoly = BiPoly({(0, 0): b, (0, 1): Fraction(1)})
        for p in reversed(self.y_coeffs()):
            px = BiPoly({(i, 0): v for i, v in enumerate(p.compose_linear(a, Fraction(1)).c)})
            acc = acc * ypoly + px
        return acc

    def subst(self, xp: "BiPoly", yp: "BiPoly") -> "BiPoly":
        """p(xp(u, v), yp(u, v))."""
        acc = BiPoly.zero()
        for p in reversed(self.y_coeffs()):
            # evaluate the x-coefficient polynomial at xp by Horner
            cx = BiPoly.zero()
            for v in reversed(p.c):
                cx = cx * xp + BiPoly.const(v)
            acc = acc * yp + cx
        return acc

    def interval_eval(
        self, xlo: Fraction, xhi: Fraction, ylo: Fraction, yhi: Fraction
    ) -> tuple[Fraction, Fraction]:
        """Sound enclosure of p over the box [xlo,xhi]x[ylo,yhi]."""
        lo = hi = Fraction(0)
        for (i, j), v in self.t.items():
            mlo, mhi = _pow_range(xlo, xhi, i)
            nlo, nhi = _pow_range(ylo, yhi, j)
            cands = [mlo * nlo, mlo * nhi, mhi * nlo, mhi * nhi]
            tlo, thi = min(cands), max(cands)
            if v > 0:
                lo += v * tlo
                hi += v * thi
            else:
                lo += v * thi
                hi += v * tlo
        return lo, hi

    # -- content / divisibility -------------------------------------------------------

    def content_x(self) -> UniPoly:
        """gcd over j of the UniPoly-in-x coefficients (monic)."""
        g = UniPoly.zero()
        for p in self.y_coeffs():
            if not p.is_zero():
                g = poly_gcd(g, p)
                if g.degree == 0:
                    return UniPoly.one()
        return g if not g.is_zero() else UniPoly.one()

    def divmod_y(self, d: "BiPoly") -> tuple["BiPoly", "BiPoly"] | None:
        """Division by d as polynomials in y over Q(x); returns None unless every
        coefficient division is exact in Q[x] (sufficient for our callers)."""
        dc = d.y_coeffs()
        if not dc:
            raise ZeroDivisionError
        rem = self
        quo = BiPoly.zero()
        dlc = dc[-1]
        ddeg = d.deg_y
        while not rem.is_zero() and rem.deg_y >= ddeg:
            rc = rem.y_coeffs()
            lead = rc[-1]
            q, r = lead.divmod(dlc)
            if not r.is_zero():
                return None
            shift = rem.deg_y - ddeg
            qterm = BiPoly({(i, shift): v for i, v in enumerate(q.c) if v})
            quo = quo + qterm
            rem = rem - qterm * d
            assert rem.is_zero() or rem.deg_y < ddeg + shift
        return quo, rem

    def divides(self, other: "BiPoly") -> bool:
        """Exact divisibility self | other over Q[x, y]."""
        if self.is_zero():
            return other.is_zero()
        if other.is_zero():
            return True
        if self.deg_y == 0:
            # polynomial in x only
            p = self.y_coeffs()[0]
            return all(c.divmod(p)[1].is_zero() for c in other.y_coeffs())
        res = _pseudo_rem_y(other, self)
        return res.is_zero()

    def exact_div(self, d: "BiPoly") -> "BiPoly":
        if d.deg_y == 0:
            p = d.y_coeffs()[0]
            return BiPoly.from_y_coeffs([c.exact_div(p) for c in self.y_coeffs()])
        out = self.divmod_y(d)
        if out is None or not out[1].is_zero():
            raise ValueError("exact_div: not divisible")
        return out[0]

    # -- display ---------------------------------------------------------------------

    def to_text(self) -> str:
        if not self.t:
            return "0"
        keys = sorted(self.t, key=lambda k: (-(k[1]), -(k[0])))
        parts: list[str] = []
        for idx, (i, j) in enumerate(keys):
            v = self.t[(i, j)]
            mono = []
            if i == 1:
                mono.append("x")
            elif i > 1:
                mono.append(f"x^{i}")
            if j == 1:
                mono.append("y")
            elif j > 1:
                mono.append(f"y^{j}")
            coeff = abs(v)
            if not mono:
                body = str(coeff)
            elif coeff == 1:
                body = "*".join(mono)
            else:
                body = "*".join([str(coeff)] + mono)
            if idx == 0:
                parts.append(body if v > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if v > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"BiPoly({self.to_text()})"


def _pow_range(lo: Fraction, hi: Fraction, n: int) -> tuple[Fraction, Fraction]:
    if n == 0:
        return Fraction(1), Fraction(1)
    a, b = lo**n, hi**n
    if n % 2 == 0 and lo < 0 < hi:
        return Fraction(0), max(a, b)
    return min(a, b), max(a, b)


def _pseudo_rem_y(a: BiPoly, b: BiPoly) -> BiPoly:
    """Pseudo-remainder of a by b as polynomials in y with UniPoly coefficients."""
    bc = b.y_coeffs()
    blc = BiPoly({(i, 0): v for i, v in enumerate(bc[-1].c) if v})
    ddeg = b.deg_y
    rem = a
    while not rem.is_zero() and rem.deg_y >= ddeg:
        rc = rem.y_coeffs()
        lead = BiPoly({(i, 0): v for i, v in enumerate(rc[-1].c) if v})
        shift = rem.deg_y - ddeg
        rem = rem * blc - b * lead * BiPoly({(0, shift): Fraction(1)})
        if not rem.is_zero() and rem.deg_y >= ddeg + shift + 1:
            raise AssertionError("pseudo-division failed to reduce degree")
    return rem


# -- resultants -------------------------------------------------------------------


def resultant(f: BiPoly, g: BiPoly, eliminate: str = "y") -> UniPoly:
    """Sylvester resultant eliminating the given variable.

    Raises DegreeZero if either argument is constant in that variable.  The
    sign convention is the Sylvester determinant with f-rows first.
    """
    if eliminate == "x":
        return resultant(f.swap_xy(), g.swap_xy(), "y")
    m, n = f.deg_y, g.deg_y
    if m <= 0 or n <= 0:
        raise DegreeZero(f"resultant: y-degrees {m}, {n}")
    # degree bound of Res_y(f, g) in x
    bound = f.deg_x * n + g.deg_x * m
    xs: list[Fraction] = []
    vals: list[Fraction] = []
    k = 0
    fc, gc = f.y_coeffs(), g.y_coeffs()
    while len(xs) < bound + 1:
        x0 = Fraction(k)
        k = -k if k > 0 else -k + 1  # 0, 1, -1, 2, -2, ...
        fa = UniPoly([p.eval(x0) for p in fc])
        ga = UniPoly([p.eval(x0) for p in gc])
        # the specialised Sylvester matrix must keep its shape: pad rows by
        # using the ORIGINAL degrees, i.e. treat missing leading coeffs as 0.
        vals.append(_sylvester_det_fixed(fa, m, ga, n))
        xs.append(x0)
    return _lagrange(xs, vals)


def _sylvester_det_fixed(a: UniPoly, m: int, b: UniPoly, n: int) -> Fraction:
    """Determinant of the Sylvester matrix of shapes (m, n) with coefficients
    taken from a (deg <= m) and b (deg <= n); vanished leading coefficients
    keep their zero entries.  Rows are scaled to integers and eliminated with
    the fraction-free Bareiss scheme."""
    from math import gcd as _igcd

    size = m + n
    ra = [a.c[i] if i < len(a.c) else Fraction(0) for i in range(m + 1)][::-1]
    rb = [b.c[i] if i < len(b.c) else Fraction(0) for i in range(n + 1)][::-1]

    def int_row(vals: list[Fraction]) -> tuple[list[int], int]:
        l = 1
        for v in vals:
            l = l * v.denominator // _igcd(l, v.denominator)
        return [int(v * l) for v in vals], l

    ia, la = int_row(ra)
    ib, lb = int_row(rb)
    rows: list[list[int]] = []
    denom = 1
    for i in range(n):
        rows.append([0] * i + ia + [0] * (size - m - 1 - i))
        denom *= la
    for i in range(m):
        rows.append([0] * i + ib + [0] * (size - n - 1 - i))
        denom *= lb
    sign = 1
    prev = 1
    for kk in range(size - 1):
        if rows[kk][kk] == 0:
            for j in range(kk + 1, size):
                if rows[j][kk] != 0:
                    rows[kk], rows[j] = rows[j], rows[kk]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pk = rows[kk][kk]
        for i2 in range(kk + 1, size):
            ri, rk = rows[i2], rows[kk]
            lik = ri[kk]
            for j2 in range(kk + 1, size):
                ri[j2] = (ri[j2] * pk - lik * rk[j2]) // prev
            ri[kk] = 0
        prev = pk
    return Fraction(sign * rows[size - 1][size - 1], denom)


def _lagrange(xs: list[Fraction], vals: list[Fraction]) -> UniPoly:
    """Interpolating polynomial through (xs[i], vals[i]) (Newton form)."""
    n = len(xs)
    coeffs = list(vals)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (xs[i] - xs[i - j])
    # Horner expansion of the Newton form
    p = UniPoly.zero()
    for i in range(n - 1, -1, -1):
        p = p * UniPoly([-xs[i], 1]) + UniPoly.const(coeffs[i])
    return p


def discriminant_y(f: BiPoly) -> UniPoly:
    """Res_y(f, df/dy); vanishes at abscissae of vertical tangents, singular
    points and multiple y-roots (leading-coefficient zeros may appear too)."""
    fy = f.partial_y()
    if f.deg_y <= 0 or fy.deg_y < 0:
        raise DegreeZero("discriminant_y needs positive y-degree")
    if fy.deg_y == 0:
        # f linear in y: no y-critical structure
        return UniPoly.one()
    return resultant(f, fy, "y")


# -- squarefree / coprime tests ---------------------------------------------------


def is_squarefree(f: BiPoly) -> bool:
    if f.is_zero():
        return False
    if f.is_const():
        return True
    cont = f.content_x()
    if cont.degree > 0 and squarefree_part(cont) != cont.monic():
        return False
    if f.deg_y == 0:
        p = f.y_coeffs()[0]
        return squarefree_part(p) == p.monic()
    prim = f.exact_div(BiPoly.from_y_coeffs([cont])) if cont.degree > 0 else f
    if prim.deg_y == 0:
        return True
    r = resultant(prim, prim.partial_y(), "y") if prim.partial_y().deg_y >= 1 else None
    if r is None:
        # prim linear in y: squarefree iff content already handled
        return True
    return not r.is_zero()


def are_coprime(f: BiPoly, g: BiPoly) -> bool:
    """No common nonconstant factor over Q[x, y]."""
    if f.is_zero() or g.is_zero():
        return False
    if f.deg_y >= 1 and g.deg_y >= 1:
        r = resultant(f, g, "y")
        if r.is_zero():
            return False
        # a common factor purely in x would also show up in the x-contents
        cf, cg = f.content_x(), g.content_x()
        return poly_gcd(cf, cg).degree <= 0
    if f.deg_y == 0 and g.deg_y == 0:
        return poly_gcd(f.y_coeffs()[0], g.y_coeffs()[0]).degree <= 0
    a, b = (f, g) if f.deg_y == 0 else (g, f)
    return poly_gcd(a.y_coeffs()[0], b.content_x()).degree <= 0


# -- parsing ------------------------------------------------------------------------


def parse_poly(text: str) -> BiPoly:
    """Parse the canonical text form (integer/rational coefficients, x, y, ^, *)."""
    from .parser import parse_polynomial  # local import to avoid a cycle

    return parse_polynomial(text)
