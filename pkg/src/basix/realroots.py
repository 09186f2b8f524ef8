"""Real root isolation and refinable root locators.

Primary isolation is bisection driven by Descartes' rule on the interval-mapped
polynomial; a Sturm chain is kept as an independent certification path.  All
interval endpoints are rational, and every locator can be refined on demand to
arbitrary width.  Rational roots are recognised exactly (simplest rational in
the isolating interval, probed against the polynomial).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .unipoly import UniPoly, poly_gcd, squarefree_part

Frac = Fraction


# -- integer polynomial helpers ------------------------------------------------


def _sign_at(p: UniPoly, x: Fraction) -> int:
    v = p.eval(x)
    return (v > 0) - (v < 0)


def _descartes_bound(c: list) -> int:
    signs = [v for v in c if v != 0]
    var = 0
    for a, b in zip(signs, signs[1:]):
        if (a > 0) != (b > 0):
            var += 1
    return var


def _int_sign_at(c: list[int], x: Fraction) -> int:
    """Sign of the integer polynomial at a rational point, all-integer:
    sign(sum c_i num^i den^(n-i))."""
    num, den = x.numerator, x.denominator
    n = len(c) - 1
    acc = 0
    npow = 1
    dpows = [1] * (n + 1)
    for i in range(n - 1, -1, -1):
        dpows[i] = dpows[i + 1] * den
    for i, v in enumerate(c):
        if v:
            acc += v * npow * dpows[i]
        npow *= num
    return (acc > 0) - (acc < 0)


def _mapped_int(c: list[int], a: Fraction, b: Fraction) -> list[int]:
    """Integer coefficients proportional to (1+x)^n * p((a + b x)/(1+x));
    the sign variation bounds the number of roots of p in (a, b)."""
    from math import gcd as _g

    n = len(c) - 1
    d = a.denominator * b.denominator // _g(a.denominator, b.denominator)
    A = int(a * d)
    B = int(b * d)
    acc = [c[n]]
    pw = [1]  # (d(1+x))^(n-i), grown one step per iteration
    for i in range(n - 1, -1, -1):
        new = [0] * (len(acc) + 1)
        for k, v in enumerate(acc):
            if v:
                new[k] += v * A
                new[k + 1] += v * B
        nxt = [0] * (len(pw) + 1)
        for k, v in enumerate(pw):
            nxt[k] += v * d
            nxt[k + 1] += v * d
        pw = nxt
        ci = c[i]
        if ci:
            for k, v in enumerate(pw):
                new[k] += ci * v
        acc = new
    return acc


def root_bound(p: UniPoly) -> Fraction:
    """Cauchy bound: all real roots lie in (-B, B)."""
    if p.degree <= 0:
        return Fraction(1)
    lc = abs(p.lc())
    m = max(abs(v) for v in p.c[:-1]) if p.degree > 0 else Fraction(0)
    b = 1 + m / lc
    # round up to a power of two for dyadic-friendly endpoints
    bb = Fraction(1)
    while bb < b:
        bb *= 2
    return bb


@dataclass
class RootLocator:
    """One real root of a squarefree polynomial, isolated in (lo, hi).

    ``exact`` is set when the root is a known rational; otherwise p changes
    sign across (lo, hi) and the interval can be halved indefinitely.
    """

    p: UniPoly
    lo: Fraction
    hi: Fraction
    exact: Fraction | None = None

    def __post_init__(self):
        if self.exact is None and not (self.lo < self.hi):
            raise ValueError("empty isolating interval")
        self._ip: list[int] | None = None

    def _ints(self) -> list[int]:
        if self._ip is None:
            self._ip = self.p.int_primitive()
        return self._ip

    def _sign(self, x: Fraction) -> int:
        return _int_sign_at(self._ints(), x)

    @property
    def width(self) -> Fraction:
        if self.exact is not None:
            return Fraction(0)
        return self.hi - self.lo

    def mid(self) -> Fraction:
        if self.exact is not None:
            return self.exact
        return (self.lo + self.hi) / 2

    def refine(self) -> None:
        if self.exact is not None:
            return
        m = (self.lo + self.hi) / 2
        sm = self._sign(m)
        if sm == 0:
            self.exact = m
            self.lo = self.hi = m
            return
        if sm == self._sign(self.lo):
            self.lo = m
        else:
            self.hi = m

    def refine_below(self, width: Fraction) -> None:
        while self.exact is None and self.hi - self.lo >= width:
            self.refine()

    def contains(self, x: Fraction) -> bool:
        if self.exact is not None:
            return x == self.exact
        return self.lo < x < self.hi

    def try_rational(self, rounds: int = 64) -> Fraction | None:
        """Detect a rational root by probing the simplest rational in the
        interval after successive refinements.  Sound but incomplete: a miss
        only means the root has a large denominator (or is irrational)."""
        if self.exact is not None:
            return self.exact
        for _ in range(rounds):
            cand = simplest_in(self.lo, self.hi)
            if self._sign(cand) == 0:
                self.exact = cand
                self.lo = self.hi = cand
                return cand
            self.refine()
            if self.exact is not None:
                return self.exact
        return None

    def __repr__(self) -> str:
        if self.exact is not None:
            return f"Root({self.exact})"
        return f"Root({self.lo}..{self.hi})"


def simplest_in(lo: Fraction, hi: Fraction) -> Fraction:
    """A low-complexity rational strictly inside (lo, hi) (continued-fraction
    descent; returns the interval's simplest element up to ties)."""
    if lo >= hi:
        raise ValueError("empty interval")
    if lo < 0 < hi:
        return Fraction(0)
    if hi <= 0:
        return -simplest_in(-hi, -lo)
    # now 0 <= lo < hi
    fl = lo.numerator // lo.denominator
    if fl + 1 < hi:
        return Fraction(fl + 1)
    if lo == fl:
        # interval (fl, hi) with hi <= fl + 1: take fl + 1/m, smallest valid m
        inv = 1 / (hi - fl)
        m = inv.numerator // inv.denominator + 1
        return fl + Fraction(1, m)
    return fl + 1 / simplest_in(1 / (hi - fl), 1 / (lo - fl))


def isolate_real_roots(
    p: UniPoly,
    lo: Fraction | None = None,
    hi: Fraction | None = None,
    detect_rational: bool = True,
) -> list[RootLocator]:
    """Disjoint isolating intervals for the distinct real roots of p in (lo, hi).

    p is made squarefree internally; results are ordered increasingly.
    """
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    sf = squarefree_part(p)
    if sf.degree <= 0:
        return []
    B = root_bound(sf)
    a = lo if lo is not None else -B
    b = hi if hi is not None else B
    if a >= b:
        return []
    out: list[RootLocator] = []

    def emit_exact(x: Fraction):
        out.append(RootLocator(sf, x, x, exact=x))

    def walk(a: Fraction, b: Fraction, q: UniPoly, ic: list[int]):
        var = _descartes_bound(_mapped_int(ic, a, b))
        if var == 0:
            return
        if var == 1 and _int_sign_at(ic, a) != 0 and _int_sign_at(ic, b) != 0:
            # carry the root-stripped polynomial: its endpoint signs are the
            # refinement certificate (sf itself may vanish at an endpoint)
            out.append(RootLocator(q, a, b))
            return
        m = (a + b) / 2
        if _int_sign_at(ic, m) == 0:
            q2 = q.exact_div(UniPoly([-m, 1]))
            ic2 = q2.int_primitive()
            emit_exact(m)
            walk(a, m, q2, ic2)
            walk(m, b, q2, ic2)
            return
        walk(a, m, q, ic)
        walk(m, b, q, ic)

    q = sf
    # strip roots at the window endpoints so Descartes sees open intervals
    for e in (a, b):
        while not q.is_zero() and q.eval(e) == 0:
            q = q.exact_div(UniPoly([-e, 1]))
    if q.degree > 0:
        walk(a, b, q, q.int_primitive())
    out.sort(key=lambda r: r.mid() if r.exact is not None else r.lo)
    # ensure pairwise disjoint (Descartes bisection already guarantees it,
    # but exact roots found mid-walk may touch interval endpoints)
    for r1, r2 in zip(out, out[1:]):
        while not (
            (r1.exact is not None and (r2.exact is not None or r1.exact <= r2.lo))
            or (r1.exact is None and r2.exact is not None and r1.hi <= r2.exact)
            or (r1.exact is None and r2.exact is None and r1.hi <= r2.lo)
        ):
            r1.refine()
            r2.refine()
    if detect_rational:
        for r in out:
            if r.exact is None:
                r.try_rational(rounds=24)
    return out


# -- Sturm certification --------------------------------------------------------


def sturm_chain(p: UniPoly) -> list[UniPoly]:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        chain.append(-(chain[-2] % chain[-1]))
    if chain[-1].is_zero():
        chain.pop()
    return chain


def _variations_at(chain: list[UniPoly], x: Fraction) -> int:
    signs = []
    for q in chain:
        s = _sign_at(q, x)
        if s != 0:
            signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations_at_inf(chain: list[UniPoly], positive: bool) -> int:
    signs = []
    for q in chain:
        if q.is_zero():
            continue
        s = 1 if q.lc() > 0 else -1
        if not positive and q.degree % 2 == 1:
            s = -s
        signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(p: UniPoly, lo: Fraction | None = None, hi: Fraction | None = None) -> int:
    """Number of distinct real roots of p in (lo, hi] (whole line by default)."""
    sf = squarefree_part(p)
    if sf.degree <= 0:
        return 0
    chain = sturm_chain(sf)
    va = _variations_at(chain, lo) if lo is not None else _variations_at_inf(chain, False)
    vb = _variations_at(chain, hi) if hi is not None else _variations_at_inf(chain, True)
    return va - vb


def count_roots_below(p: UniPoly, x: Fraction) -> int:
    """Number of distinct real roots of p in (-inf, x)."""
    sf = squarefree_part(p)
    if sf.degree <= 0:
        return 0
    return len(isolate_real_roots(sf, None, x, detect_rational=False))


def definitely_no_roots(p: UniPoly, a: Fraction, b: Fraction) -> bool:
    """Fast certificate that p has no real roots in (a, b) (Descartes bound
    zero on the mapped polynomial); False is inconclusive."""
    if p.degree <= 0:
        return not p.is_zero()
    return _descartes_bound(_mapped_int(p.int_primitive(), a, b)) == 0


def roots_equal(r1: RootLocator, r2: RootLocator) -> bool:
    """Decide exactly whether two locators (of possibly different squarefree
    polynomials) denote the same real algebraic number."""
    if r1.exact is not None and r2.exact is not None:
        return r1.exact == r2.exact
    if r1.exact is not None:
        return r2.contains(r1.exact) and r2.p.eval(r1.exact) == 0
    if r2.exact is not None:
        return r1.contains(r2.exact) and r1.p.eval(r2.exact) == 0
    g = poly_gcd(r1.p, r2.p)
    if g.degree <= 0:
        return False
    lo = max(r1.lo, r2.lo)
    hi = min(r1.hi, r2.hi)
    if lo >= hi:
        # disjoint now, but roots may still coincide only if intervals touch;
        # separate locators of the same number always keep overlapping.
        return False
    # avoid g-roots at the window endpoints
    while g.eval(lo) == 0 or g.eval(hi) == 0:
        r1.refine()
        r2.refine()
        lo = max(r1.lo, r2.lo)
        hi = min(r1.hi, r2.hi)
        if lo >= hi or r1.exact is not None or r2.exact is not None:
            return roots_equal(r1, r2)
    return sturm_count(g, lo, hi) > 0


def compare_roots(r1: RootLocator, r2: RootLocator) -> int:
    """-1, 0, +1 ordering of two root locators; exact."""
    if roots_equal(r1, r2):
        return 0
    while True:
        hi1 = r1.exact if r1.exact is not None else r1.hi
        lo1 = r1.exact if r1.exact is not None else r1.lo
        hi2 = r2.exact if r2.exact is not None else r2.hi
        lo2 = r2.exact if r2.exact is not None else r2.lo
        if hi1 <= lo2:
            return -1
        if hi2 <= lo1:
            return 1
        r1.refine()
        r2.refine()


def refine_disjoint(locs: list[RootLocator]) -> None:
    """Refine a list of locators of pairwise-distinct roots until the
    isolating intervals are pairwise disjoint and sorted."""
    changed = True
    while changed:
        changed = False
        locs.sort(key=lambda r: r.exact if r.exact is not None else r.lo)
        for a, b in zip(locs, locs[1:]):
            ahi = a.exact if a.exact is not None else a.hi
            blo = b.exact if b.exact is not None else b.lo
            if not (ahi <= blo) or (a.exact is not None and b.exact is not None and a.exact == b.exact):
                if a.exact is not None and b.exact is not None:
                    if a.exact == b.exact:
                        raise ValueError("coincident roots passed to refine_disjoint")
                    continue
                a.refine()
                b.refine()
                changed = True
