"""Fractional-power-series expansion of real curve branches.

Branches are computed by the Newton-polygon recursion with a Hensel lift at
regular leaves.  Only rational characteristic roots are supported: a real
irrational root aborts with Unsupported rather than leaving exact arithmetic.
Every arc is a parametrization x = cx + delta*t^N, y = cy + sum(c_i t^n_i)
(or the same with the roles of x and y swapped for vertical tangents),
optionally carrying a symbolic tail (eta*z + a)*t^m whose sign semantics are
"for all sufficiently small z > 0".
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .bipoly import BiPoly
from .errors import BasixError, Unsupported
from .realroots import isolate_real_roots
from .series import TSeries, ZPoly, compose_bipoly, series_div_unit
from .unipoly import UniPoly

F = Fraction

_DEPTH_CAP = 64
_K_CAP = 128

W_FORMS = ("z+a", "-z+a", "1/z", "-1/z")


@dataclass(frozen=True)
class Slot:
    m: int
    eta: int  # +1 / -1, multiplies z (or 1/z for reciprocal forms)
    a: Fraction
    form: str  # one of W_FORMS

    def zpoly(self) -> ZPoly:
        if self.form in ("z+a", "-z+a"):
            return ZPoly.linear(self.a, self.eta)
        # reciprocal forms carry no rational part
        return ZPoly([0, F(self.eta)])


@dataclass(frozen=True)
class PuiseuxArc:
    """Truncated parametrization of an analytic half-branch pair.

    For swapped arcs the series describe x as a function of y; xy_series()
    always returns (x(t), y(t)).
    """

    center: tuple[Fraction, Fraction]
    delta: int
    N: int
    terms: tuple[tuple[int, Fraction], ...]  # strictly increasing exponents
    truncation: int | None  # exact modulo t^truncation; None = exact polynomial
    slot: Slot | None = None
    swapped: bool = False
    on_factor: str | None = None

    @property
    def reciprocal(self) -> bool:
        return self.slot is not None and self.slot.form in ("1/z", "-1/z")

    def body_series(self) -> TSeries:
        d: dict[int, ZPoly] = {e: ZPoly.const(c) for e, c in self.terms}
        if self.slot is not None:
            zc = self.slot.zpoly()
            d[self.slot.m] = d.get(self.slot.m, ZPoly()) + zc
        return TSeries.make(d, self.truncation)

    def xy_series(self) -> tuple[TSeries, TSeries]:
        cx, cy = self.center
        param = TSeries.make({0: ZPoly.const(0), self.N: ZPoly.const(self.delta)}, None)
        body = self.body_series()
        if not self.swapped:
            xs = TSeries.const(cx, None) + param
            ys = TSeries.const(cy, None) + body
        else:
            xs = TSeries.const(cx, None) + body
            ys = TSeries.const(cy, None) + param
        return xs, ys

    def first_exponent(self) -> int | None:
        return self.terms[0][0] if self.terms else None

    def eval_concrete(self, t0: Fraction, z0: Fraction | None = None) -> tuple[Fraction, Fraction]:
        xs, ys = self.xy_series()
        if z0 is not None:
            xs, ys = xs.eval_z(z0), ys.eval_z(z0)
        xv = xs.eval_t(t0)
        yv = ys.eval_t(t0)
        assert len(xv.c) <= 1 and len(yv.c) <= 1, "symbolic slot needs a z value"
        return (xv.c[0] if xv.c else F(0), yv.c[0] if yv.c else F(0))

    def with_slot(self, m: int, eta: int, a: Fraction, form: str = "z+a") -> "PuiseuxArc":
        return replace(self, slot=Slot(m, eta, F(a), form))


@dataclass(frozen=True)
class ParamArc:
    """A raw parametric arc (x(t), y(t)) with polynomial-in-z coefficients."""

    xs: TSeries
    ys: TSeries
    reciprocal: bool = False
    on_factor: str | None = None

    def xy_series(self) -> tuple[TSeries, TSeries]:
        return self.xs, self.ys


Arc = PuiseuxArc | ParamArc


class NotOnCurve(BasixError):
    pass


# ------------------------------------------------------------------ expansion


def _divide_x_power(p: BiPoly) -> tuple[BiPoly, int]:
    if p.is_zero():
        return p, 0
    m = min(i for i, _j in p.t)
    if m == 0:
        return p, 0
    return BiPoly({(i - m, j): v for (i, j), v in p.t.items()}), m


def _divide_y_power(p: BiPoly) -> tuple[BiPoly, int]:
    if p.is_zero():
        return p, 0
    m = min(j for _i, j in p.t)
    if m == 0:
        return p, 0
    return BiPoly({(i, j - m): v for (i, j), v in p.t.items()}), m


def _hensel(Fp: BiPoly, K: int) -> dict[int, Fraction]:
    """The unique series root y(x) with y(0) = 0 of a y-regular polynomial."""
    xs = TSeries.make({1: ZPoly.const(1)}, None)
    y = TSeries.zero(None)
    Fy = Fp.partial_y()
    p = 1
    while p < K:
        p = min(2 * p, K)
        num = compose_bipoly(Fp, xs, y)
        den = compose_bipoly(Fy, xs, y)
        q = series_div_unit(num, den, p)
        y = TSeries.make({e: v for e, v in (y - q).coeff if e < p}, None)
    out: dict[int, Fraction] = {}
    for e, v in y.coeff:
        assert len(v.c) <= 1
        if v.c:
            out[e] = v.c[0]
    return out


def _edge_polynomial(sup: list[tuple[int, int, Fraction]], j1: int, i1: int, j2: int, i2: int, q: int) -> UniPoly:
    coeffs: dict[int, Fraction] = {}
    # points on the segment from (j1, i1) to (j2, i2) in the (j, i) plane
    for i, j, a in sup:
        if j < j1 or j > j2:
            continue
        # on the segment iff (i - i1)*(j2 - j1) == (j - j1)*(i2 - i1)
        if (i - i1) * (j2 - j1) == (j - j1) * (i2 - i1):
            k = (j - j1) // q
            coeffs[k] = coeffs.get(k, F(0)) + a
    n = max(coeffs)
    return UniPoly([coeffs.get(k, F(0)) for k in range(n + 1)])


def _rational_roots(psi: UniPoly) -> list[Fraction]:
    """Nonzero rational roots; a real irrational root raises Unsupported."""
    q = psi
    while not q.is_zero() and q.eval(F(0)) == 0:
        q = q.exact_div(UniPoly([0, 1]))
    if q.degree < 1:
        return []
    out = []
    for loc in isolate_real_roots(q):
        r = loc.try_rational(rounds=96)
        if r is None:
            raise Unsupported("NonRationalCoefficient", "irrational characteristic root in a branch expansion")
        if r != 0:
            out.append(r)
    return out


def _expand(Fp: BiPoly, K: int, depth: int = 0) -> list[tuple[int, dict[int, Fraction], int | None]]:
    """Branches (N, {exponent: coefficient}, exact-order) of Fp at the origin,
    with x = t^N and y = sum of the terms."""
    if depth > _DEPTH_CAP:
        raise Unsupported("DepthCap", "branch expansion recursion too deep")
    out: list[tuple[int, dict[int, Fraction], int | None]] = []
    Fp, _ = _divide_x_power(Fp)
    Fp, ymult = _divide_y_power(Fp)
    if ymult > 0:
        out.append((1, {}, None))  # the horizontal axis branch
    if Fp.eval(0, 0) != 0 or Fp.deg_y == 0:
        return out
    fy0 = Fp.partial_y().eval(0, 0)
    if fy0 != 0:
        out.append((1, _hensel(Fp, K), K))
        return out

    sup = [(i, j, a) for (i, j), a in Fp.t.items()]
    pts: dict[int, int] = {}
    for i, j, _a in sup:
        pts[j] = min(pts.get(j, i), i)
    hull: list[tuple[int, int]] = []  # (j, i) lower hull, increasing j
    for j in sorted(pts):
        i = pts[j]
        while len(hull) >= 2:
            (j0, i0), (j1, i1) = hull[-2], hull[-1]
            if (i1 - i0) * (j - j0) >= (i - i0) * (j1 - j0):
                hull.pop()
            else:
                break
        hull.append((j, i))
    for (j1, i1), (j2, i2) in zip(hull, hull[1:]):
        if i2 >= i1:
            continue  # only descending edges give branches through y = 0
        mu = F(i1 - i2, j2 - j1)
        p, q = mu.numerator, mu.denominator
        psi = _edge_polynomial(sup, j1, i1, j2, i2, q)
        for c in _rational_roots(psi):
            xp = BiPoly({(q, 0): F(1)})
            yp = BiPoly({(p, 0): c, (p, 1): F(1)})
            G = Fp.subst(xp, yp)
            G, _m = _divide_x_power(G)
            for (N1, terms1, upto1) in _expand(G, K, depth + 1):
                N = q * N1
                base = p * N1
                terms = {base: c}
                for n, b in terms1.items():
                    terms[base + n] = b
                upto = None if upto1 is None else base + upto1
                out.append((N, terms, upto))
    return out


def _mu_eff(N: int, terms: dict[int, Fraction]) -> Fraction | None:
    exps = [n for n, c in terms.items() if c != 0]
    if not exps:
        return None  # the axis branch
    return F(min(exps), N)


def branch_set(f: BiPoly, center: tuple[Fraction, Fraction], K: int) -> list[PuiseuxArc]:
    """All real branches of f through the center, truncated at t^K."""
    cx, cy = F(center[0]), F(center[1])
    if f.eval(cx, cy) != 0:
        raise NotOnCurve(f"({cx}, {cy}) is not on the curve")
    T = f.translate(cx, cy)
    arcs: list[PuiseuxArc] = []

    def emit(raw, delta: int, swapped: bool, keep):
        for N, terms, upto in raw:
            mu = _mu_eff(N, terms)
            if not keep(mu):
                continue
            if delta == -1 and N % 2 == 1:
                continue  # odd ramification already covers both sides
            tt = tuple(sorted((n, c) for n, c in terms.items() if c != 0))
            trunc = upto if upto is None else min(upto, K)
            if trunc is not None:
                tt = tuple((n, c) for n, c in tt if n < trunc)
            arcs.append(
                PuiseuxArc((cx, cy), delta, N, tt, trunc, swapped=swapped)
            )

    ge1 = lambda mu: mu is None or mu >= 1
    gt1 = lambda mu: mu is None or mu > 1
    emit(_expand(T, K), 1, False, ge1)
    emit(_expand(T.subst(BiPoly({(1, 0): F(-1)}), BiPoly.y()), K), -1, False, ge1)
    Ts = T.swap_xy()
    emit(_expand(Ts, K), 1, True, gt1)
    emit(_expand(Ts.subst(BiPoly({(1, 0): F(-1)}), BiPoly.y()), K), -1, True, gt1)
    return arcs


def newton_puiseux(
    f: BiPoly, center: tuple[Fraction, Fraction], K: int, factor_name: str | None = None
) -> list[PuiseuxArc]:
    """Branch set of a single squarefree factor, with the residual guarantee
    that composing f with each branch vanishes exactly modulo t^truncation."""
    arcs = [replace(a, on_factor=factor_name) for a in branch_set(f, center, K)]
    for a in arcs:
        r = residual_order(f, a)
        if r is not None:
            raise BasixError(f"branch residual of order {r} below truncation")
    return arcs


def residual_order(f: BiPoly, arc: PuiseuxArc) -> int | None:
    """Order of the first certain nonzero term of f composed with the arc,
    None if all certain terms vanish (the residual invariant holds)."""
    xs, ys = arc.xy_series()
    comp = compose_bipoly(f, xs, ys)
    lead = comp.leading()
    return None if lead is None else lead[0]


# ------------------------------------------------------------------ separation


def expand_scene_branches(
    factors: dict[str, BiPoly],
    center: tuple[Fraction, Fraction],
    K0: int | None = None,
) -> dict[str, list[PuiseuxArc]]:
    """Branches of every factor through the center, truncated deep enough that
    distinct branches are pairwise distinguished on their common sides."""
    through = {n: p for n, p in factors.items() if p.eval(*center) == 0}
    maxdeg = max((p.total_degree for p in through.values()), default=1)
    K = K0 or max(8, 2 * maxdeg)
    while True:
        sets = {n: newton_puiseux(p, center, K, n) for n, p in through.items()}
        flat = [(n, a) for n, arcs in sets.items() for a in arcs]
        ok = True
        for i in range(len(flat)):
            for j in range(i + 1, len(flat)):
                a, b = flat[i][1], flat[j][1]
                if a.swapped != b.swapped:
                    continue
                for side in (1, -1):
                    try:
                        r = compare_arcs(a, b, side)
                    except BasixError:
                        continue
                    if r == "Undistinguished":
                        ok = False
        if ok:
            return sets
        K *= 2
        if K > _K_CAP:
            raise Unsupported("TruncationCap", f"branches not separated below t^{_K_CAP}")


# ------------------------------------------------------------------ comparison


def _x_side(arc: PuiseuxArc, side: int) -> int:
    """Sign of x - cx on the chosen parameter side (0 if the arc is vertical)."""
    if arc.swapped:
        return 0
    return arc.delta if (arc.N % 2 == 0 or side > 0) else -arc.delta


def _puiseux_key(arc: PuiseuxArc, side: int) -> list[tuple[Fraction, ZPoly]]:
    """(exponent, coefficient) pairs of y - cy as a series in |x - cx|."""
    out = []
    for e, zc in arc.body_series().coeff:
        c = zc if (side > 0 or e % 2 == 0) else -zc
        out.append((F(e, arc.N), c))
    return out


def compare_arcs(a: PuiseuxArc, b: PuiseuxArc, side: int) -> str:
    """'Above' | 'Below' | 'Undistinguished' comparing y-values near the
    common center on the given parameter side (for small z > 0 when symbolic)."""
    if a.center != b.center:
        raise BasixError("IncompatibleCenters")
    if a.swapped or b.swapped:
        raise BasixError("IncompatibleCenters: vertical branches are not y-comparable")
    if _x_side(a, side) != _x_side(b, side):
        raise BasixError("IncompatibleCenters: arcs lie on opposite x-sides")
    ka = _puiseux_key(a, side)
    kb = _puiseux_key(b, side)
    bound: Fraction | None = None
    if a.truncation is not None:
        bound = F(a.truncation, a.N)
    if b.truncation is not None:
        bb = F(b.truncation, b.N)
        bound = bb if bound is None else min(bound, bb)
    da, db = dict(ka), dict(kb)
    exps = sorted(set(da) | set(db))
    for e in exps:
        if bound is not None and e >= bound:
            break
        d = da.get(e, ZPoly()) - db.get(e, ZPoly())
        s = d.sign_small_pos()
        if s > 0:
            return "Above"
        if s < 0:
            return "Below"
    return "Undistinguished"


# ------------------------------------------------------------------ signs


def _lead_sign(zc: ZPoly, reciprocal: bool) -> int:
    if reciprocal:
        for v in reversed(zc.c):
            if v != 0:
                return 1 if v > 0 else -1
        return 0
    return zc.sign_small_pos()


def arc_sign(g: BiPoly, arc: Arc, side: int, on_poly: BiPoly | None = None) -> int | None:
    """Sign of g along the arc for small |t| on the given side (+1 / -1 / 0),
    or None when the truncation is too shallow to decide (caller deepens).

    0 is returned only when g vanishes identically on the arc; for truncated
    branch arcs this is detected by exact division by the branch's factor.
    """
    if g.is_zero():
        return 0
    xs, ys = arc.xy_series()
    comp = compose_bipoly(g, xs, ys)
    if side < 0:
        comp = comp.negate_t()
    s = comp.sign_small_pos_t()
    if s is not None:
        if s == 0:
            return 0
        lead = comp.leading()
        assert lead is not None
        return _lead_sign(lead[1], getattr(arc, "reciprocal", False))
    # unresolved: strip the branch's own factor if it divides g
    if on_poly is not None and not on_poly.is_const():
        k = 0
        r = g
        while not r.is_zero() and on_poly.divides(r):
            r = r.exact_div(on_poly)
            k += 1
        if k > 0:
            sh = arc_sign(on_poly, arc, side)
            if sh is None:
                return None
            if sh == 0:
                return 0
            sr = arc_sign(r, arc, side, on_poly=None)
            if sr is None:
                return None
            return (sh**k if sh > 0 else (-1) ** k) * sr if sr != 0 else 0
    return None


# ------------------------------------------------------------------ blow-up simulation


@dataclass(frozen=True)
class ArcFamily:
    """One-parameter family x = cx + delta*t^N, y = cy + kept + (eta*z + a)*t^m
    (or the axes swapped); instances meet the level-rho exceptional curve of the
    base branch's resolution transversally at distinct points."""

    center: tuple[Fraction, Fraction]
    delta: int
    N: int
    kept: tuple[tuple[int, Fraction], ...]
    m: int
    swapped: bool = False
    # the instance with line slope a' has slot coefficient zscale * a', so the
    # exceptional-curve crossing position and the slot parameter differ by
    # this exact factor
    zscale: Fraction = F(1)

    def make(self, eta: int, a: Fraction) -> PuiseuxArc:
        return PuiseuxArc(
            self.center,
            self.delta,
            self.N,
            self.kept,
            None,
            slot=Slot(self.m, eta, F(a), "z+a" if eta > 0 else "-z+a"),
            swapped=self.swapped,
        )

    def make_at(self, eta: int, v_target: Fraction) -> PuiseuxArc:
        """The instance whose lift crosses the exceptional curve at v_target,
        perturbed by eta*z in the slope parameter; exact (the scale factor is
        folded into both the rational part and the z-coefficient)."""
        a = self.zscale * v_target
        eff = eta if self.zscale > 0 else -eta
        arc = PuiseuxArc(
            self.center,
            self.delta,
            self.N,
            self.kept,
            None,
            slot=Slot(self.m, eff, F(a), "z+a" if eff > 0 else "-z+a"),
            swapped=self.swapped,
        )
        return arc


def simulate_branch_blowups(arc: PuiseuxArc, levels: int) -> list[tuple[str, Fraction]]:
    """The chart word of the first `levels` blow-ups along the branch:
    a list of (chart kind, centre coordinate subtracted after the step)."""
    xs, ys = arc.xy_series()
    cx, cy = arc.center
    xs = xs - TSeries.const(cx, None)
    ys = ys - TSeries.const(cy, None)
    word: list[tuple[str, Fraction]] = []
    upto = arc.truncation if arc.truncation is not None else (
        xs.max_exp() + ys.max_exp() + levels + 4
    )
    for _ in range(levels):
        ox = xs.ord()
        oy = ys.ord()
        if ox is None and oy is None:
            raise Unsupported("TruncationCap", "branch exhausted during blow-up simulation")
        if oy is None or (ox is not None and oy >= ox):
            # x-chart: v = y / x
            v = series_div_unit(ys, xs, upto)
            c = v.coeff[0][1].c[0] if v.coeff and v.coeff[0][0] == 0 else F(0)
            word.append(("x", c))
            ys = v - TSeries.const(c, None)
        else:
            u = series_div_unit(xs, ys, upto)
            c = u.coeff[0][1].c[0] if u.coeff and u.coeff[0][0] == 0 else F(0)
            word.append(("y", c))
            xs = u - TSeries.const(c, None)
        if (xs.trunc is not None and xs.trunc <= 0) or (ys.trunc is not None and ys.trunc <= 0):
            raise Unsupported("TruncationCap", "branch exhausted during blow-up simulation")
    return word


def push_down_line(
    word: list[tuple[str, Fraction]],
    center: tuple[Fraction, Fraction],
    slope: ZPoly,
) -> tuple[TSeries, TSeries]:
    """Push the site-local line (t, slope*t) down through the chart word."""
    u = TSeries.make({1: ZPoly.const(1)}, None)
    v = TSeries.make({1: slope}, None)
    for kind, c in reversed(word):
        if kind == "x":
            v = (v + TSeries.const(c, None)) * u
            # down-map of the x-chart: (u, v) -> (u, u * v_full)
            u, v = u, v
        else:
            u = (u + TSeries.const(c, None)) * v
            u, v = u, v
    cx, cy = center
    return TSeries.const(cx, None) + u, TSeries.const(cy, None) + v


def arc_family_A1(branch: PuiseuxArc, rho: int) -> ArcFamily:
    """The transversal-arc family at level rho of the branch's resolution."""
    if rho < 1:
        raise BasixError("LevelOutOfRange")
    if rho == 1:
        return ArcFamily(branch.center, 1, 1, (), 1, swapped=False)
    word = simulate_branch_blowups(branch, rho - 1)
    xs, ys = push_down_line(word, branch.center, ZPoly([0, 1]))  # slope = a' placeholder z
    # substitute the placeholder: coefficients are linear in z, where z stands
    # for the family parameter a' = a + eta*z; examine the shape
    return _family_from_push(branch, xs, ys)


def _family_from_push(branch: PuiseuxArc, xs: TSeries, ys: TSeries) -> ArcFamily:
    cx, cy = branch.center
    xs = xs - TSeries.const(cx, None)
    ys = ys - TSeries.const(cy, None)
    swapped = False
    if not _is_clean_param(xs):
        if _is_clean_param(ys):
            xs, ys = ys, xs
            swapped = True
        else:
            raise Unsupported(
                "A1FormUnsupported",
                "transversal family is not rationally parametrizable in normal form",
            )
    (nx, cxz) = xs.coeff[0]
    delta = 1 if cxz.c[0] > 0 else -1
    kept: list[tuple[int, Fraction]] = []
    mslot: int | None = None
    zscale = F(1)
    for e, zc in ys.coeff:
        const = zc.c[0] if zc.c else F(0)
        zlin = zc.c[1] if len(zc.c) > 1 else F(0)
        if len(zc.c) > 2:
            raise Unsupported("A1FormUnsupported", "family parameter appears nonlinearly")
        if zlin != 0:
            if mslot is not None:
                raise Unsupported("A1FormUnsupported", "family parameter spread over terms")
            mslot = e
            zscale = zlin
            if const != 0:
                raise Unsupported("A1FormUnsupported", "slot term carries a fixed part")
        elif const != 0:
            kept.append((e, const))
    if mslot is None:
        raise Unsupported("A1FormUnsupported", "family parameter vanished in the push-down")
    return ArcFamily((cx, cy), delta, nx, tuple(kept), mslot, swapped, zscale)


def _is_clean_param(s: TSeries) -> bool:
    if len(s.coeff) != 1:
        return False
    e, zc = s.coeff[0]
    return len(zc.c) == 1 and abs(zc.c[0]) == 1


# ------------------------------------------------------------------ membership


def certified_point(arc: Arc, side: int, polys: list[BiPoly], z0: Fraction | None) -> tuple[Fraction, Fraction]:
    """A rational point on the (z-instantiated) arc close enough to the centre
    that every polynomial keeps its small-t sign on the whole sub-arc."""
    xs, ys = arc.xy_series()
    if z0 is not None:
        xs, ys = xs.eval_z(z0), ys.eval_z(z0)
    r = F(1)
    for g in polys:
        comp = compose_bipoly(g, xs, ys)
        if side < 0:
            comp = comp.negate_t()
        lead = comp.leading()
        if lead is None:
            continue  # identically zero along the arc
        _e, zc = lead
        b = abs(zc.c[0])
        tail = sum(abs(v.c[0]) for _ee, v in comp.coeff[1:])
        r = min(r, b / (1 + tail))
    t0 = r / 2 if side > 0 else -r / 2
    xv = xs.eval_t(t0)
    yv = ys.eval_t(t0)
    return (xv.c[0] if xv.c else F(0), yv.c[0] if yv.c else F(0))


def arc_region_membership(arc: Arc, side: int, decomp) -> tuple:
    """('in_S',) | ('in_A', i) | ('unsigned', region) | ('on_curve', factor)
    for the local region entered by the half-arc."""
    arr = decomp.arrangement
    scene = arr.scene
    signs: dict[str, int] = {}
    for n in scene.order:
        s = arc_sign(scene.factors[n], arc, side, on_poly=_on_poly(arc, scene))
        if s is None:
            raise Unsupported("TruncationCap", f"sign of {n} unresolved along arc")
        if s == 0:
            return ("on_curve", n)
        signs[n] = s
    z0 = F(1, 8)
    polys = [scene.factors[n] for n in scene.order]
    has_slot = isinstance(arc, ParamArc) or (isinstance(arc, PuiseuxArc) and arc.slot is not None)
    for _ in range(24):
        pt = certified_point(arc, side, polys, z0 if has_slot else None)
        if all(scene.factors[n].sign_at(*pt) == signs[n] for n in scene.order):
            rid = arr.region_of_point(*pt)
            if rid in decomp.s_regions:
                return ("in_S",)
            i = decomp.a_of_region.get(rid)
            if i is not None:
                return ("in_A", i)
            return ("unsigned", rid)
        z0 = z0 / 2
    raise Unsupported("TruncationCap", "could not certify a concrete arc point")


def _on_poly(arc: Arc, scene) -> BiPoly | None:
    name = getattr(arc, "on_factor", None)
    return scene.factors.get(name) if name else None
