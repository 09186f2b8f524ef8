"""Blow-up resolution at a point and exceptional-component classification.

A point is blown up by the two standard quadratic substitutions; sites are
processed until the total transform (strict transforms of the given curves
plus all exceptional lines) has only smooth transversal crossings with at
most two branches per point.  Every chart is rational: an irrational centre
that would need resolution aborts with Unsupported.

Each exceptional component is classified against a lifted sign distribution
twice: by pushing rational sample points down the chart word (the path of
record) and independently by transversal-arc families evaluated without
performing any blow-up; the two verdicts must agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arrangement import Box, Loc, bipoly_sign_on_box, loc_bounds, loc_refine
from .bipoly import BiPoly
from .decompose import SetDecomposition
from .errors import BasixError, Unsupported
from .puiseux import ParamArc, PuiseuxArc, arc_region_membership, branch_set
from .realroots import RootLocator, isolate_real_roots, refine_disjoint, roots_equal, simplest_in
from .series import TSeries, ZPoly
from .unipoly import UniPoly

F = Fraction

_DEFAULT_DEPTH_CAP = 24
_NC_K = 10


@dataclass(frozen=True)
class Step:
    kind: str  # 'x' | 'y'
    tx: Fraction
    ty: Fraction

    def down_point(self, u: Fraction, v: Fraction) -> tuple[Fraction, Fraction]:
        if self.kind == "x":
            return self.tx + u, self.ty + u * v
        return self.tx + u * v, self.ty + u

    def down_series(self, u: TSeries, v: TSeries) -> tuple[TSeries, TSeries]:
        cu = TSeries.const(self.tx, None)
        cv = TSeries.const(self.ty, None)
        if self.kind == "x":
            return cu + u, cv + u * v
        return cu + u * v, cv + u


@dataclass
class BlowupChart:
    steps: tuple[Step, ...]

    def down_point(self, u: Fraction, v: Fraction) -> tuple[Fraction, Fraction]:
        for s in reversed(self.steps):
            u, v = s.down_point(u, v)
        return u, v

    def down_map(self) -> tuple[BiPoly, BiPoly]:
        """The composite as a pair of polynomials in the chart coordinates."""
        xs, ys = BiPoly.x(), BiPoly.y()
        for s in reversed(self.steps):
            if s.kind == "x":
                xs, ys = BiPoly.const(s.tx) + xs, BiPoly.const(s.ty) + xs * ys
            else:
                xs, ys = BiPoly.const(s.tx) + xs * ys, BiPoly.const(s.ty) + xs
        return xs, ys


@dataclass
class MarkedPoint:
    v: Loc
    tags: list  # curve tags crossing here
    simple: bool  # certified normal crossing without recursion


@dataclass
class ExceptionalComponent:
    level: int
    chart: BlowupChart
    curves: list[tuple[object, BiPoly]]  # strict transforms in this chart
    marked: list[MarkedPoint] = field(default_factory=list)
    inf_tags: list = field(default_factory=list)
    side_map: str = ""

    def arcs(self) -> list[tuple[Fraction | None, Fraction | None, Fraction]]:
        """(vlo, vhi, sample v) per open arc; None bounds mean the arc runs to
        the point at infinity of the component (always marked)."""
        if not self.marked:
            return [(None, None, F(0))]
        bounds: list[Loc] = [m.v for m in self.marked]
        _separate(bounds)
        out: list[tuple[Fraction | None, Fraction | None, Fraction]] = []
        lo0 = loc_bounds(bounds[0])[0]
        out.append((None, lo0, lo0 - 1))
        for a, b in zip(bounds, bounds[1:]):
            hi_a = loc_bounds(a)[1]
            lo_b = loc_bounds(b)[0]
            out.append((hi_a, lo_b, simplest_in(hi_a, lo_b)))
        hiN = loc_bounds(bounds[-1])[1]
        out.append((hiN, None, hiN + 1))
        return out


def _separate(locs: list[Loc], cap: int = 256) -> None:
    for _ in range(cap):
        ok = True
        for a, b in zip(locs, locs[1:]):
            if loc_bounds(a)[1] >= loc_bounds(b)[0]:
                loc_refine(a)
                loc_refine(b)
                ok = False
        if ok:
            return
    raise Unsupported("SeparationCap", "marked points could not be separated")


@dataclass
class ResolutionTree:
    center: tuple[Fraction, Fraction]
    components: list[ExceptionalComponent] = field(default_factory=list)
    trace: list[str] = field(default_factory=list)
    certificate: list[str] = field(default_factory=list)


# ----------------------------------------------------------------- NC testing


def _branch_tangents(p: BiPoly, name: object) -> list[tuple[bool, tuple[Fraction, Fraction]]]:
    """(smooth, tangent direction) per real branch of p at the origin."""
    out = []
    for a in branch_set(p, (F(0), F(0)), _NC_K):
        smooth = a.N == 1
        n1 = a.first_exponent()
        slope = dict(a.terms).get(a.N, F(0)) if n1 is not None else F(0)
        if not a.swapped:
            d = (F(1), slope if n1 == a.N else F(0))
        else:
            d = (slope if n1 == a.N else F(0), F(1))
        out.append((smooth, d))
    return out


def _dir_eq(a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction]) -> bool:
    return a[0] * b[1] - a[1] * b[0] == 0


def is_normal_crossing(curves: list[tuple[object, BiPoly]]) -> bool:
    """Total-transform normal crossing at the origin of the given local curves:
    at most two real branches, all smooth, pairwise transversal."""
    branches: list[tuple[bool, tuple[Fraction, Fraction]]] = []
    for tag, p in curves:
        branches.extend(_branch_tangents(p, tag))
        if len(branches) > 2:
            return False
    if any(not sm for sm, _d in branches):
        return False
    if len(branches) == 2 and _dir_eq(branches[0][1], branches[1][1]):
        return False
    return True


def _strict_transform(p: BiPoly, kind: str) -> BiPoly:
    if kind == "x":
        q = p.subst(BiPoly.x(), BiPoly.x() * BiPoly.y())
    else:
        q = p.subst(BiPoly.x() * BiPoly.y(), BiPoly.x())
    if q.is_zero():
        return q
    m = min(i for i, _j in q.t)
    return BiPoly({(i - m, j): v for (i, j), v in q.t.items()})


def _has_vertical_branch(curves: list[tuple[object, BiPoly]]) -> bool:
    for _tag, p in curves:
        for a in branch_set(p, (F(0), F(0)), _NC_K):
            if a.swapped:
                return True
    return False


# ----------------------------------------------------------------- resolution


def resolve_point(
    curves: dict[str, BiPoly],
    p: tuple[Fraction, Fraction],
    depth_cap: int = _DEFAULT_DEPTH_CAP,
) -> ResolutionTree:
    """Standard resolution of the given curve set at a rational point."""
    px, py = F(p[0]), F(p[1])
    through = [(n, poly.translate(px, py)) for n, poly in curves.items() if poly.eval(px, py) == 0]
    if not through:
        raise BasixError(f"({px}, {py}) lies on none of the given curves")
    tree = ResolutionTree((px, py))
    _resolve_site(tree, tuple(), (px, py), [(n, q) for n, q in through], depth_cap)
    return tree


def _resolve_site(
    tree: ResolutionTree,
    word: tuple[Step, ...],
    trans: tuple[Fraction, Fraction],
    curves: list[tuple[object, BiPoly]],
    depth_cap: int,
) -> None:
    """Blow up (translated) local curves at the origin until normal crossing."""
    if is_normal_crossing(curves):
        tree.certificate.append(f"site depth {len(word)}: normal crossing, no blow-up")
        return
    if len(word) >= depth_cap:
        raise Unsupported("DepthCap", f"resolution exceeded depth {depth_cap}")

    level = len(tree.components) + 1
    has_vert = _has_vertical_branch(curves)

    # x-chart: covers every direction except the vertical one
    step = Step("x", trans[0], trans[1])
    xword = word + (step,)
    stricts: list[tuple[object, BiPoly]] = []
    for tag, c in curves:
        sc = _strict_transform(c, "x")
        if not sc.is_const():
            stricts.append((tag, sc))
    D = ExceptionalComponent(level=level, chart=BlowupChart(xword), curves=stricts)
    tree.components.append(D)
    tree.trace.append(
        f"blow-up {level}: centre ({trans[0]}, {trans[1]}) at depth {len(word)}, chart x"
    )

    # marked points: real roots of the strict transforms on u = 0
    marks: list[MarkedPoint] = []
    for tag, sc in stricts:
        u0 = sc.specialize_x(F(0))
        if u0.is_zero():
            raise Unsupported("DegenerateStrictTransform", str(tag))
        if u0.degree < 1:
            continue
        for loc in isolate_real_roots(u0):
            placed = False
            for mp in marks:
                if roots_equal_loc(mp.v, loc):
                    mp.tags.append(tag)
                    placed = True
                    break
            if not placed:
                marks.append(MarkedPoint(v=(loc.exact if loc.exact is not None else loc), tags=[tag], simple=False))
    marks.sort(key=lambda m: loc_bounds(m.v)[0])
    D.marked = marks

    # recurse into non-normal-crossing marked points
    for mp in marks:
        simple = _marked_point_is_nc(stricts, mp)
        mp.simple = simple
        if simple:
            tree.certificate.append(f"D{level} at v={_vstr(mp.v)}: transversal simple crossing")
            continue
        vex = _exact_of(mp.v)
        if vex is None:
            raise Unsupported(
                "NonRationalSingularPoint",
                f"D{level} carries a non-transversal crossing at an irrational point",
            )
        translated = [(tag, sc.translate(F(0), vex)) for tag, sc in stricts if sc.eval(F(0), vex) == 0]
        translated.append((("exc", level), BiPoly.x()))
        _resolve_site(tree, xword, (F(0), vex), translated, depth_cap)

    # the point of D at infinity: handled in the y-chart when something meets it
    if has_vert:
        ytag_curves: list[tuple[object, BiPoly]] = []
        for tag, c in curves:
            sc = _strict_transform(c, "y")
            if not sc.is_const() and sc.eval(F(0), F(0)) == 0:
                ytag_curves.append((tag, sc))
        D.inf_tags = [tag for tag, _sc in ytag_curves]
        ytag_curves.append((("exc", level), BiPoly.x()))
        yword = word + (Step("y", trans[0], trans[1]),)
        if not is_normal_crossing(ytag_curves):
            _resolve_site(tree, yword, (F(0), F(0)), ytag_curves, depth_cap)
        else:
            tree.certificate.append(f"D{level} at v=inf: normal crossing")
    return


def roots_equal_loc(a: Loc, b: RootLocator) -> bool:
    if isinstance(a, Fraction):
        return b.contains(a) and b.p.eval(a) == 0 if b.exact is None else a == b.exact
    return roots_equal(a, b)


def _vanishes_at(p: BiPoly, v: Loc) -> bool:
    ex = _exact_of(v)
    if ex is not None:
        return p.eval(F(0), ex) == 0
    u0 = p.specialize_x(F(0))
    if u0.is_zero():
        return True
    if u0.degree < 1:
        return False
    assert isinstance(v, RootLocator)
    return any(roots_equal(v, loc) for loc in isolate_real_roots(u0))


def _exact_of(v: Loc) -> Fraction | None:
    if isinstance(v, Fraction):
        return v
    if v.exact is not None:
        return v.exact
    v.try_rational(rounds=48)
    return v.exact


def _vstr(v: Loc) -> str:
    lo, hi = loc_bounds(v)
    return str(lo) if lo == hi else f"({lo}..{hi})"


def _marked_point_is_nc(stricts: list[tuple[object, BiPoly]], mp: MarkedPoint) -> bool:
    """A marked point is normal crossing iff exactly one strict transform
    passes and its specialisation to u = 0 has a simple root there (then the
    branch is unique, smooth, and transversal to the exceptional line)."""
    crossing = [(tag, sc) for tag, sc in stricts if _vanishes_at(sc, mp.v)]
    if len(crossing) != 1:
        return False
    _tag, sc = crossing[0]
    u0 = sc.specialize_x(F(0))
    du = u0.derivative()
    ex = _exact_of(mp.v)
    if ex is not None:
        if du.eval(ex) == 0:
            return False
        # the full gradient must not vanish for the branch to be smooth;
        # d/dv nonzero already implies it
        return True
    assert isinstance(mp.v, RootLocator)
    # simple root iff v is not a root of gcd(u0, u0')
    from .unipoly import poly_gcd

    g = poly_gcd(u0, du)
    if g.degree < 1:
        return True
    return not any(roots_equal(mp.v, loc) for loc in isolate_real_roots(g))


# ----------------------------------------------------------------- classification


@dataclass
class ArcSideSigns:
    vlo: Fraction | None
    vhi: Fraction | None
    v_mid: Fraction
    sign_pos_u: int
    sign_neg_u: int
    verdict_pos: tuple
    verdict_neg: tuple


@dataclass
class ExcClassification:
    component_level: int
    verdict: str
    arcs: list[ArcSideSigns] = field(default_factory=list)

    def omega1(self) -> ArcSideSigns | None:
        for a in self.arcs:
            if {a.sign_pos_u, a.sign_neg_u} == {1, -1}:
                return a
        return None

    def omega2_plus(self) -> ArcSideSigns | None:
        for a in self.arcs:
            if a.sign_pos_u == 1 and a.sign_neg_u == 1:
                return a
        return None


def _verdict_sign(verdict: tuple, minus_component: int) -> int:
    if verdict[0] == "in_S":
        return 1
    if verdict[0] == "in_A" and verdict[1] == minus_component:
        return -1
    return 0


def family_arc_for(D: ExceptionalComponent, v_mid: Fraction) -> ParamArc:
    """The transversal family instance crossing D at v_mid, pushed down to the
    base chart without performing any blow-up on it."""
    u = TSeries.make({1: ZPoly.const(1)}, None)
    v = TSeries.make({1: ZPoly.const(v_mid)}, None)
    steps = D.chart.steps
    last = steps[-1]
    # the line lives in the site coordinates of the last step
    if last.kind == "x":
        pass
    else:
        u, v = v, u
    u = u + TSeries.const(last.tx, None)
    v = v + TSeries.const(last.ty, None)
    for s in reversed(steps[:-1]):
        if s.kind == "x":
            u, v = TSeries.const(s.tx, None) + u, TSeries.const(s.ty, None) + u * v
        else:
            u, v = TSeries.const(s.tx, None) + u * v, TSeries.const(s.ty, None) + u
    return ParamArc(u, v)


def _arc_sample_candidates(vlo: Fraction | None, vhi: Fraction | None, first: Fraction):
    """Sample positions inside the open arc, starting from the default one.
    Region verdicts are constant along the arc, but a sample may accidentally
    sit on a curve that is not part of the resolved set; alternates avoid it."""
    yield first
    if vlo is None and vhi is None:
        k = F(1)
        while True:
            yield first + k
            yield first - k
            k += 1
    elif vlo is None:
        k = F(1)
        while True:
            yield vhi - 1 - k  # type: ignore[operator]
            k += 1
    elif vhi is None:
        k = F(1)
        while True:
            yield vlo + 1 + k
            k += 1
    else:
        lo, hi = vlo, first
        while True:
            m = simplest_in(lo, hi)
            yield m
            hi = m


def classify_exceptional(
    D: ExceptionalComponent,
    decomp: SetDecomposition,
    minus_component: int,
    q_cap: int = 24,
    alt_cap: int = 12,
) -> ExcClassification:
    """Classify D against sigma = (+1 on S, -1 on the chosen component of the
    complement), by chart-point sampling cross-checked against the arc path."""
    arr = decomp.arrangement
    scene = arr.scene
    out = ExcClassification(D.level, "Silent")

    for vlo, vhi, v_default in D.arcs():
        signs: dict[int, tuple] = {}
        v_mid: Fraction | None = None
        alternates = _arc_sample_candidates(vlo, vhi, v_default)
        for _alt in range(alt_cap):
            v_try = next(alternates)
            got = _sample_arc_sides(D, decomp, v_try, q_cap)
            if got is not None:
                v_mid = v_try
                signs = got
                break
        if v_mid is None:
            raise Unsupported("SampleTooCoarse", f"no certified sample near D{D.level}")

        # independent path: transversal arc family, no blow-ups performed
        fam = family_arc_for(D, v_mid)
        v_pos = arc_region_membership(fam, 1, decomp)
        v_neg = arc_region_membership(fam, -1, decomp)
        if v_pos != signs[1] or v_neg != signs[-1]:
            raise BasixError(
                f"dual-path divergence on D{D.level} at v={v_mid}: chart {signs}, arcs {(v_pos, v_neg)}"
            )

        out.arcs.append(
            ArcSideSigns(
                vlo,
                vhi,
                v_mid,
                _verdict_sign(signs[1], minus_component),
                _verdict_sign(signs[-1], minus_component),
                signs[1],
                signs[-1],
            )
        )

    has_o1 = any({a.sign_pos_u, a.sign_neg_u} == {1, -1} for a in out.arcs)
    has_o2p = any(a.sign_pos_u == 1 and a.sign_neg_u == 1 for a in out.arcs)
    has_o2m = any(a.sign_pos_u == -1 and a.sign_neg_u == -1 for a in out.arcs)
    if has_o1 and has_o2p:
        out.verdict = "PositiveTypeChanging"
    elif has_o1 and has_o2m:
        out.verdict = "NegativeTypeChanging"
    elif has_o1:
        out.verdict = "ChangeOnly"
    else:
        out.verdict = "Silent"
    return out


def _sample_arc_sides(
    D: ExceptionalComponent, decomp: SetDecomposition, v_mid: Fraction, q_cap: int
) -> dict[int, tuple] | None:
    """Region verdicts on both sides of the component at the chosen position,
    via down-pushed samples certified by a crossing-free segment.  None when
    the down-images persistently land on scene curves (caller perturbs)."""
    arr = decomp.arrangement
    scene = arr.scene
    # reject positions on a marked point outright
    for _tag, sc in D.curves:
        g = _sub_v(sc, v_mid)
        if g.is_zero():
            raise Unsupported("DegenerateArcSample", "curve contains the sample line")
        if g.eval(F(0)) == 0:
            return None
    from .realroots import sturm_count

    q = F(1, 2)
    hit_curve = 0
    for _ in range(q_cap):
        signs: dict[int, tuple] = {}
        ok = True
        for side in (1, -1):
            for _tag, sc in D.curves:
                g = _sub_v(sc, v_mid)
                lo, hi = (F(0), q) if side > 0 else (-q, F(0))
                from .realroots import definitely_no_roots

                if definitely_no_roots(g, lo, hi):
                    continue
                n = sturm_count(g, lo, hi)
                if g.eval(hi) == 0:
                    n -= 1
                if n != 0:
                    ok = False
                    break
            if not ok:
                break
            u0 = q if side > 0 else -q
            x0, y0 = D.chart.down_point(u0, v_mid)
            if any(p.eval(x0, y0) == 0 for p in scene.factors.values()):
                ok = False
                hit_curve += 1
                break
            rid = arr.region_of_point(x0, y0)
            if rid in decomp.s_regions:
                signs[side] = ("in_S",)
            elif rid in decomp.a_of_region:
                signs[side] = ("in_A", decomp.a_of_region[rid])
            else:
                signs[side] = ("unsigned", rid)
        if ok:
            return signs
        q = q / 2
        if hit_curve >= 6:
            return None  # a curve outside the resolved set tracks the samples
    return None


def _sub_v(p: BiPoly, v0: Fraction) -> UniPoly:
    """p(u, v0) as a univariate in u."""
    return p.specialize_y(v0)


# ----------------------------------------------------------------- analysis points


@dataclass
class AnalysisPoint:
    vertex_id: int
    point: tuple[Fraction, Fraction] | None  # None when irrational
    factors: list[str]
    rational: bool
    exempt: bool  # certified normal crossing (or vacuous) without resolution
    reason: str = ""


def local_analysis_points(decomp: SetDecomposition) -> list[AnalysisPoint]:
    """Points of the Zariski boundary that require blow-up analysis (certified
    normal crossings and harmless isolated points are filtered out)."""
    return [ap for ap in analysis_table(decomp) if not ap.exempt]


def analysis_table(decomp: SetDecomposition) -> list[AnalysisPoint]:
    arr = decomp.arrangement
    scene = arr.scene
    out: list[AnalysisPoint] = []
    for v in arr.vertices:
        bfs = sorted(v.factors & decomp.zariski_boundary)
        if not bfs:
            continue
        ends: dict[str, int] = {n: 0 for n in bfs}
        for eid in arr.edges_at_vertex(v.vid):
            e = arr.edges[eid]
            if e.factor in ends:
                ends[e.factor] += 2 if _both_ends_here(e, v.vid) else 1
        total = sum(ends.values())
        pt = v.point()
        rational = pt is not None

        if total == 0:
            # isolated real point of the boundary: blowing it up yields an
            # exceptional circle with no sign change, so it never obstructs
            out.append(AnalysisPoint(v.vid, pt, bfs, rational, True, "isolated point"))
            continue
        if len(bfs) == 1 and ends[bfs[0]] == 2 and _smooth_at(scene.factors[bfs[0]], v):
            continue  # regular curve point
        if len(bfs) == 2 and all(c == 2 for c in ends.values()) and _transversal_pair(scene, bfs, v):
            out.append(AnalysisPoint(v.vid, pt, bfs, rational, True, "transversal crossing"))
            continue
        if len(bfs) == 1 and ends[bfs[0]] == 4 and _certified_node(scene.factors[bfs[0]], v):
            out.append(AnalysisPoint(v.vid, pt, bfs, rational, True, "ordinary node"))
            continue
        if not rational:
            out.append(AnalysisPoint(v.vid, None, bfs, False, False, "irrational centre"))
            continue
        out.append(AnalysisPoint(v.vid, pt, bfs, True, False, "needs resolution"))
    return out


def _both_ends_here(e, vid: int) -> bool:
    return sum(1 for end in e.ends if end and end[0] == "vertex" and end[1] == vid) == 2


def _smooth_at(p: BiPoly, v) -> bool:
    pt = v.point()
    if pt is not None:
        return p.partial_x().eval(*pt) != 0 or p.partial_y().eval(*pt) != 0
    for g in (p.partial_x(), p.partial_y()):
        try:
            if bipoly_sign_on_box(g, v.box(), cap=48) != 0:
                return True
        except Unsupported:
            continue
    return False


def _transversal_pair(scene, bfs: list[str], v) -> bool:
    f, g = scene.factors[bfs[0]], scene.factors[bfs[1]]
    if not (_smooth_at(f, v) and _smooth_at(g, v)):
        return False
    jac = f.partial_x() * g.partial_y() - f.partial_y() * g.partial_x()
    pt = v.point()
    if pt is not None:
        return jac.eval(*pt) != 0
    try:
        return bipoly_sign_on_box(jac, v.box(), cap=48) != 0
    except Unsupported:
        return False


def _certified_node(p: BiPoly, v) -> bool:
    """Hessian-determinant certificate for an ordinary double point."""
    hxx = p.partial_x().partial_x()
    hyy = p.partial_y().partial_y()
    hxy = p.partial_x().partial_y()
    det = hxx * hyy - hxy * hxy
    pt = v.point()
    if pt is not None:
        return det.eval(*pt) < 0
    try:
        return bipoly_sign_on_box(det, v.box(), cap=48) < 0
    except Unsupported:
        return False
