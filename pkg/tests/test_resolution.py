from fractions import Fraction

import pytest

from basix.arrangement import build_arrangement
from basix.decompose import decompose_set
from basix.errors import Unsupported
from basix.parser import parse_polynomial
from basix.resolution import (
    classify_exceptional,
    family_arc_for,
    is_normal_crossing,
    local_analysis_points,
    resolve_point,
)
from basix.scene import Scene

F = Fraction
P = parse_polynomial

CUBIC = (
    "factor a = x; factor f0 = y - x^2; factor f1 = y - x^2 - x^3;"
    "factor f2 = y - x^2 - 2*x^3; factor f3 = y - x^2 - 3*x^3;"
    "set S = { f0 > 0, f1 < 0 } | { f0 < 0, f1 > 0 } | { a < 0, f2 < 0, f3 > 0 };"
)


def test_cross_already_normal_crossing():
    tree = resolve_point({"a": P("x"), "b": P("y")}, (F(0), F(0)))
    assert tree.components == []


def test_cusp_three_blowups():
    tree = resolve_point({"c": P("y^2 - x^3")}, (F(0), F(0)))
    assert len(tree.components) == 3


def test_nodal_point_is_normal_crossing():
    tree = resolve_point({"n": P("y^2 - x^2*(x + 1)")}, (F(0), F(0)))
    assert tree.components == []


def test_tacnode_resolves():
    # two parabola-like branches with second-order contact
    tree = resolve_point({"t": P("(y - x^2)*(y + x^2)")}, (F(0), F(0)))
    assert len(tree.components) >= 2


def test_cubic_fixture_marked_points():
    factors = {n: P(s) for n, s in [
        ("f0", "y - x^2"),
        ("f1", "y - x^2 - x^3"),
        ("f2", "y - x^2 - 2*x^3"),
        ("f3", "y - x^2 - 3*x^3"),
    ]}
    tree = resolve_point(factors, (F(0), F(0)))
    assert len(tree.components) == 3
    last = tree.components[-1]
    vs = sorted(m.v for m in last.marked)
    assert vs == [F(0), F(1), F(2), F(3)]
    # the down map of the final chart is x = u, y = u^2 + u^3 v
    X, Y = last.chart.down_map()
    assert X == P("x")
    assert Y == P("x^2 + x^3*y")


def test_cubic_classification_and_dual_path():
    sc = Scene.from_text(CUBIC)
    d = decompose_set(build_arrangement(sc))
    factors = {n: sc.factors[n] for n in ("f0", "f1", "f2", "f3")}
    tree = resolve_point(factors, (F(0), F(0)))
    E3 = tree.components[-1]
    # sigma with minus = the band between f2 and f3 at x > 0
    target = None
    for i, comp in enumerate(d.a_components):
        rid = next(iter(comp))
        x, y = d.arrangement.regions[rid].sample
        if x > 0 and sc.factors["f3"].sign_at(x, y) < 0 < sc.factors["f2"].sign_at(x, y):
            target = i
    assert target is not None
    cls = classify_exceptional(E3, d, target)
    assert cls.verdict == "PositiveTypeChanging"
    o2 = cls.omega2_plus()
    o1 = cls.omega1()
    assert o2 is not None and (o2.vlo, o2.vhi) == (F(0), F(1))
    assert o1 is not None and (o1.vlo, o1.vhi) == (F(2), F(3))
    # the earlier components stay harmless for this distribution
    for D in tree.components[:-1]:
        assert classify_exceptional(D, d, target).verdict != "PositiveTypeChanging"


def test_basic_set_never_positive_on_exceptionals():
    # S = {y > 0, y < x^2} is basic by definition
    sc = Scene.from_text("factor l = y; factor p = y - x^2; set S = { l > 0, p < 0 };")
    d = decompose_set(build_arrangement(sc))
    tree = resolve_point({n: sc.factors[n] for n in ("l", "p")}, (F(0), F(0)))
    assert tree.components  # tangential contact needs at least one blow-up
    for D in tree.components:
        for i in range(len(d.a_components)):
            assert classify_exceptional(D, d, i).verdict != "PositiveTypeChanging"


def test_local_analysis_points_cubic():
    d = decompose_set(build_arrangement(Scene.from_text(CUBIC)))
    pts = local_analysis_points(d)
    assert len(pts) == 1
    ap = pts[0]
    assert ap.point == (F(0), F(0)) and ap.rational
    assert set(ap.factors) == {"f0", "f1", "f2", "f3"}


def test_local_analysis_cross_empty():
    d = decompose_set(build_arrangement(Scene.from_text("set S = { x > 0, y > 0 };")))
    assert local_analysis_points(d) == []


def test_local_analysis_cusp():
    d = decompose_set(build_arrangement(Scene.from_text("set S = { y^2 - x^3 > 0 };")))
    pts = local_analysis_points(d)
    assert len(pts) == 1 and pts[0].point == (F(0), F(0))


def test_down_map_consistency_random_points():
    import random

    factors = {"c": P("y^2 - x^3")}
    tree = resolve_point(factors, (F(0), F(0)))
    sc = Scene.from_text("set S = { y^2 - x^3 > 0 };")
    rng = random.Random(5)
    for D in tree.components:
        for _ in range(60):
            u = F(rng.randint(-50, 50), 64)
            v = F(rng.randint(-50, 50), 16)
            if u == 0:
                continue
            x, y = D.chart.down_point(u, v)
            X, Y = D.chart.down_map()
            assert X.eval(u, v) == x and Y.eval(u, v) == y


def test_transversal_irrational_crossing_supported():
    # the parabolas cross transversally at (+-sqrt2, 0): fully supported
    sc_text = "factor f = y - x^2 + 2; factor g = y + x^2 - 2; set S = { f > 0, g < 0 };"
    arr = build_arrangement(Scene.from_text(sc_text))
    assert len(arr.vertices) == 2
    d = decompose_set(arr)
    assert local_analysis_points(d) == []  # transversal crossings are exempt


def test_irrational_tangency_unsupported():
    # second-order contact along y = x^2 - 2 at x = +-sqrt2: never separable
    sc_text = (
        "factor f = y - x^2 + 2; factor g = y - x^4 + 3*x^2 - 2;"
        "set S = { f > 0, g < 0 };"
    )
    with pytest.raises(Unsupported):
        build_arrangement(Scene.from_text(sc_text))
