from fractions import Fraction

import pytest

from basix.arrangement import build_arrangement
from basix.decompose import decompose_set
from basix.errors import Unsupported
from basix.parser import parse_polynomial
from basix.puiseux import (
    NotOnCurve,
    PuiseuxArc,
    Slot,
    arc_family_A1,
    arc_region_membership,
    arc_sign,
    branch_set,
    compare_arcs,
    expand_scene_branches,
    newton_puiseux,
    residual_order,
    simulate_branch_blowups,
)
from basix.scene import Scene
from basix.series import TSeries, ZPoly, compose_bipoly

F = Fraction
P = parse_polynomial


def arcs_of(text, center=(0, 0), K=16):
    return newton_puiseux(P(text), (F(center[0]), F(center[1])), K)


# ------------------------------------------------------------------ expansion


def test_cusp_single_branch():
    arcs = arcs_of("y^2 - x^3")
    assert len(arcs) == 1
    a = arcs[0]
    assert (a.delta, a.N, a.swapped) == (1, 2, False)
    assert a.terms == ((3, F(1)),)
    # exact residual: t^6 - t^6 = 0
    assert residual_order(P("y^2 - x^3"), a) is None


def test_parabola_branch():
    arcs = arcs_of("y - x^2")
    assert len(arcs) == 1
    assert arcs[0].N == 1
    assert arcs[0].terms == ((2, F(1)),)


def test_node_two_branches_binomial_series():
    arcs = arcs_of("y^2 - x^2*(x + 1)", K=8)
    assert len(arcs) == 2
    # y = +-(x + x^2/2 - x^3/8 + ...)
    pos = [a for a in arcs if a.terms[0][1] > 0][0]
    d = dict(pos.terms)
    assert d[1] == 1 and d[2] == F(1, 2) and d[3] == -F(1, 8)
    for a in arcs:
        assert residual_order(P("y^2 - x^2*(x + 1)"), a) is None


def test_axis_branches():
    arcs = arcs_of("x*y - x^3")  # not squarefree-coprime scene-wise but fine here
    swapped = [a for a in arcs if a.swapped]
    graphs = [a for a in arcs if not a.swapped]
    assert len(swapped) == 1  # the vertical line x = 0
    assert len(graphs) == 1 and dict(graphs[0].terms) == {2: F(1)}


def test_circle_vertical_tangent_swapped():
    arcs = newton_puiseux(P("x^2 + y^2 - 1"), (F(1), F(0)), 10)
    assert len(arcs) == 1
    a = arcs[0]
    # parametrized by y: y = t, x = 1 - t^2/2 - t^4/8 - ...
    assert a.swapped and a.N == 1 and a.delta == 1
    d = dict(a.terms)
    assert d[2] == -F(1, 2) and d[4] == -F(1, 8)


def test_not_on_curve():
    with pytest.raises(NotOnCurve):
        newton_puiseux(P("y - x^2"), (F(1), F(5)), 8)


def test_irrational_characteristic_root_unsupported():
    with pytest.raises(Unsupported):
        newton_puiseux(P("y^2 - 2*x^2 + x^3"), (F(0), F(0)), 8)


def test_quartic_tacnode_separation():
    sets = expand_scene_branches(
        {"f": P("y - x^2"), "g": P("y - x^2 - x^5")}, (F(0), F(0))
    )
    a, b = sets["f"][0], sets["g"][0]
    assert compare_arcs(a, b, 1) == "Below"  # x^2 < x^2 + x^5 for x > 0
    assert compare_arcs(a, b, -1) == "Above"


# ------------------------------------------------------------------ comparison


def mkarc(terms, N=1, delta=1, trunc=None, center=(0, 0), slot=None):
    return PuiseuxArc(
        (F(center[0]), F(center[1])),
        delta,
        N,
        tuple((n, F(c)) for n, c in terms),
        trunc,
        slot=slot,
    )


def test_compare_simple():
    a = mkarc([(2, 1)])
    b = mkarc([(2, 2)])
    assert compare_arcs(a, b, 1) == "Below"
    assert compare_arcs(b, a, 1) == "Above"


def test_compare_odd_flip():
    a = mkarc([(3, 1)])
    b = mkarc([(3, 2)])
    assert compare_arcs(a, b, -1) == "Above"


def test_compare_undistinguished():
    a = mkarc([(2, 1)], trunc=4)
    assert compare_arcs(a, a, 1) == "Undistinguished"


# ------------------------------------------------------------------ signs


def test_arc_sign_basic():
    cusp = mkarc([(3, 1)], N=2)  # x = t^2, y = t^3
    assert arc_sign(P("y"), cusp, 1) == 1
    assert arc_sign(P("y"), cusp, -1) == -1
    assert arc_sign(P("x^2 + y^2"), cusp, 1) == 1
    assert arc_sign(P("x^2 + y^2"), cusp, -1) == 1


def test_arc_sign_slot():
    arc = mkarc([(2, 1)], slot=Slot(3, 1, F(1, 2), "z+a"))  # y = t^2 + (z + 1/2) t^3
    g = P("y - x^2")
    assert arc_sign(g, arc, 1) == 1
    assert arc_sign(g, arc, -1) == -1
    h = P("y - x^2 - x^3")  # coefficient (z - 1/2): negative for small z
    assert arc_sign(h, arc, 1) == -1
    assert arc_sign(h, arc, -1) == 1


def test_arc_sign_zero_slot_coefficient_uses_z():
    arc = mkarc([(2, 1)], slot=Slot(3, 1, F(0), "z+a"))  # tail z * t^3
    g = P("y - x^2")
    assert arc_sign(g, arc, 1) == 1  # sign of z for small z > 0
    assert arc_sign(g, arc, -1) == -1


def test_arc_sign_reciprocal_slot():
    arc = mkarc([], N=1, slot=Slot(1, 1, F(0), "1/z"))  # y = (1/z) t
    g = P("y - 1000000*x")
    # slope 1/z exceeds any rational for small z, so y - C x > 0 for t > 0
    assert arc_sign(g, arc, 1) == 1


def test_arc_sign_vanishing_needs_division():
    f = P("y^2 - x^3")
    arcs = newton_puiseux(f, (F(0), F(0)), 12, "c")
    a = arcs[0]
    g = f * P("x + y + 1")
    s = arc_sign(g, a, 1, on_poly=f)
    assert s == 0  # g vanishes identically on the branch


# ------------------------------------------------------------------ blow-up families


def test_simulate_blowups_parabola():
    arcs = arcs_of("y - x^2", K=12)
    word = simulate_branch_blowups(arcs[0], 3)
    assert [k for k, _c in word] == ["x", "x", "x"]
    assert [c for _k, c in word] == [F(0), F(1), F(0)]


def test_family_level_3_cubic():
    arcs = arcs_of("y - x^2", K=12)
    fam = arc_family_A1(arcs[0], 3)
    assert (fam.N, fam.m, fam.delta, fam.swapped) == (1, 3, 1, False)
    assert fam.kept == ((2, F(1)),)
    arc = fam.make(1, F(1, 2))
    assert arc.slot is not None and arc.slot.m == 3


def test_family_level_1_trivial():
    arcs = arcs_of("y - x^2", K=12)
    fam = arc_family_A1(arcs[0], 1)
    assert (fam.N, fam.m, fam.kept) == (1, 1, ())


def test_family_level_1_cusp():
    arcs = arcs_of("y^2 - x^3", K=12)
    fam = arc_family_A1(arcs[0], 1)
    assert (fam.N, fam.m, fam.kept) == (1, 1, ())


def test_family_level_2_cusp():
    arcs = arcs_of("y^2 - x^3", K=12)
    fam = arc_family_A1(arcs[0], 2)
    assert (fam.N, fam.m) == (1, 2)
    assert fam.kept == ()


def test_family_instances_cross_at_distinct_points():
    arcs = arcs_of("y - x^2", K=12)
    fam = arc_family_A1(arcs[0], 3)
    a1 = fam.make_at(1, F(1, 2))
    a2 = fam.make_at(1, F(5, 2))
    w1 = simulate_branch_blowups(a1.with_slot(3, 1, a1.slot.a, a1.slot.form), 3) if False else None
    # lift concrete instances (z = 0 limit representative) through 3 levels
    c1 = PuiseuxArc(a1.center, a1.delta, a1.N, a1.terms + ((3, F(1, 2)),), None)
    c2 = PuiseuxArc(a2.center, a2.delta, a2.N, a2.terms + ((3, F(5, 2)),), None)
    w1 = simulate_branch_blowups(c1, 3)
    w2 = simulate_branch_blowups(c2, 3)
    assert w1[-1][1] == F(1, 2) and w2[-1][1] == F(5, 2)


# ------------------------------------------------------------------ membership

CUBIC = (
    "factor a = x; factor f0 = y - x^2; factor f1 = y - x^2 - x^3;"
    "factor f2 = y - x^2 - 2*x^3; factor f3 = y - x^2 - 3*x^3;"
    "set S = { f0 > 0, f1 < 0 } | { f0 < 0, f1 > 0 } | { a < 0, f2 < 0, f3 > 0 };"
)


def test_arc_region_membership_cubic():
    d = decompose_set(build_arrangement(Scene.from_text(CUBIC)))
    arc_half = mkarc([(2, 1), (3, F(1, 2))])  # a = 1/2, z dropped
    assert arc_region_membership(arc_half, 1, d) == ("in_S",)
    assert arc_region_membership(arc_half, -1, d) == ("in_S",)
    arc_5_2 = mkarc([(2, 1), (3, F(5, 2))])
    got = arc_region_membership(arc_5_2, 1, d)
    assert got[0] == "in_A"
    arc_slot = mkarc([(2, 1)], slot=Slot(3, 1, F(1, 2), "z+a"))
    assert arc_region_membership(arc_slot, 1, d) == ("in_S",)
    assert arc_region_membership(arc_slot, -1, d) == ("in_S",)
    arc_slot2 = mkarc([(2, 1)], slot=Slot(3, 1, F(5, 2), "z+a"))
    assert arc_region_membership(arc_slot2, 1, d)[0] == "in_A"
    assert arc_region_membership(arc_slot2, -1, d) == ("in_S",)


def test_arc_on_curve_detected():
    d = decompose_set(build_arrangement(Scene.from_text(CUBIC)))
    on_f0 = mkarc([(2, 1)])
    got = arc_region_membership(on_f0, 1, d)
    assert got[0] == "on_curve" and got[1] == "f0"
