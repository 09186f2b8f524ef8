import random
from fractions import Fraction

import pytest

from basix.checker import (
    CheckRequest,
    check_basic_closed,
    check_basic_open,
    check_generically_basic,
    check_principal_closed,
    check_principal_open,
    run_check,
)
from basix.fans import fan_count_in_S, verify_fan
from basix.fixtures import fixture_scene
from basix.scene import Scene

F = Fraction


def S(text):
    return Scene.from_text(text)


def test_half_yes_and_principal():
    assert check_basic_open(fixture_scene("half")).answer == "Yes"
    assert check_principal_open(fixture_scene("half")).answer == "Yes"


def test_quad_basic_yes_principal_no():
    v = check_basic_open(fixture_scene("quad"))
    assert v.answer == "Yes"
    p = check_principal_open(fixture_scene("quad"))
    assert p.answer == "No"
    assert p.witness is not None and p.witness_count == 1
    rep = verify_fan(p.witness, fixture_scene("quad"))
    assert rep.product_law_ok and rep.distinct


def test_saddle_principal_yes():
    assert check_principal_open(fixture_scene("saddle")).answer == "Yes"


def test_para_no_condition_a():
    v = check_basic_open(fixture_scene("para"))
    assert (v.answer, v.reason) == ("No", "condition-a")
    assert v.witness is not None and v.witness_count == 3
    assert v.witness.kind == "curve_centered"


def test_cubic_no_condition_b():
    v = check_basic_open(fixture_scene("cubic"))
    assert (v.answer, v.reason) == ("No", "condition-b")
    assert v.witness is not None and v.witness_count == 3
    assert v.witness.kind == "point_centered"
    # condition (a) recorded as passing
    table = v.diagnostics["condition_a_table"]
    assert table and all(verdict != "PositiveTypeChanging" for _f, _i, verdict in table)


def test_basic_closed_examples():
    assert check_basic_closed(S("set S = { y >= 0 };")).answer == "Yes"
    v = check_basic_closed(S("factor f = y; set S = { f > 0 };"))
    assert (v.answer, v.reason) == ("No", "NotClosed")
    # closure of the para fixture: relax strict atoms
    closed_para = S(
        "factor a = x; factor l = y; factor p = y - x^2;"
        "set S = { a <= 0, l >= 0 } | { a >= 0, l >= 0, p <= 0 };"
    )
    v = check_basic_closed(closed_para)
    assert v.answer == "No"
    assert v.witness is not None and v.witness_count == 3


def test_basic_closed_with_line_component():
    v = check_basic_closed(S("factor f = y; factor g = x; set S = { f >= 0 } | { g == 0 };"))
    assert v.answer == "Yes"


def test_generically_basic_examples():
    assert check_generically_basic(fixture_scene("half")).answer == "Yes"
    assert check_generically_basic(S("factor f = y; factor c = x^2 + y^2; set S = { f > 0, c != 0 };")).answer == "Yes"
    assert check_generically_basic(fixture_scene("para")).answer == "No"


def test_acnode_in_s_makes_plain_disk_basic():
    # the isolated real point of c belongs to S, so S is just the open disk
    sc = S(
        "factor c = y^2 - x^2*(x - 1);"
        "set S = { x^2 + y^2 - 1/4 < 0, c != 0 } | { c == 0, 2*x - 1 < 0, x^2 + y^2 - 1/4 < 0 };"
    )
    assert check_basic_open(sc).answer == "Yes"


def test_generically_basic_tolerates_acnode_contact():
    # S = the loop interior of c plus a small disk around c's isolated real
    # point: S meets the Zariski boundary exactly at that point
    sc = S(
        "factor c = y^2 - x^2*(x - 1);"
        "set S = { c < 0 } | { 16*x^2 + 16*y^2 - 1 < 0 };"
    )
    bo = check_basic_open(sc)
    assert (bo.answer, bo.reason) == ("No", "SetMeetsBoundary")
    gb = check_generically_basic(sc)
    assert gb.answer == "Yes"
    assert gb.diagnostics.get("removed_points") == [["0", "0"]]


def test_principal_closed_examples():
    assert check_principal_closed(S("set S = { y >= 0 };")).answer == "Yes"
    closed_quad = S("factor a = x; factor b = y; set S = { a >= 0, b >= 0 };")
    v = check_principal_closed(closed_quad)
    assert v.answer == "No"
    assert v.witness is not None
    assert v.witness_count == 1


def test_neq_scene_basic():
    v = check_basic_open(S("factor f = y; set S = { f != 0 };"))
    assert v.answer == "Yes"


def test_whole_plane_principal():
    # with a declared factor but a formula that accepts everything off it too
    v = check_principal_open(S("factor f = y; set S = { f > 0 } | { f < 0 } | { f == 0 };"))
    assert v.answer == "Yes"


def test_run_check_dispatch():
    req = CheckRequest(fixture_scene("half"), "basic_open")
    assert run_check(req).answer == "Yes"
    req = CheckRequest(fixture_scene("cubic"), "basic_open", jobs=2)
    assert run_check(req).answer == "No"


def test_monotone_consistency_on_fixtures():
    for name in ("half", "quad", "saddle", "para", "cubic"):
        sc = fixture_scene(name)
        p = check_principal_open(sc, want_witness=False)
        if p.answer == "Yes":
            assert check_basic_open(sc, want_witness=False).answer == "Yes"


def test_chart_swap_invariance_bounded():
    # bounded-curve scenes: verdicts invariant under pre-applying the inversion
    from basix.scene import invert_scene

    texts = [
        "set S = { x^2 + y^2 - 1 < 0 };",
        "set S = { x^2 + y^2 - 1 > 0 };",
        "factor c = x^2 + y^2 - 1; factor d = (x - 4)^2 + y^2 - 1; set S = { c < 0 } | { d < 0 };",
    ]
    for t in texts:
        sc = S(t)
        inv = invert_scene(sc)
        inv2 = Scene(inv.factors, inv.order, inv.formula, chart="affine")
        for fn in (check_basic_open, check_principal_open):
            a = fn(sc, want_witness=False).answer
            b = fn(inv2, want_witness=False).answer
            assert a == b, (t, fn.__name__, a, b)
