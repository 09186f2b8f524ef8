import random
from fractions import Fraction

from basix.arrangement import build_arrangement
from basix.decompose import (
    complement_flags,
    decompose_set,
    is_closed_cellwise,
    is_open_cellwise,
    s_star_boundary_dim,
)
from basix.scene import Scene
from basix.signdist import (
    classify_component,
    condition_a_check,
    make_delta,
    make_sigma,
    make_sigmas,
)

F = Fraction

HALF = "factor f = y; set S = { f > 0 };"
QUAD = "factor a = x; factor b = y; set S = { a > 0, b > 0 };"
SADDLE = "factor a = x; factor b = y; set S = { a > 0, b > 0 } | { a < 0, b < 0 };"
PARA = (
    "factor a = x; factor l = y; factor p = y - x^2;"
    "set S = { a < 0, l > 0, p != 0 } | { a > 0, l > 0, p < 0 };"
)
CUBIC = (
    "factor a = x; factor f0 = y - x^2; factor f1 = y - x^2 - x^3;"
    "factor f2 = y - x^2 - 2*x^3; factor f3 = y - x^2 - 3*x^3;"
    "set S = { f0 > 0, f1 < 0 } | { f0 < 0, f1 > 0 } | { a < 0, f2 < 0, f3 > 0 };"
)


def D(text):
    arr = build_arrangement(Scene.from_text(text))
    return decompose_set(arr)


def test_half_decomposition():
    d = D(HALF)
    assert d.zariski_boundary == {"f"}
    assert len(d.a_components) == 1
    assert d.s_meets_boundary == "empty"
    assert is_open_cellwise(d)
    assert not is_closed_cellwise(d)


def test_neq_whole_line_boundary():
    d = D("factor f = y; set S = { f != 0 };")
    assert d.zariski_boundary == {"f"}
    assert d.s_meets_boundary == "empty"
    assert len(d.a_components) == 0


def test_quad_decomposition():
    d = D(QUAD)
    assert d.zariski_boundary == {"a", "b"}
    assert len(d.a_components) == 3
    assert d.s_meets_boundary == "empty"


def test_saddle_delta():
    d = D(SADDLE)
    delta = make_delta(d)
    arr = d.arrangement
    assert len(delta.plus) == 2 and len(delta.minus) == 2
    for f in ("a", "b"):
        cc = classify_component(f, delta, arr)
        assert cc.verdict == "ChangeOnly"


def test_half_sigma():
    d = D(HALF)
    s = make_sigma(d, 0)
    assert len(s.plus) == 1 and len(s.minus) == 1


def test_cubic_components_and_silence():
    d = D(CUBIC)
    assert d.zariski_boundary == {"f0", "f1", "f2", "f3"}
    assert len(d.a_components) == 5
    arr = d.arrangement
    # the component between f2 and f3 for x > 0: find it by sample signs
    target = None
    for i, comp in enumerate(d.a_components):
        rid = next(iter(comp))
        x, y = arr.regions[rid].sample
        sc = arr.scene
        if (
            len(comp) == 1
            and sc.factors["f3"].sign_at(x, y) < 0 < sc.factors["f2"].sign_at(x, y)
            and x > 0
        ):
            target = i
    assert target is not None
    sigma = make_sigma(d, target)
    assert classify_component("f2", sigma, arr).verdict == "Silent"
    assert classify_component("f0", sigma, arr).verdict == "Silent"
    assert condition_a_check(d) is None


def test_para_condition_a_fails():
    d = D(PARA)
    fail = condition_a_check(d)
    assert fail is not None
    assert fail.factor == "p"
    cc = fail.classification
    assert cc.omega1_edges and cc.omega2_plus_edges


def test_s_star_dims():
    assert s_star_boundary_dim(D(HALF)) == "empty"
    assert s_star_boundary_dim(D(PARA)) == "one_dimensional"
    assert s_star_boundary_dim(D(CUBIC)) == "empty"
    assert s_star_boundary_dim(D(SADDLE)) == "empty"


def test_lemma_equivalence_on_fixtures():
    for text in (HALF, QUAD, SADDLE, PARA, CUBIC):
        d = D(text)
        fails = condition_a_check(d) is not None
        assert fails == (s_star_boundary_dim(d) == "one_dimensional")


def test_no_negative_type_changing_on_fixtures():
    for text in (HALF, QUAD, SADDLE, PARA, CUBIC):
        d = D(text)
        for s in make_sigmas(d):
            for f in d.zariski_boundary:
                assert classify_component(f, s, d.arrangement).verdict != "NegativeTypeChanging"


def test_complement_decomposition_quad():
    d = D(QUAD)
    rf, ef, vf = complement_flags(d)
    dc = decompose_set(d.arrangement, rf, ef, vf)
    # complement of closed Q1: interior closure contains the negative axes
    assert s_star_boundary_dim(dc) == "one_dimensional"


def test_closedness():
    d = D("factor f = y; set S = { f >= 0 };")
    assert is_closed_cellwise(d)
    assert not is_open_cellwise(d)
    d2 = D(HALF)
    assert not is_closed_cellwise(d2)
