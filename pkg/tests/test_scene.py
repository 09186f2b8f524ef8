import random
from fractions import Fraction

import pytest

from basix.bipoly import BiPoly
from basix.errors import NotSquarefree, ParseError, SharedComponent
from basix.parser import parse_polynomial
from basix.scene import Scene, invert_poly, invert_scene, validate_scene

F = Fraction


def S(text):
    return Scene.from_text(text)


def test_parse_half():
    sc = S("factor f = y; set S = { f > 0 };")
    assert sc.order == ["f"]
    assert sc.member(0, 1)
    assert not sc.member(0, -1)
    assert not sc.member(1, 0)


def test_parse_quad_auto_factors():
    sc = S("set S = { y > 0, x > 0 };")
    assert len(sc.order) == 2
    assert sc.member(1, 1)
    assert not sc.member(-1, 1)


def test_parse_error_dangling():
    with pytest.raises(ParseError):
        S("set S = { y > };")


def test_sign_normalisation_merges_negated_factors():
    sc = S("set S = { -x > 0, y > 0 } | { x > 0, y > 0 };")
    # -x and x must normalise to one declared factor
    assert len(sc.order) == 2
    assert sc.member(-1, 1) and sc.member(1, 1)
    assert not sc.member(1, -1)


def test_validate_ok():
    rep = validate_scene(S("factor a = y; factor b = y - x^2; set S = { a > 0, b < 0 };"))
    assert rep.ok and not rep.warnings


def test_validate_not_squarefree():
    with pytest.raises(NotSquarefree):
        validate_scene(S("factor a = y^2; set S = { a > 0 };"))


def test_validate_shared_component():
    with pytest.raises(SharedComponent):
        validate_scene(S("factor a = y^2 - x^2; factor b = y - x; set S = { a > 0, b > 0 };"))


def test_validate_reducible_warning():
    rep = validate_scene(S("factor a = x*y; set S = { a > 0 };"))
    assert rep.warnings


# ----------------------------------------------------------- chart inversion


def test_invert_line():
    assert invert_poly(parse_polynomial("y")) == parse_polynomial("y")


def test_invert_parabola():
    got = invert_poly(parse_polynomial("y - x^2"))
    assert got == parse_polynomial("y*(x^2 + y^2) - x^2")


def test_invert_circle_strips_q():
    got = invert_poly(parse_polynomial("x^2 + y^2 - 1"))
    assert got == parse_polynomial("1 - x^2 - y^2")


def test_invert_involution_up_to_positive_constant():
    rng = random.Random(7)
    for _ in range(12):
        terms = {}
        for _k in range(rng.randint(2, 5)):
            terms[(rng.randint(0, 2), rng.randint(0, 2))] = F(rng.randint(-4, 4))
        p = BiPoly(terms)
        if p.is_zero() or p.is_const():
            continue
        q = invert_poly(invert_poly(p))
        # q == c * p with c > 0
        for key in p.t:
            if key in q.t:
                c = q.t[key] / p.t[key]
                break
        assert c > 0
        assert q == p.scale(c)


def test_invert_scene_membership_transport():
    sc = S("set S = { y > 0, y - x^2 != 0 };")
    inv = invert_scene(sc)
    rng = random.Random(3)
    for _ in range(60):
        x = F(rng.randint(-8, 8), rng.randint(1, 5))
        y = F(rng.randint(-8, 8), rng.randint(1, 5))
        if x == 0 and y == 0:
            continue
        q = x * x + y * y
        xi, yi = x / q, y / q
        assert sc.member(x, y) == inv.member(xi, yi)


def test_complement_formula():
    sc = S("set S = { y > 0, x > 0 };")
    comp = sc.complement()
    for pt in [(1, 1), (-1, 1), (1, -1), (-1, -1), (0, 1), (1, 0), (0, 0)]:
        assert comp.member(*pt) == (not sc.member(*pt))


def test_minus_factor_zeros():
    sc = S("factor f = y; set S = { f >= 0 };")
    red = sc.minus_factor_zeros(["f"])
    assert red.member(0, 1)
    assert not red.member(0, 0)
