from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from basix.bipoly import BiPoly, are_coprime, discriminant_y, is_squarefree, resultant
from basix.errors import DegreeZero
from basix.parser import parse_polynomial
from basix.realroots import (
    RootLocator,
    compare_roots,
    count_roots_below,
    isolate_real_roots,
    roots_equal,
    simplest_in,
    sturm_count,
)
from basix.unipoly import UniPoly, poly_gcd, squarefree_part

F = Fraction


def P(*coeffs):
    return UniPoly(coeffs)


# ---------------------------------------------------------------- poly_gcd


def test_gcd_common_linear_factor():
    # gcd(x^2 - 1, (x - 1)(x + 2)) = x - 1
    a = P(-1, 0, 1)
    b = UniPoly.from_roots([1, -2])
    assert poly_gcd(a, b) == P(-1, 1)


def test_gcd_coprime():
    assert poly_gcd(P(1, 0, 1), P(0, 1)) == UniPoly.one()


def test_gcd_with_zero():
    a = P(0, -2, 0, 2)  # 2x^3 - 2x
    assert poly_gcd(a, UniPoly.zero()) == a.monic()


def test_gcd_cubic_vs_quadratic():
    # gcd(x^3 - x, x^2 - 1) = x^2 - 1, verified by division oracle
    g = poly_gcd(P(0, -1, 0, 1), P(-1, 0, 1))
    assert g == P(-1, 0, 1)
    for p in (P(0, -1, 0, 1), P(-1, 0, 1)):
        q, r = p.divmod(g)
        assert r.is_zero()
        assert q * g == p


@given(
    st.lists(st.integers(-9, 9), min_size=1, max_size=5),
    st.lists(st.integers(-9, 9), min_size=1, max_size=5),
)
@settings(max_examples=60, deadline=None)
def test_gcd_divides_both(ca, cb):
    a, b = UniPoly(ca), UniPoly(cb)
    if a.is_zero() and b.is_zero():
        return
    g = poly_gcd(a, b)
    if g.is_zero():
        assert a.is_zero() and b.is_zero()
        return
    for p in (a, b):
        if not p.is_zero():
            assert p.divmod(g)[1].is_zero()


# ---------------------------------------------------------------- squarefree


def test_squarefree_part_examples():
    assert squarefree_part(P(0, 0, 1)) == P(0, 1)  # x^2 -> x
    p = UniPoly.from_roots([1, 1, -1])
    assert squarefree_part(p) == UniPoly.from_roots([1, -1]).monic()
    q = P(0, -1, 0, 1)  # x^3 - x, already squarefree
    assert squarefree_part(q) == q.monic()


# ---------------------------------------------------------------- resultant


def X(i=1):
    return BiPoly({(i, 0): F(1)})


def Y(j=1):
    return BiPoly({(0, j): F(1)})


def test_resultant_parabolas():
    # res_y(y - x^2, y - 2x^2) = -x^2 by the 2x2 Sylvester determinant
    f = Y() - X(2)
    g = Y() - X(2).scale(2)
    r = resultant(f, g, "y")
    assert r == UniPoly([0, 0, -1])


def test_resultant_degree_zero_error():
    with pytest.raises(DegreeZero):
        resultant(Y(), X(), "y")


def test_resultant_lines():
    # res_y(y - x, y + x) = 2x
    r = resultant(Y() - X(), Y() + X(), "y")
    assert r == UniPoly([0, 2])


def test_resultant_specialization_property():
    f = parse_polynomial("y^2 - x^3 + x*y - 1")
    g = parse_polynomial("y^3 + 2*x*y - x^2 + 3")
    r = resultant(f, g, "y")
    from basix.unipoly import sylvester_resultant

    for x0 in (F(0), F(1), F(-2), F(3, 2)):
        fa, ga = f.specialize_x(x0), g.specialize_x(x0)
        # leading coefficients are constants here, so specialisation commutes
        assert r.eval(x0) == sylvester_resultant(fa, ga)


def test_resultant_common_root_projection():
    # (y - x)(y + x) meets y - 1 at (1, 1) and (-1, 1)
    r = resultant((Y() - X()) * (Y() + X()), Y() - BiPoly.const(1), "y")
    roots = isolate_real_roots(r)
    vals = sorted(l.try_rational() for l in roots)
    assert vals == [F(-1), F(1)]


# ---------------------------------------------------------------- root isolation


def test_isolate_sqrt2():
    locs = isolate_real_roots(P(-2, 0, 1))
    assert len(locs) == 2
    assert locs[0].hi <= 0 <= locs[1].lo
    locs[1].refine_below(F(1, 1000))
    lo, hi = locs[1].lo, locs[1].hi
    assert lo * lo < 2 < hi * hi


def test_isolate_no_real_roots():
    assert isolate_real_roots(P(1, 0, 1)) == []


def test_isolate_three_rational_roots():
    locs = isolate_real_roots(P(0, -1, 0, 1))
    assert [l.try_rational() for l in locs] == [F(-1), F(0), F(1)]


def test_isolate_in_range():
    locs = isolate_real_roots(P(0, -1, 0, 1), F(-1, 2), F(10))
    assert [l.try_rational() for l in locs] == [F(0), F(1)]


def test_isolation_counts_match_sturm():
    polys = [
        P(-2, 0, 1),
        P(0, -1, 0, 1),
        P(1, 0, 1),
        UniPoly.from_roots([0, 1, 2, 3]) * P(1, 0, 1),
        P(-1, 3, -3, 1),  # (x-1)^3
        P(2, -5, 1, 7, -3),
    ]
    for p in polys:
        locs = isolate_real_roots(p)
        assert len(locs) == sturm_count(p)


def test_count_roots_below():
    p = P(0, -1, 0, 1)  # roots -1, 0, 1
    assert count_roots_below(p, F(-2)) == 0
    assert count_roots_below(p, F(0)) == 1
    assert count_roots_below(p, F(1, 2)) == 2
    assert count_roots_below(p, F(5)) == 3


def test_roots_equal_and_compare():
    a = isolate_real_roots(P(-2, 0, 1))[1]  # sqrt 2
    c = isolate_real_roots(P(-2, 0, 1) * P(-3, 1))[1]  # same number, bigger poly
    assert roots_equal(a, c)
    assert compare_roots(a, c) == 0
    d = isolate_real_roots(P(-3, 0, 1))[1]  # sqrt 3
    assert not roots_equal(a, d)
    assert compare_roots(a, d) == -1
    assert compare_roots(d, a) == 1


def test_simplest_in():
    assert simplest_in(F(1, 3), F(1, 2)) == F(2, 5)
    assert simplest_in(F(-1), F(1)) == 0
    assert simplest_in(F(5, 2), F(7, 2)) == 3
    v = simplest_in(F(141421, 100000), F(141422, 100000))
    assert F(141421, 100000) < v < F(141422, 100000)


# ---------------------------------------------------------------- bivariate helpers


def test_squarefree_bipoly():
    assert is_squarefree(parse_polynomial("y^2 - x^3"))
    assert not is_squarefree(parse_polynomial("y^2"))
    assert not is_squarefree(parse_polynomial("(x - 1)^2 * y"))
    assert is_squarefree(parse_polynomial("x*y"))


def test_coprime_bipoly():
    assert not are_coprime(parse_polynomial("y^2 - x^2"), parse_polynomial("y - x"))
    assert are_coprime(parse_polynomial("y - x^2"), parse_polynomial("y"))
    assert are_coprime(parse_polynomial("x"), parse_polynomial("y"))
    assert not are_coprime(parse_polynomial("x^2 - 1"), parse_polynomial("(x - 1)*(y + 1)"))
    assert are_coprime(parse_polynomial("x^2 - 1"), parse_polynomial("(x - 1)*y - 2"))


def test_parse_print_roundtrip():
    for s in ("y^2 - x^3", "x*y - 1", "3*x^2*y - 1/2*y + 7", "x^2 + y^2 - 1"):
        p = parse_polynomial(s)
        assert parse_polynomial(p.to_text()) == p


def test_parse_implicit_products():
    assert parse_polynomial("3x^2y") == parse_polynomial("3*x^2*y")
    assert parse_polynomial("-x") == -BiPoly.x()


def test_translate_and_eval():
    p = parse_polynomial("y - x^2")
    q = p.translate(1, 1)  # p(x+1, y+1) = y + 1 - (x+1)^2
    assert q.eval(0, 0) == 0
    assert q == parse_polynomial("y - x^2 - 2*x")


def test_discriminant_circle():
    d = discriminant_y(parse_polynomial("x^2 + y^2 - 1"))
    roots = sorted(l.try_rational() for l in isolate_real_roots(d))
    assert roots == [F(-1), F(1)]
