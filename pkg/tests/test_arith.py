from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stackychow.arith import (
    LaurentPoly2,
    UniPoly,
    format_rat,
    gcd_free_basis,
    poly_gcd,
    product,
    rational_roots,
    squarefree_decomposition,
)
from stackychow.parsing import ParseError, parse_laurent, parse_rat, parse_unipoly

rats = st.fractions(min_value=-20, max_value=20, max_denominator=6)
unipolys = st.lists(rats, max_size=5).map(UniPoly)
laurents = st.dictionaries(
    st.tuples(st.integers(-3, 3), st.integers(-3, 3)), rats, max_size=5
).map(LaurentPoly2)


@pytest.mark.parametrize(
    "r, text",
    [(F(6, 4), "3/2"), (F(-2, 1), "-2"), (F(0), "0"), (F(-1, 2), "-1/2")],
)
def test_format_rat_is_canonical(r, text):
    assert format_rat(r) == text
    assert parse_rat(text) == r


@given(unipolys, unipolys, unipolys)
def test_unipoly_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == UniPoly()


@given(unipolys, unipolys.filter(lambda p: not p.is_zero()))
def test_division_identity(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@given(laurents, laurents, laurents)
def test_laurent_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


def test_laurent_parse_and_print():
    f = parse_laurent("x^2-3*x+2+y")
    assert set(f.support()) == {(2, 0), (1, 0), (0, 0), (0, 1)}
    assert f.coeff((1, 0)) == -3
    assert parse_laurent(str(f)) == f
    assert parse_laurent("x^-1*y") == LaurentPoly2({(-1, 1): 1})
    assert parse_laurent("3x") == LaurentPoly2({(1, 0): 3})


@pytest.mark.parametrize("bad", ["x^2+(", "x +* y", "z + 1", "x**y", "__import__('os')", "(x+y)^-1"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_laurent(bad)


def test_gcd_and_squarefree():
    t = UniPoly([0, 1])
    g = (t - 1) ** 3 * (t + 2) * (t * t + 1) ** 2
    assert poly_gcd(g, g.derivative()) == ((t - 1) ** 2 * (t * t + 1)).monic()
    dec = squarefree_decomposition(g)
    assert dec == [(t + 2, 1), (t * t + 1, 2), (t - 1, 3)]
    assert product([s**k for s, k in dec], UniPoly([1])) == g


def test_gcd_free_basis_example():
    t = UniPoly([0, 1])
    p1 = (t - 1) * (t - 2)
    p2 = (t - 2) ** 2 * (t - 3)
    basis = gcd_free_basis([p1, p2])
    assert basis == [(t - 3, (0, 1)), (t - 2, (1, 2)), (t - 1, (1, 0))]


def test_gcd_free_basis_rejects_non_monic():
    with pytest.raises(ValueError):
        gcd_free_basis([UniPoly([1, 2])])
    with pytest.raises(ValueError):
        gcd_free_basis([UniPoly()])


@given(st.lists(st.lists(rats, min_size=2, max_size=4).map(UniPoly).filter(lambda p: p.degree >= 1), min_size=1, max_size=4))
def test_gcd_free_basis_properties(polys):
    polys = [p.monic() for p in polys]
    basis = gcd_free_basis(polys)
    bs = [b for b, _ in basis]
    for i, b in enumerate(bs):
        assert squarefree_decomposition(b) == [(b, 1)]
        for other in bs[i + 1 :]:
            assert poly_gcd(b, other).degree == 0
    for idx, p in enumerate(polys):
        assert product([b ** m[idx] for b, m in basis], UniPoly([1])) == p


@given(st.sets(rats, max_size=5), st.integers(1, 5))
def test_rational_roots_finds_exactly_the_planted_roots(roots, c):
    g = product([UniPoly.linear_root(r) for r in roots], UniPoly([1])) * UniPoly([c, 0, 1])
    assert rational_roots(g) == sorted(roots)


def test_unipoly_strings_round_trip():
    g = UniPoly([2, -3, 1])
    assert g.to_string("t") == "t^2-3*t+2"
    assert parse_unipoly("t^2-3*t+2") == g


def test_rational_roots_with_repeated_factors():
    t = UniPoly([0, 1])
    g = (t - F(1, 3)) ** 3 * (t + 5) ** 2 * (t * t + 2) ** 2
    assert rational_roots(g) == [F(-5), F(1, 3)]
    assert rational_roots(t**2) == [F(0)]
    assert rational_roots(UniPoly([7])) == []
