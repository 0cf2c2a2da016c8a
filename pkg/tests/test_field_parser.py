from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from stiffres.field import Field
from stiffres.parser import ParseError
from stiffres.poly import PolyRing

Q = Field(0)
F101 = Field(101)


@pytest.mark.parametrize("name,p", [("Q", 0), ("QQ", 0), ("GF(101)", 101), ("F101", 101),
                                    ("ZZ/7", 7), (5, 5)])
def test_field_names(name, p):
    assert Field.from_name(name).p == p


@pytest.mark.parametrize("bad", ["GF(100)", "GF(1)", "R", "GF(2147483659)"])
def test_bad_fields(bad):
    with pytest.raises(ValueError):
        Field.from_name(bad)


@given(st.integers(1, 100))
def test_fp_inverse(a):
    assert F101.mul(a, F101.inv(a)) == 1


@given(st.fractions().filter(lambda f: f != 0))
def test_q_inverse(f):
    a = Q.coerce(f)
    assert Q.mul(a, Q.inv(a)) == 1
    assert Q.inv(a) == mpq(f.denominator, f.numerator)


def test_coerce_fraction_into_fp():
    assert F101.coerce(Fraction(1, 2)) == 51
    with pytest.raises(ZeroDivisionError):
        F101.coerce(Fraction(1, 101))


def test_symmetric_printing():
    assert F101.to_str(100) == "-1"
    assert F101.to_str(50) == "50"


S = PolyRing(Q, "xyz")


@pytest.mark.parametrize("text,expected", [
    ("x*y - y*x", "0"),
    ("(x+y)^2", "x^2 + 2*x*y + y^2"),
    ("-x^2 + 1/2*y", "-x^2 + 1/2*y"),
    ("2*(x - 1)", "2*x - 2"),
    ("x^0", "1"),
    ("--x", "x"),
])
def test_parse_examples(text, expected):
    assert str(S(text)) == expected


def test_power_binds_tighter_than_minus():
    assert S("-x^2") == -(S("x") ** 2)


def test_double_star_reports_second_star():
    with pytest.raises(ParseError) as info:
        S("x**y")
    assert info.value.line == 1
    assert info.value.column == 3


@pytest.mark.parametrize("bad", ["x +", "(x", "x^y", "2 x", "w", "x^-1", "1/0", ""])
def test_parse_errors(bad):
    with pytest.raises((ParseError, ZeroDivisionError)):
        S(bad)


def test_error_position_on_second_line():
    with pytest.raises(ParseError) as info:
        S("x +\n  y $")
    assert (info.value.line, info.value.column) == (2, 5)


coeffs = st.integers(-5, 5)
exps = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(exps, coeffs, max_size=6).map(
    lambda d: S.zero() + sum((S.monomial(e, c) for e, c in d.items()), S.zero()))


@given(polys)
def test_print_parse_round_trip(f):
    assert S(str(f)) == f


@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f + g == g + f
    assert f - f == S.zero()


@given(polys, polys.filter(lambda g: not g.is_zero()))
def test_divexact(f, g):
    assert (f * g).divexact(g) == f
