from fractions import Fraction

import pytest

from monocone import parsing
from monocone.errors import ParseError
from monocone.monomials import mono
from monocone.sequences import SupportPattern, finseq


def test_parse_variables():
    assert parsing.parse_variables("x,y,z") == ("x", "y", "z")
    with pytest.raises(ParseError):
        parsing.parse_variables("x,x")
    with pytest.raises(ParseError):
        parsing.parse_variables("")


def test_parse_monomial():
    v = ("x", "y", "z")
    assert parsing.parse_monomial("x^2*y", v) == mono(2, 1, 0)
    assert parsing.parse_monomial("1", v) == mono(0, 0, 0)
    assert parsing.parse_monomial("z", v) == mono(0, 0, 1)
    assert parsing.parse_monomial("x*x*y", v) == mono(2, 1, 0)


def test_parse_monomial_errors_carry_positions():
    v = ("x", "y")
    with pytest.raises(ParseError) as err:
        parsing.parse_monomial("x*q", v)
    assert err.value.position == 2
    with pytest.raises(ParseError) as err:
        parsing.parse_monomial("x^", v)
    assert err.value.position == 2
    with pytest.raises(ParseError):
        parsing.parse_monomial("x^-2", v)


def test_monomial_roundtrip():
    v = ("x", "y", "z")
    for m in (mono(2, 1, 0), mono(0, 0, 0), mono(1, 0, 3)):
        assert parsing.parse_monomial(parsing.format_monomial(m, v), v) == m


def test_parse_monomial_list():
    v = ("x", "y", "z")
    out = parsing.parse_monomial_list("x*y, y*z ,z*x", v)
    assert out == [mono(1, 1, 0), mono(0, 1, 1), mono(1, 0, 1)]
    with pytest.raises(ParseError):
        parsing.parse_monomial_list("x,,y", v)


def test_parse_cone():
    c = parsing.parse_cone("y >= 0 & x > 0")
    assert (c.l1.a, c.l1.b, c.l1.strict) == (0, 1, False)
    assert (c.l2.a, c.l2.b, c.l2.strict) == (1, 0, True)
    c = parsing.parse_cone("2*x+3*y > 0 & -x >= 0")
    assert (c.l1.a, c.l1.b) == (2, 3)
    assert (c.l2.a, c.l2.b) == (-1, 0)
    c = parsing.parse_cone("x - 2*y >= 0 & y > 0")
    assert (c.l1.a, c.l1.b) == (1, -2)


def test_parse_cone_errors():
    with pytest.raises(ParseError):
        parsing.parse_cone("y >= 0")
    with pytest.raises(ParseError):
        parsing.parse_cone("y >= 1 & x > 0")
    with pytest.raises(ParseError):
        parsing.parse_cone("w >= 0 & x > 0")


def test_cone_roundtrip():
    for text in ("y >= 0 & x > 0", "2*x+3*y > 0 & -x >= 0"):
        c = parsing.parse_cone(text)
        again = parsing.parse_cone(parsing.format_cone(c))
        assert again == c


def test_parse_finseq():
    s = parsing.parse_finseq("(1,2,3|4)")
    assert s == finseq([1, 2, 3], 4)
    s = parsing.parse_finseq("(|2)")
    assert s == finseq([], 2)
    s = parsing.parse_finseq("(-1,3/2|1/3)")
    assert s.prefix == (Fraction(-1), Fraction(3, 2))
    assert s.tail == Fraction(1, 3)
    with pytest.raises(ParseError):
        parsing.parse_finseq("(1,2)")
    with pytest.raises(ParseError):
        parsing.parse_finseq("(a|1)")


def test_finseq_roundtrip():
    for s in (finseq([1, 2], 3), finseq([], 1), finseq([Fraction(-1, 2)], Fraction(7, 3))):
        assert parsing.parse_finseq(parsing.format_finseq(s)) == s


def test_parse_finseq_list():
    out = parsing.parse_finseq_list("(1|1);(2,3|4)")
    assert out == [finseq([1], 1), finseq([2, 3], 4)]


def test_parse_int_pair():
    assert parsing.parse_int_pair("(-2,1)") == (-2, 1)
    assert parsing.parse_int_pair(" ( 3 , 4 ) ") == (3, 4)
    with pytest.raises(ParseError):
        parsing.parse_int_pair("(1,2,3)")
    with pytest.raises(ParseError):
        parsing.parse_int_pair("(x,1)")


def test_parse_support():
    p = parsing.parse_support({"threshold": 0, "exceptions": [2]})
    assert p == SupportPattern(0, frozenset({2}))
    assert parsing.parse_support(p) is p
    with pytest.raises(ParseError):
        parsing.parse_support("nope")
