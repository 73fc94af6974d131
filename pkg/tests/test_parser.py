from __future__ import annotations

from fractions import Fraction

import pytest

from gffmod.parser import ParseError, parse
from gffmod.poly import Polynomial


def test_literal_monomial():
    p = parse("p0^2", 4)
    assert dict(p.terms) == {(2, 0, 0, 0): Fraction(1)}


def test_precedence():
    assert parse("-p0^2", 2) == parse("0 - p0*p0", 2)
    assert parse("2*p1^2^1 + 1", 2) == parse("1 + 2*p1*p1", 2)
    assert parse("p0**2", 2) == parse("p0^2", 2)


def test_rational_literals_and_whitespace():
    p = parse(" 3/4 * p1 ^ 2 - ( p0 ) ", 3)
    assert p.terms[(0, 2, 0)] == Fraction(3, 4)
    assert p.terms[(1, 0, 0)] == -1


def test_division_by_constant_expression():
    assert parse("p1/(1+1)", 2) == parse("1/2*p1", 2)


@pytest.mark.parametrize(
    "text, message, position",
    [
        ("p4", "unknown variable", 0),
        ("p0 + q", "unknown variable", 5),
        ("p0^-1", "exponent not a nonnegative integer", 3),
        ("p0^p1", "exponent not a nonnegative integer", 3),
        ("p0^(1/2)", "exponent not a nonnegative integer", 3),
        ("1/p0", "division by a non-constant expression", 1),
        ("p0/0", "division by zero", 2),
        ("", "empty expression", 0),
        ("(p0", "expected ')'", 3),
        ("p0 $", "unexpected character", 3),
        ("p0 p1", "unexpected token", 3),
    ],
)
def test_errors_carry_position(text, message, position):
    with pytest.raises(ParseError) as info:
        parse(text, 4)
    assert message in str(info.value)
    assert info.value.position == position


def test_result_is_polynomial():
    assert isinstance(parse("1", 2), Polynomial)
