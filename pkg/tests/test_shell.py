from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gffmod.parser import parse
from gffmod.poly import evaluate
from gffmod.shell import (
    ShellError,
    find_negative,
    instantiate,
    phat_grid,
    phat_samples,
    shell_point,
    to_shell_form,
)
from strategies import polynomials

rationals = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 4))
positive = st.builds(Fraction, st.integers(1, 16), st.integers(1, 4))


def test_time_derivative_shell_form():
    sf = to_shell_form(parse("p0^2", 4), 1)
    assert sf.n == 1
    assert sf.Q == parse("1/4*(p0^2 + p1^2 + p2^2 + 1)^2", 3)
    assert sf.degree == 4 and sf.pplus_exponents() == [0, 2, 4]


def test_spacelike_example_shell_form():
    # (a.p)^2 with a = (0,1,1), massless, d = 3
    sf = to_shell_form(parse("(-p1-p2)^2", 3), 0)
    assert sf.n == 1
    assert sf.Q == parse("(-1/2*p0^2 - p1*p0 + 1/2*p1^2)^2", 2)


def test_free_field_is_constant():
    sf = to_shell_form(parse("1", 4), 1)
    assert sf.n == 0 and sf.degree == 0 and sf.is_pplus_monomial()


def test_transverse_weight_is_monomial():
    sf = to_shell_form(parse("p2^2", 4), 1)
    assert sf.is_pplus_monomial() and sf.coefficient(0) == parse("p0^2", 2)


@pytest.mark.parametrize("text, m2, message", [("p0^3", 1, "not even"), ("p0^2", -1, "nonnegative"),
                                                ("p0^2 - p1^2 - p2^2", 0, "vanishes")])
def test_rejections(text, m2, message):
    with pytest.raises(ShellError, match=message):
        to_shell_form(parse(text, 3), m2)


@given(polynomials(4, max_total=4, even=True), positive, st.lists(rationals, min_size=2, max_size=2),
       st.sampled_from([Fraction(0), Fraction(1), Fraction(1, 4)]))
def test_laurent_identity_exact(M, pplus, phat, m2):
    try:
        sf = to_shell_form(M, m2)
    except ShellError:
        return
    point = shell_point(pplus, phat, m2)
    lhs = evaluate(M, point, exact=True)
    rhs = evaluate(sf.Q, (pplus, *phat), exact=True) / pplus ** (2 * sf.n)
    assert lhs == rhs


@given(positive, st.lists(rationals, min_size=2, max_size=2), st.sampled_from([Fraction(0), Fraction(2)]))
def test_shell_point_lies_on_shell(pplus, phat, m2):
    p = shell_point(pplus, phat, m2)
    assert p[0] ** 2 - sum(x * x for x in p[1:]) == m2
    assert p[0] + p[1] == pplus


def test_instantiate_exact_and_degenerate():
    sf = to_shell_form(parse("p2^2", 4), 1)
    inst = instantiate(sf, ("1/2", 0))
    assert inst.exact and inst.coeffs == (Fraction(1, 4),) and not inst.degenerate
    assert instantiate(sf, (0, 1)).degenerate
    assert not instantiate(sf, (0.5, 0.0)).exact
    with pytest.raises(ShellError):
        instantiate(sf, (0,))


def test_probe_order():
    grid = phat_grid(4)
    assert len(grid) == 49
    assert grid[0] == (0, 1) and grid[-1] == (0, 0)
    assert phat_samples(2) == [()]


def test_samples_are_seeded():
    assert phat_samples(3, seed=5) == phat_samples(3, seed=5)
    assert phat_samples(3, seed=5) != phat_samples(3, seed=6)
    assert len(phat_samples(4)) == 49 + 32


def test_find_negative_witness():
    sf = to_shell_form(parse("-p2^2", 4), 1)
    pp, phat, value = find_negative(sf)
    assert phat == (1, 0) and value < 0
    assert find_negative(to_shell_form(parse("p0^2", 4), 1)) is None
