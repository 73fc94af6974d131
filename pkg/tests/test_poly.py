from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gffmod.lorentz import boost, identity, rotation
from gffmod.parser import parse
from gffmod.poly import (
    Polynomial,
    apply_linear,
    evaluate,
    is_constant_on_shell,
    is_even,
    reduce_mod_shell,
    render,
)
from strategies import lorentz_transforms, polynomials


def P(text, d=4):
    return parse(text, d)


class TestArithmetic:
    def test_zero_coefficients_are_dropped(self):
        p = Polynomial(3, {(1, 0, 0): Fraction(0), (0, 1, 0): Fraction(2)})
        assert list(p.terms) == [(0, 1, 0)]

    def test_cancellation_gives_zero(self):
        assert (P("p1*p1", 3) - P("p1^2", 3)).is_zero()

    def test_binomial(self):
        assert P("(p0-p2)^2") == P("p0^2") - P("2*p0*p2") + P("p2^2")

    def test_power_zero_is_one(self):
        assert P("p3") ** 0 == Polynomial.constant(4, 1)

    def test_equality_ignores_names(self):
        assert P("p0").with_names(["a", "b", "c", "d"]) == P("p0")

    def test_degree_queries(self):
        p = P("p0^3*p1 + p2^2")
        assert p.total_degree() == 4
        assert p.degree_in(0) == 3
        assert p.degree_in(3) == -1 or p.degree_in(3) == 0

    def test_render_graded_lex(self):
        assert render(P("(p0-p2)^2")) == "p0^2 - 2*p0*p2 + p2^2"
        assert render(P("p1 + 3/4*p0^2")) == "3/4*p0^2 + p1"
        assert render(Polynomial.zero(4)) == "0"

    @given(polynomials(3), polynomials(3), polynomials(3))
    def test_ring_axioms(self, a, b, c):
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)

    @given(polynomials(4, max_total=3))
    def test_render_parse_round_trip(self, p):
        assert parse(render(p), 4) == p


class TestEvaluate:
    def test_examples(self):
        assert evaluate(P("p0^2"), (3, 0, 0, 0), exact=True) == 9
        assert evaluate(P("p0^2 - p1^2"), (1, 1, 0, 0), exact=True) == 0
        assert evaluate(P("2*p1*p3"), (0, 1, 0, 2), exact=True) == 4

    def test_exact_is_fraction(self):
        v = evaluate(P("p0/3"), (Fraction(1, 2), 0, 0, 0), exact=True)
        assert v == Fraction(1, 6) and isinstance(v, Fraction)

    def test_complex_point(self):
        assert evaluate(P("p0^2"), (1j, 0, 0, 0)) == pytest.approx(-1)

    def test_broadcasts_over_arrays(self):
        xs = np.linspace(-1, 1, 5)
        out = evaluate(P("p0^2 + p1", 2), (xs, np.ones(5)))
        assert np.allclose(out, xs**2 + 1)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            evaluate(P("p0"), (1, 2))


class TestEvenness:
    @pytest.mark.parametrize("text, expected", [("p0^2", True), ("p0^3", False), ("p0*p1 + 7", True)])
    def test_examples(self, text, expected):
        assert is_even(P(text)) is expected

    @given(polynomials(3, even=True), lorentz_transforms(3))
    def test_preserved_by_lorentz(self, p, L):
        assert is_even(apply_linear(p, L))


class TestApplyLinear:
    def test_identity(self):
        assert apply_linear(P("p2^2"), identity(4)) == P("p2^2")

    def test_quarter_turn(self):
        assert apply_linear(P("p2^2"), rotation(4, 1, 2, 1)) == P("p1^2")

    def test_boost(self):
        assert apply_linear(P("p2^2"), boost(4, 2, Fraction(1, 3))) == P("(5/4*p2 - 3/4*p0)^2")

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            apply_linear(P("p0", 3), identity(4))

    @given(polynomials(4, max_total=3), lorentz_transforms(4))
    def test_round_trip(self, p, L):
        assert apply_linear(apply_linear(p, L), L.inverse()) == p

    @given(lorentz_transforms(4))
    def test_minkowski_square_invariant(self, L):
        sq = P("p0^2 - p1^2 - p2^2 - p3^2")
        assert apply_linear(sq, L) == sq


class TestShellReduction:
    def test_examples(self):
        r = reduce_mod_shell(P("p0"), 1)
        assert r.r0.is_zero() and r.r1 == Polynomial.constant(4, 1)
        r = reduce_mod_shell(P("p0^2"), 1)
        assert r.r0 == P("p1^2 + p2^2 + p3^2 + 1") and r.r1.is_zero()
        r = reduce_mod_shell(P("p0^2 - p1^2 - p2^2 - p3^2"), 1)
        assert r.r0 == Polynomial.constant(4, 1) and r.r1.is_zero()

    def test_representative_is_exact_on_rational_shell_points(self):
        p = P("p0^5 - 3*p0^2*p1 + p2^4")
        rng = random.Random(3)
        for _ in range(20):
            x = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(3)]
            p0 = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
            m2 = p0 * p0 - sum(v * v for v in x)  # puts (p0, x) on the shell
            red = reduce_mod_shell(p, m2)
            assert red.r0.degree_in(0) <= 0 and red.r1.degree_in(0) <= 0
            pt = (p0, *x)
            expected = evaluate(red.r0, pt, exact=True) + p0 * evaluate(red.r1, pt, exact=True)
            assert evaluate(p, pt, exact=True) == expected

    @given(polynomials(4, max_total=4), st.lists(st.builds(Fraction, st.integers(-8, 8), st.integers(1, 4)),
                                                  min_size=3, max_size=3),
           st.sampled_from([Fraction(0), Fraction(1), Fraction(9, 4)]))
    def test_float_shell_points(self, p, x, m2):
        red = reduce_mod_shell(p, m2)
        q0 = math.sqrt(float(sum(v * v for v in x) + m2))
        pt = (q0, *[float(v) for v in x])
        lhs = evaluate(p, pt).real
        rhs = evaluate(red.r0, pt).real + q0 * evaluate(red.r1, pt).real
        assert abs(lhs - rhs) <= 1e-10 * (1 + abs(lhs)) * max(1.0, sum(abs(float(c)) for c in p.terms.values()))


class TestConstancy:
    def test_constant(self):
        res = is_constant_on_shell(P("1"), 5)
        assert res.constant and res.value == 1

    def test_time_derivative(self):
        res = is_constant_on_shell(P("p0^2"), 1)
        assert not res.constant and res.witness == P("p1^2 + p2^2 + p3^2")

    def test_transverse_massless(self):
        assert not is_constant_on_shell(parse("p2^2", 3), 0).constant

    def test_mass_shell_polynomial(self):
        res = is_constant_on_shell(P("p0^2 - p1^2 - p2^2 - p3^2"), 4)
        assert res.constant and res.value == 4
        assert res.describe() == "constant(4)"

    @given(lorentz_transforms(4))
    def test_covariant_weights_stay_constant(self, L):
        m = apply_linear(P("2*(p0^2 - p1^2 - p2^2 - p3^2)^2 + 3"), L)
        res = is_constant_on_shell(m, 2)
        assert res.constant and res.value == 11
