from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gffmod.parser import parse
from gffmod.roots import (
    PairingError,
    RootFindingError,
    check_mirror,
    classify,
    find_roots,
    format_complex,
    root_profile,
    squarefree_decomposition,
    sturm_real_count,
)
from gffmod.shell import to_shell_form
from oracles import poly_mul, random_product


class TestSturm:
    def test_examples(self):
        # x^2 + 1, (x - 1)^2 (x + 1)^2, (x^2 + 1)^2
        assert sturm_real_count([1, 0, 1]) == (0, 2)
        assert sturm_real_count(poly_mul([1, -2, 1], [1, 2, 1])) == (2, 2)
        assert sturm_real_count(poly_mul([1, 0, 1], [1, 0, 1])) == (0, 2)

    def test_constant_and_zero(self):
        assert sturm_real_count([3]) == (0, 0)
        with pytest.raises(ValueError):
            sturm_real_count([0, 0])

    @given(st.lists(st.integers(-5, 5), min_size=1, max_size=4, unique=True), st.integers(0, 3))
    def test_counts_distinct_real_roots(self, reals, pairs):
        p = [Fraction(1)]
        for r in reals:
            p = poly_mul(p, [Fraction(-r), Fraction(1)])
            p = poly_mul(p, [Fraction(-r), Fraction(1)])
        for k in range(pairs):
            p = poly_mul(p, [Fraction(k * k + 1), Fraction(0), Fraction(1)])
        assert sturm_real_count(p) == (len(reals), len(reals) + 2 * pairs)


def test_squarefree_decomposition():
    p = poly_mul(poly_mul([Fraction(-1), Fraction(1)], [Fraction(-1), Fraction(1)]), [Fraction(2), Fraction(0), Fraction(1)])
    parts = squarefree_decomposition([3 * c for c in p])
    assert parts == [([Fraction(2), Fraction(0), Fraction(1)], 1), ([Fraction(-1), Fraction(1)], 2)]


class TestFindRoots:
    def test_double_roots_are_exact(self):
        roots = find_roots([Fraction(1, 4), 0, Fraction(1, 2), 0, Fraction(1, 4)])
        assert roots == [-1j, -1j, 1j, 1j]

    def test_zero_roots(self):
        assert find_roots([0, 0, Fraction(1)]) == [0j, 0j]

    def test_float_path(self):
        roots = find_roots([2.0, 0.0, 1.0])
        assert sorted(z.imag for z in roots) == pytest.approx([-2**0.5, 2**0.5])

    def test_degenerate_leading(self):
        with pytest.raises(RootFindingError):
            find_roots([1, 2, 0])


class TestClassify:
    def test_profile_of_time_derivative(self):
        sf = to_shell_form(parse("p0^2", 4), 1)
        prof = root_profile(sf, (0, 1))
        assert prof.classification == "has_complex"
        assert prof.witness == pytest.approx(1j * 2**0.5)
        assert prof.sturm == (0, 2) and prof.sturm_all_real is False
        assert [k for _, k in prof.roots] == [2, 2]

    def test_all_real_profile(self):
        sf = to_shell_form(parse("(-p1-p2)^2", 3), 0)
        prof = root_profile(sf, ("1/2",))
        assert prof.all_real and prof.sturm_all_real and prof.certified

    def test_odd_real_multiplicity_rejected(self):
        with pytest.raises(PairingError):
            classify([1.0, 2.0, 2.0])

    def test_unpaired_complex_rejected(self):
        with pytest.raises(PairingError):
            classify([1j, 1j, -1j])

    def test_mirror_check(self):
        sf = to_shell_form(parse("(p0-2*p2)^2", 4), 1)
        check_mirror(root_profile(sf, ("1/2", 1)), root_profile(sf, ("-1/2", -1)))
        with pytest.raises(PairingError):
            check_mirror(root_profile(sf, ("1/2", 1)), root_profile(sf, ("1/2", 1)))


def test_oracle_random_products():
    rng = random.Random(11)
    for _ in range(60):
        case = random_product(rng)
        prof = classify(find_roots(case.coeffs))
        got = {complex(round(z.real, 8), round(z.imag, 8)): k for z, k in prof.roots}
        want = {complex(round(z.real, 8), round(z.imag, 8)): k for z, k in case.roots.items()}
        assert got == want
        assert prof.all_real == case.all_real
        assert sturm_real_count(case.coeffs) == (case.distinct_real, case.squarefree_degree)


def test_format_complex():
    assert format_complex(complex(0, 2**0.5)) == "1.41421i"
    assert format_complex(complex(1, -0.75)) == "1-0.75i"
    assert format_complex(complex(-2, 0)) == "-2"
    assert format_complex(np.complex128(0.5 + 1j)) == "0.5+1i"
