"""Hypothesis strategies shared by the property tests."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from gffmod.lorentz import boost, identity, rotation
from gffmod.poly import Polynomial

small_fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
nonzero_fractions = small_fractions.filter(lambda x: x != 0)


def _counts(d: int, picks) -> tuple:
    return tuple(picks.count(i) for i in range(d))


def exponents(d: int, max_total: int = 4, even: bool = False):
    """Exponent vectors with total degree <= max_total, built from a list of variable picks."""
    picks = st.lists(st.integers(0, d - 1), max_size=max_total)
    if even:
        picks = picks.map(lambda p: p[: len(p) - len(p) % 2])
    return picks.map(lambda p: _counts(d, p))


def polynomials(d: int, max_terms: int = 5, max_total: int = 4, even: bool = False):
    exps = exponents(d, max_total, even)
    return st.dictionaries(exps, nonzero_fractions, max_size=max_terms).map(lambda t: Polynomial(d, t))


_ROT = [Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 3), Fraction(2, 5)]
_BOOST = [Fraction(1, 3), Fraction(-1, 2), Fraction(1, 5), Fraction(-2, 7)]


@st.composite
def lorentz_transforms(draw, d: int, max_factors: int = 3):
    L = identity(d)
    for _ in range(draw(st.integers(0, max_factors))):
        if d > 2 and draw(st.booleans()):
            i = draw(st.integers(1, d - 2))
            j = draw(st.integers(i + 1, d - 1))
            L = rotation(d, i, j, draw(st.sampled_from(_ROT))) @ L
        else:
            L = boost(d, draw(st.integers(1, d - 1)), draw(st.sampled_from(_BOOST))) @ L
    return L
