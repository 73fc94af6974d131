"""Independent constructions with known answers, shared by unit and acceptance tests."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple


def poly_mul(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


@dataclass(frozen=True)
class RootOracle:
    """Ascending coefficients of ``lead * prod (x - r)^2 * prod ((x - a)^2 + b^2)^k``."""

    coeffs: Tuple[Fraction, ...]
    roots: Dict[complex, int]  # exact root -> multiplicity
    all_real: bool

    @property
    def distinct_real(self) -> int:
        return sum(1 for z in self.roots if z.imag == 0)

    @property
    def squarefree_degree(self) -> int:
        return len(self.roots)


def _rational(rng: random.Random, lo: int = -6, hi: int = 6) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.choice([1, 2, 3, 4]))


def random_product(rng: random.Random, max_degree: int = 8) -> RootOracle:
    coeffs = [Fraction(rng.randint(1, 5), rng.choice([1, 2, 3]))]
    roots: Counter = Counter()
    degree = 0
    while degree == 0 or (degree + 2 <= max_degree and rng.random() < 0.6):
        if rng.random() < 0.5:
            r = _rational(rng)
            coeffs = poly_mul(coeffs, [r * r, -2 * r, Fraction(1)])
            roots[complex(r)] += 2
        else:
            a = _rational(rng)
            b = Fraction(rng.randint(1, 6), rng.choice([1, 2, 3]))
            coeffs = poly_mul(coeffs, [a * a + b * b, -2 * a, Fraction(1)])
            roots[complex(a, b)] += 1
            roots[complex(a, -b)] += 1
        degree += 2
    return RootOracle(tuple(coeffs), dict(roots), all(z.imag == 0 for z in roots))
