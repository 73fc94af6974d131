"""Mass-shell reduction in light-cone coordinates.

With ``p+ = p0 + p1``, ``p- = p0 - p1`` and ``phat = (p2, ..., p{d-1})`` the
forward shell is parametrized by ``p+ > 0`` and ``phat`` through
``p- = (phat^2 + m^2) / p+``.  Restricted to the shell an even polynomial M
becomes a Laurent polynomial in ``p+``, written as ``p+^(-2n) Q(p+, phat)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Sequence, Tuple

import numpy as np

from gffmod.poly import Polynomial, _as_fraction, evaluate, is_even

__all__ = [
    "ShellError",
    "ShellForm",
    "UnivariateInstance",
    "to_shell_form",
    "instantiate",
    "shell_point",
    "phat_samples",
    "phat_grid",
    "find_negative",
]


class ShellError(ValueError):
    pass


def shell_names(d: int) -> Tuple[str, ...]:
    return ("p+",) + tuple(f"p{i}" for i in range(2, d))


@dataclass(frozen=True)
class ShellForm:
    """``M(p+, (phat^2+m^2)/p+, phat) == p+^(-2n) * Q(p+, phat)``.

    ``Q`` has ``d - 1`` variables: ``p+`` followed by ``p2 .. p{d-1}``.
    """

    n: int
    Q: Polynomial
    m2: Fraction
    d: int

    @property
    def degree(self) -> int:
        """Degree of Q in ``p+`` (-1 if Q vanishes)."""
        return self.Q.degree_in(0)

    def pplus_exponents(self) -> List[int]:
        return sorted({e[0] for e in self.Q.terms})

    def coefficient(self, k: int) -> Polynomial:
        """Coefficient of ``p+^k`` in Q, as a polynomial in ``phat`` (d-2 variables)."""
        names = shell_names(self.d)[1:]
        return Polynomial(self.d - 2, {e[1:]: c for e, c in self.Q.terms.items() if e[0] == k}, names)

    def leading_coefficient(self) -> Polynomial:
        return self.coefficient(self.degree)

    def is_pplus_monomial(self) -> bool:
        """Q = p+^k C(phat): the modular group then preserves the zero set."""
        return len(self.pplus_exponents()) <= 1


def _shell_sum(d: int, m2: Fraction) -> Polynomial:
    names = shell_names(d)[1:]
    s = Polynomial.constant(d - 2, m2, names)
    for i in range(d - 2):
        s = s + Polynomial.variable(d - 2, i, names) ** 2
    return s


def to_shell_form(M: Polynomial, m2) -> ShellForm:
    """Substitute the light-cone shell parametrization into ``M`` and clear ``p+`` poles."""
    m2 = _as_fraction(m2)
    d = M.nvars
    if d < 2:
        raise ShellError("dimension must be at least 2")
    if m2 < 0:
        raise ShellError("mass squared must be nonnegative")
    if not is_even(M):
        raise ShellError("M is not even: M(-p) != M(p)")
    names = shell_names(d)[1:]
    s = _shell_sum(d, m2)
    s_pow: Dict[int, Polynomial] = {0: Polynomial.constant(d - 2, 1, names)}

    def spow(k: int) -> Polynomial:
        if k not in s_pow:
            s_pow[k] = s**k
        return s_pow[k]

    laurent: Dict[int, Polynomial] = {}
    for exps, c in M.terms.items():
        a, b, hat = exps[0], exps[1], exps[2:]
        mono = Polynomial(d - 2, {hat: c / 2 ** (a + b)}, names)
        # (p+ + s/p+)^a (p+ - s/p+)^b
        for i in range(a + 1):
            for j in range(b + 1):
                coeff = math.comb(a, i) * math.comb(b, j) * (-1) ** j
                k = a + b - 2 * (i + j)
                laurent[k] = laurent.get(k, Polynomial.zero(d - 2, names)) + mono * spow(i + j).scale(coeff)
    laurent = {k: v for k, v in laurent.items() if not v.is_zero()}
    if not laurent:
        raise ShellError("M vanishes identically on the mass shell")
    kmin = min(laurent)
    n = max(0, -(kmin // 2)) if kmin < 0 else 0
    terms: Dict[Tuple[int, ...], Fraction] = {}
    for k, poly in laurent.items():
        for hat, c in poly.terms.items():
            terms[(k + 2 * n,) + hat] = c
    return ShellForm(n=n, Q=Polynomial(d - 1, terms, shell_names(d)), m2=m2, d=d)


@dataclass(frozen=True)
class UnivariateInstance:
    """``Q(., phat)`` as ascending coefficients ``coeffs[k]`` of ``p+^k``."""

    phat: Tuple
    coeffs: Tuple
    degenerate: bool

    @property
    def exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coeffs)


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, str))


def instantiate(sf: ShellForm, phat: Sequence) -> UnivariateInstance:
    if len(phat) != sf.d - 2:
        raise ShellError(f"phat must have {sf.d - 2} entries, got {len(phat)}")
    exact = all(_is_exact(x) for x in phat)
    point = tuple(_as_fraction(x) for x in phat) if exact else tuple(float(x) for x in phat)
    deg = sf.degree
    coeffs = []
    for k in range(deg + 1):
        c = sf.coefficient(k)
        if exact:
            coeffs.append(evaluate(c, point, exact=True))
        else:
            coeffs.append(evaluate(c, point).real)
    degenerate = deg >= 0 and coeffs[deg] == 0
    return UnivariateInstance(phat=point, coeffs=tuple(coeffs), degenerate=degenerate)


def shell_point(pplus, phat: Sequence, m2) -> Tuple:
    """Momentum ``(p0, p1, p2, ...)`` on the forward shell at chart point ``(p+, phat)``."""
    if all(_is_exact(x) for x in (pplus, *phat, m2)):
        pplus = _as_fraction(pplus)
        phat = [_as_fraction(x) for x in phat]
        m2 = _as_fraction(m2)
    pminus = (sum((x * x for x in phat), 0) + m2) / pplus
    return ((pplus + pminus) / 2, (pplus - pminus) / 2, *phat)


# -- sampling -------------------------------------------------------------

GRID_VALUES = tuple(Fraction(x) for x in ("-2", "-1", "-1/2", "0", "1/2", "1", "2"))


def _probe_key(point: Tuple[Fraction, ...]):
    # unit vectors +-e_k first (last axis first), origin last, the rest by radius
    r2 = sum(x * x for x in point)
    rank = 0 if r2 == 1 and sum(1 for x in point if x) == 1 else (2 if r2 == 0 else 1)
    return (rank, r2, tuple(-x for x in reversed(point)))


def phat_grid(d: int) -> List[Tuple[Fraction, ...]]:
    """The deterministic rational probe grid ``{-2,-1,-1/2,0,1/2,1,2}^(d-2)``, probe order."""
    pts = list(product(GRID_VALUES, repeat=d - 2))
    pts.sort(key=_probe_key)
    return pts


def phat_samples(d: int, seed: int = 0, n_random: int = 32) -> List[Tuple[Fraction, ...]]:
    """Probe grid followed by ``n_random`` seeded random rational points in ``[-2, 2]^(d-2)``.

    In ``d = 2`` the only sample is the empty point.
    """
    if d == 2:
        return [()]
    pts = phat_grid(d)
    seen = set(pts)
    rng = np.random.default_rng(seed)
    extra = []
    attempts = 0
    while len(extra) < n_random and attempts < 100 * n_random:
        attempts += 1
        q = int(rng.integers(1, 9))
        p = tuple(Fraction(int(rng.integers(-2 * q, 2 * q + 1)), q) for _ in range(d - 2))
        if p not in seen:
            seen.add(p)
            extra.append(p)
    return pts + extra


PPLUS_PROBES = tuple(Fraction(x) for x in ("1/8", "1/4", "1/3", "1/2", "1", "3/2", "2", "3", "4", "8"))


def find_negative(sf: ShellForm, phats: Sequence[Tuple] | None = None, pplus: Sequence = PPLUS_PROBES):
    """First chart point ``(p+, phat)`` with ``Q < 0`` (exact), or None."""
    if phats is None:
        phats = [()] if sf.d == 2 else phat_grid(sf.d)
    for phat in phats:
        for pp in pplus:
            v = evaluate(sf.Q, (pp, *phat), exact=True)
            if v < 0:
                return pp, tuple(phat), v
    return None
