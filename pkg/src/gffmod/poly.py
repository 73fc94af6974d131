"""Exact multivariate polynomials over the rationals.

A :class:`Polynomial` maps exponent tuples to nonzero :class:`~fractions.Fraction`
coefficients.  Momentum-space polynomials use the variables ``p0 .. p{d-1}``;
the light-cone form produced by :mod:`gffmod.shell` reuses the same class with
its own variable names.

    >>> from gffmod.parser import parse
    >>> str(parse("(p0-p2)^2", 4))
    'p0^2 - 2*p0*p2 + p2^2'
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import TYPE_CHECKING, Dict, Iterable, Iterator, Mapping, Sequence, Tuple

if TYPE_CHECKING:
    from gffmod.lorentz import LorentzTransform

Exponent = Tuple[int, ...]

__all__ = [
    "Polynomial",
    "ShellReduction",
    "ShellConstancy",
    "evaluate",
    "is_even",
    "apply_linear",
    "reduce_mod_shell",
    "is_constant_on_shell",
]


def _default_names(nvars: int) -> Tuple[str, ...]:
    return tuple(f"p{i}" for i in range(nvars))


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"cannot convert {x!r} to an exact rational")


class Polynomial:
    """Immutable sparse polynomial with rational coefficients.

    Terms are stored without zero coefficients.  Equality is structural and
    ignores the display names of the variables.
    """

    __slots__ = ("_nvars", "_terms", "_names", "_hash")

    def __init__(
        self,
        nvars: int,
        terms: Mapping[Exponent, object] | Iterable[Tuple[Exponent, object]] = (),
        names: Sequence[str] | None = None,
    ):
        if nvars < 0:
            raise ValueError("number of variables must be nonnegative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: Dict[Exponent, Fraction] = {}
        for exps, coeff in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent {exps} does not have {nvars} entries")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = clean.get(exps, Fraction(0)) + _as_fraction(coeff)
            if c:
                clean[exps] = c
            else:
                clean.pop(exps, None)
        self._nvars = nvars
        self._terms = clean
        self._names = tuple(names) if names is not None else _default_names(nvars)
        if len(self._names) != nvars:
            raise ValueError("names must match the number of variables")
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, nvars: int, names: Sequence[str] | None = None) -> "Polynomial":
        return cls(nvars, {}, names)

    @classmethod
    def constant(cls, nvars: int, value, names: Sequence[str] | None = None) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: value}, names)

    @classmethod
    def variable(cls, nvars: int, index: int, names: Sequence[str] | None = None) -> "Polynomial":
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): 1}, names)

    # -- basic properties -------------------------------------------------

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def dimension(self) -> int:
        """Number of variables; equals the space-time dimension for momentum polynomials."""
        return self._nvars

    @property
    def names(self) -> Tuple[str, ...]:
        return self._names

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exponent, Fraction]]:
        """Terms in canonical graded-lex order, highest first."""
        for exps in sorted(self._terms, key=_grlex_key, reverse=True):
            yield exps, self._terms[exps]

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self._nvars, Fraction(0))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, index: int) -> int:
        return max((e[index] for e in self._terms), default=-1)

    def with_names(self, names: Sequence[str]) -> "Polynomial":
        return Polynomial(self._nvars, self._terms, names)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other._nvars != self._nvars:
                raise ValueError(
                    f"dimension mismatch: {self._nvars} vs {other._nvars} variables"
                )
            return other
        return Polynomial.constant(self._nvars, _as_fraction(other), self._names)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        out = dict(self._terms)
        for exps, c in other._terms.items():
            out[exps] = out.get(exps, Fraction(0)) + c
        return Polynomial(self._nvars, out, self._names)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self._nvars, {e: -c for e, c in self._terms.items()}, self._names)

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Polynomial(self._nvars, out, self._names)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.constant(self._nvars, 1, self._names)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        c = _as_fraction(c)
        return Polynomial(self._nvars, {e: c * v for e, v in self._terms.items()}, self._names)

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Compose: replace variable ``i`` by ``images[i]`` (all in a common ring)."""
        if len(images) != self._nvars:
            raise ValueError(f"need {self._nvars} images, got {len(images)}")
        if not images:
            return self
        target = images[0]
        powers: Dict[Tuple[int, int], Polynomial] = {}

        def power(i: int, k: int) -> Polynomial:
            if (i, k) not in powers:
                powers[(i, k)] = images[i] ** k
            return powers[(i, k)]

        out = Polynomial.zero(target.nvars, target.names)
        for exps, c in self._terms.items():
            term = Polynomial.constant(target.nvars, c, target.names)
            for i, k in enumerate(exps):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def derivative(self, index: int) -> "Polynomial":
        out: Dict[Exponent, Fraction] = {}
        for exps, c in self._terms.items():
            k = exps[index]
            if k:
                e = list(exps)
                e[index] -= 1
                out[tuple(e)] = c * k
        return Polynomial(self._nvars, out, self._names)

    # -- comparison / display ---------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._nvars == other._nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Polynomial.constant(self._nvars, other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({self._nvars}, {str(self)!r})"

    def __str__(self) -> str:
        return render(self)


def _grlex_key(exps: Exponent) -> Tuple[int, Exponent]:
    return (sum(exps), exps)


def _render_monomial(exps: Exponent, names: Sequence[str]) -> str:
    parts = []
    for name, k in zip(names, exps):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def render(P: Polynomial) -> str:
    """Canonical text form, terms in descending graded-lex order."""
    if P.is_zero():
        return "0"
    chunks = []
    for i, (exps, c) in enumerate(P.items()):
        mono = _render_monomial(exps, P.names)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            chunks.append(("-" if c < 0 else "") + body)
        else:
            chunks.append((" - " if c < 0 else " + ") + body)
    return "".join(chunks)


# -- operations ---------------------------------------------------------------


def evaluate(P: Polynomial, point: Sequence, exact: bool = False):
    """Evaluate ``P`` at ``point``.

    With ``exact=True`` every coordinate is converted to a Fraction and the
    result is an exact Fraction.  Otherwise the coefficients are converted to
    floats; scalar points give a complex number and numpy arrays broadcast.
    """
    if len(point) != P.nvars:
        raise ValueError(f"dimension mismatch: point has {len(point)} entries, expected {P.nvars}")
    if exact:
        xs = [_as_fraction(x) for x in point]
        total = Fraction(0)
        for exps, c in P.items():
            term = c
            for x, k in zip(xs, exps):
                if k:
                    term *= x**k
            total += term
        return total
    return _horner(P._terms, list(point), 0, all(_is_scalar(x) for x in point))


def _is_scalar(x) -> bool:
    return not hasattr(x, "shape") or getattr(x, "shape", ()) == ()


def _horner(terms: Mapping[Exponent, Fraction], xs: list, var: int, scalar: bool):
    # Horner in the leading variable, recursing on the remaining ones.
    if not terms:
        return 0j if scalar else 0.0
    if var == len(xs):
        (c,) = terms.values()
        return complex(float(c)) if scalar else float(c)
    groups: Dict[int, Dict[Exponent, Fraction]] = {}
    for exps, c in terms.items():
        groups.setdefault(exps[var], {})[exps] = c
    acc = None
    x = xs[var]
    for k in range(max(groups), -1, -1):
        inner = _horner(groups[k], xs, var + 1, scalar) if k in groups else 0
        acc = inner if acc is None else acc * x + inner
    return complex(acc) if scalar else acc


def is_even(P: Polynomial) -> bool:
    """True iff ``P(-p) == P(p)``, i.e. every term has even total degree."""
    return all(sum(exps) % 2 == 0 for exps in P.terms)


def apply_linear(P: Polynomial, L: "LorentzTransform") -> Polynomial:
    """Return the polynomial ``p -> P(L^{-1} p)``, computed exactly."""
    if L.dimension != P.nvars:
        raise ValueError(f"dimension mismatch: transform is {L.dimension}-dimensional, polynomial has {P.nvars} variables")
    inv = L.inverse().matrix
    d = P.nvars
    images = [
        Polynomial(d, {tuple(1 if k == j else 0 for k in range(d)): inv[i][j] for j in range(d) if inv[i][j]}, P.names)
        for i in range(d)
    ]
    return P.substitute(images)


@dataclass(frozen=True)
class ShellReduction:
    """``P == r0 + p0*r1`` modulo ``p0^2 - p1^2 - ... - p{d-1}^2 - m2``; r0, r1 are free of p0."""

    r0: Polynomial
    r1: Polynomial
    m2: Fraction


def _spatial_square(d: int, m2: Fraction) -> Polynomial:
    s = Polynomial.constant(d, m2)
    for i in range(1, d):
        s = s + Polynomial.variable(d, i) ** 2
    return s


def reduce_mod_shell(P: Polynomial, m2) -> ShellReduction:
    m2 = _as_fraction(m2)
    d = P.nvars
    s = _spatial_square(d, m2)
    s_pow = {0: Polynomial.constant(d, 1)}
    r0 = Polynomial.zero(d)
    r1 = Polynomial.zero(d)
    for exps, c in P.terms.items():
        k, parity = divmod(exps[0], 2)
        if k not in s_pow:
            s_pow[k] = s**k
        rest = Polynomial(d, {(0,) + exps[1:]: c})
        if parity:
            r1 = r1 + rest * s_pow[k]
        else:
            r0 = r0 + rest * s_pow[k]
    return ShellReduction(r0=r0, r1=r1, m2=m2)


@dataclass(frozen=True)
class ShellConstancy:
    """Outcome of the exact constancy test on the forward mass shell."""

    constant: bool
    value: Fraction | None = None
    witness: Polynomial | None = field(default=None, compare=False)

    def describe(self) -> str:
        if self.constant:
            return f"constant({self.value})"
        return f"nonconstant(witness {self.witness})"


def is_constant_on_shell(P: Polynomial, m2) -> ShellConstancy:
    red = reduce_mod_shell(P, m2)
    if red.r1.is_zero() and red.r0.is_constant():
        return ShellConstancy(True, red.r0.constant_term())
    if not red.r1.is_zero():
        return ShellConstancy(False, witness=red.r1)
    return ShellConstancy(False, witness=red.r0 - red.r0.constant_term())
