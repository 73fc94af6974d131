"""Exact rational Lorentz transformations and wedges.

Rotations and boosts use rational (Cayley) parametrizations so every matrix
entry is a Fraction and the metric identity holds with zero error::

    rotation: cos = (1 - t^2)/(1 + t^2),  sin = 2t/(1 + t^2)
    boost:    cosh = (1 + t^2)/(1 - t^2), sinh = 2t/(1 - t^2)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

Matrix = Tuple[Tuple[Fraction, ...], ...]

__all__ = [
    "LorentzError",
    "LorentzTransform",
    "Wedge",
    "identity",
    "rotation",
    "boost",
    "generators",
    "orbit",
    "DEFAULT_ORBIT_DEPTH",
]

DEFAULT_ORBIT_DEPTH = 2


class LorentzError(ValueError):
    pass


def _metric(d: int) -> List[Fraction]:
    return [Fraction(1)] + [Fraction(-1)] * (d - 1)


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n))
        for i in range(n)
    )


def _det(m: Matrix) -> Fraction:
    a = [list(row) for row in m]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


@dataclass(frozen=True)
class LorentzTransform:
    """Proper orthochronous Lorentz matrix with rational entries, signature (+,-,...,-)."""

    matrix: Matrix

    def __post_init__(self):
        m = tuple(tuple(Fraction(x) for x in row) for row in self.matrix)
        d = len(m)
        if d < 2 or any(len(row) != d for row in m):
            raise LorentzError("Lorentz matrix must be square with d >= 2")
        object.__setattr__(self, "matrix", m)
        eta = _metric(d)
        for i in range(d):
            for j in range(d):
                v = sum((m[k][i] * eta[k] * m[k][j] for k in range(d)), Fraction(0))
                if v != (eta[i] if i == j else 0):
                    raise LorentzError(f"metric not preserved at entry ({i}, {j})")
        if m[0][0] < 1:
            raise LorentzError("transform is not orthochronous")
        if _det(m) != 1:
            raise LorentzError("transform is not proper (det != 1)")

    @property
    def dimension(self) -> int:
        return len(self.matrix)

    def compose(self, other: "LorentzTransform") -> "LorentzTransform":
        """``self @ other``: apply ``other`` first."""
        if other.dimension != self.dimension:
            raise LorentzError("dimension mismatch")
        return LorentzTransform(_matmul(self.matrix, other.matrix))

    __matmul__ = compose

    def inverse(self) -> "LorentzTransform":
        # eta L^T eta
        d = self.dimension
        eta = _metric(d)
        return LorentzTransform(
            tuple(tuple(eta[i] * self.matrix[j][i] * eta[j] for j in range(d)) for i in range(d))
        )

    def apply(self, vector: Sequence) -> Tuple[Fraction, ...]:
        v = [Fraction(x) for x in vector]
        return tuple(sum((row[j] * v[j] for j in range(len(v))), Fraction(0)) for row in self.matrix)

    def is_identity(self) -> bool:
        return self == identity(self.dimension)

    def to_strings(self) -> List[List[str]]:
        return [[str(x) for x in row] for row in self.matrix]

    def __str__(self) -> str:
        return "[" + "; ".join(" ".join(str(x) for x in row) for row in self.matrix) + "]"


@dataclass(frozen=True)
class Wedge:
    """The wedge ``frame . W_R + offset``; ``W_R = {|x0| < x1}``."""

    frame: LorentzTransform
    offset: Tuple[Fraction, ...] = field(default=())

    def __post_init__(self):
        d = self.frame.dimension
        off = tuple(Fraction(x) for x in self.offset) or (Fraction(0),) * d
        if len(off) != d:
            raise LorentzError("offset dimension mismatch")
        object.__setattr__(self, "offset", off)

    @classmethod
    def right(cls, d: int) -> "Wedge":
        return cls(identity(d))

    def contains(self, x: Sequence) -> bool:
        y = self.frame.inverse().apply([Fraction(a) - b for a, b in zip(x, self.offset)])
        return abs(y[0]) < y[1]


def identity(d: int) -> LorentzTransform:
    return LorentzTransform(tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)))


def _embed(d: int, i: int, j: int, block) -> LorentzTransform:
    m = [[Fraction(int(r == c)) for c in range(d)] for r in range(d)]
    (a, b), (c, e) = block
    m[i][i], m[i][j], m[j][i], m[j][j] = a, b, c, e
    return LorentzTransform(tuple(tuple(row) for row in m))


def rotation(d: int, i: int, j: int, t) -> LorentzTransform:
    """Rotation in the spatial ``(i, j)`` plane; ``t = 1`` is the quarter turn."""
    if not 1 <= i < j <= d - 1:
        raise LorentzError(f"invalid rotation axes ({i}, {j}) for d={d}")
    t = Fraction(t)
    cos = (1 - t * t) / (1 + t * t)
    sin = 2 * t / (1 + t * t)
    return _embed(d, i, j, ((cos, -sin), (sin, cos)))


def boost(d: int, i: int, t) -> LorentzTransform:
    """Boost along spatial axis ``i`` with rational rapidity parameter ``|t| < 1``."""
    if not 1 <= i <= d - 1:
        raise LorentzError(f"invalid boost axis {i} for d={d}")
    t = Fraction(t)
    if abs(t) >= 1:
        raise LorentzError("boost parameter must satisfy |t| < 1")
    cosh = (1 + t * t) / (1 - t * t)
    sinh = 2 * t / (1 - t * t)
    return _embed(d, 0, i, ((cosh, sinh), (sinh, cosh)))


_ROTATION_PARAMS = (Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2))
_BOOST_PARAMS = (Fraction(1, 3), Fraction(-1, 3), Fraction(1, 2), Fraction(-1, 2))


def generators(d: int) -> List[LorentzTransform]:
    gens = []
    for i in range(1, d):
        for j in range(i + 1, d):
            gens.extend(rotation(d, i, j, t) for t in _ROTATION_PARAMS)
    for i in range(1, d):
        gens.extend(boost(d, i, t) for t in _BOOST_PARAMS)
    return gens


def orbit(d: int, depth: int = DEFAULT_ORBIT_DEPTH) -> List[LorentzTransform]:
    """All products of at most ``depth`` generators, deduplicated, breadth-first order."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    gens = generators(d)
    seen = {identity(d)}
    out = [identity(d)]
    frontier = [identity(d)]
    for _ in range(depth):
        nxt = []
        for a in frontier:
            for g in gens:
                b = g @ a
                if b not in seen:
                    seen.add(b)
                    out.append(b)
                    nxt.append(b)
        frontier = nxt
    return out
