"""Zeros of ``Q(., phat)`` in ``p+``: numerical roots, classification and Sturm certificates.

Univariate polynomials are ascending coefficient sequences (``c[k]`` multiplies
``x^k``).  Exact inputs (Fractions) are first split into square-free factors
so every numerical root solve sees only simple roots; multiplicities then come
out exactly rather than from clustering noisy eigenvalues.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from gffmod.shell import ShellForm, instantiate

__all__ = [
    "RootFindingError",
    "PairingError",
    "RootProfile",
    "find_roots",
    "classify",
    "sturm_real_count",
    "squarefree_decomposition",
    "root_profile",
    "check_mirror",
    "format_complex",
    "DEFAULT_TOL",
]

DEFAULT_TOL = 1e-7

Poly1 = List[Fraction]


class RootFindingError(ArithmeticError):
    pass


class PairingError(ValueError):
    """Root structure incompatible with a nonnegative, reflection-symmetric Q."""


# -- exact univariate arithmetic ----------------------------------------------


def _trim(p: Sequence) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _deriv(p: Poly1) -> Poly1:
    return _trim([k * c for k, c in enumerate(p)][1:])


def _divmod(a: Poly1, b: Poly1) -> Tuple[Poly1, Poly1]:
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lead = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        f = r[-1] / lead
        q[shift] = f
        for i, c in enumerate(b):
            r[i + shift] -= f * c
        r = _trim(r)
    return q, r


def _monic(p: Poly1) -> Poly1:
    p = _trim(p)
    return [c / p[-1] for c in p] if p else p


def _gcd(a: Poly1, b: Poly1) -> Poly1:
    a, b = _monic(a), _monic(b)
    while b:
        _, r = _divmod(a, b)
        a, b = b, _monic(r)
    return a


def squarefree_decomposition(p: Sequence) -> List[Tuple[Poly1, int]]:
    """Yun's algorithm: ``p = lead * prod f_i^i`` with square-free, coprime monic ``f_i``."""
    p = _trim([Fraction(c) for c in p])
    if len(p) <= 1:
        return []
    out = []
    a0 = _gcd(p, _deriv(p))
    b, _ = _divmod(p, a0)
    c, _ = _divmod(_deriv(p), a0)
    d = _trim([x - y for x, y in _zip_pad(c, _deriv(b))])
    i = 1
    while len(b) > 1:
        a = _gcd(b, d)
        b, _ = _divmod(b, a)
        c, _ = _divmod(d, a)
        if len(a) > 1:
            out.append((_monic(a), i))
        d = _trim([x - y for x, y in _zip_pad(c, _deriv(b))])
        i += 1
    return out


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return zip(list(a) + [0] * (n - len(a)), list(b) + [0] * (n - len(b)))


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for x, y in zip(signs, signs[1:]) if x != y)


def sturm_real_count(coeffs: Sequence) -> Tuple[int, int]:
    """``(distinct real roots, degree of the square-free part)`` computed exactly.

    All roots are real iff the two numbers agree.
    """
    p = _trim([Fraction(c) for c in coeffs])
    if not p:
        raise ValueError("sturm_real_count needs a nonzero polynomial")
    if len(p) == 1:
        return 0, 0
    g = _gcd(p, _deriv(p))
    sq, _ = _divmod(p, g)
    sq = _monic(sq)
    deg = len(sq) - 1
    chain = [sq, _deriv(sq)]
    while len(chain[-1]) > 1:
        _, r = _divmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    at_pos_inf = [q[-1] for q in chain]
    at_neg_inf = [q[-1] * (-1) ** (len(q) - 1) for q in chain]
    return _sign_changes(at_neg_inf) - _sign_changes(at_pos_inf), deg


# -- numerical roots ------------------------------------------------------------


def _polish(coeffs: np.ndarray, roots: np.ndarray, iters: int = 3) -> np.ndarray:
    # Newton steps on a square-free factor; coeffs descending.
    dcoeffs = np.polyder(coeffs)
    out = roots.astype(complex)
    for _ in range(iters):
        f = np.polyval(coeffs, out)
        df = np.polyval(dcoeffs, out)
        step = np.where(df != 0, f / np.where(df != 0, df, 1), 0)
        out = out - step
    return out


def _simple_roots(monic: Poly1) -> np.ndarray:
    desc = np.array([float(c) for c in reversed(monic)])
    if len(desc) == 2:
        return np.array([-desc[1] / desc[0]], dtype=complex)
    return _polish(desc, np.roots(desc))


def _residual_scale(coeffs: Sequence[complex], z: complex) -> float:
    return sum(abs(c) * abs(z) ** k for k, c in enumerate(coeffs)) or 1.0


def _sorted_roots(roots: List[complex]) -> List[complex]:
    return sorted(roots, key=lambda z: (round(z.real, 10), round(z.imag, 10)))


def find_roots(coeffs: Sequence, precision: float = 1e-10) -> List[complex]:
    """All ``deg`` roots of the ascending coefficient list, repeated by multiplicity.

    Raises :class:`RootFindingError` if the leading coefficient vanishes or a
    root misses the residual bound ``|p(z)| <= precision * sum |c_k| |z|^k``.
    """
    coeffs = list(coeffs)
    if not coeffs:
        raise RootFindingError("empty coefficient list")
    if coeffs[-1] == 0:
        raise RootFindingError("degenerate leading coefficient")
    if len(coeffs) == 1:
        return []
    roots: List[complex] = []
    if all(isinstance(c, (int, Fraction)) for c in coeffs):
        p = [Fraction(c) for c in coeffs]
        zeros = next(k for k, c in enumerate(p) if c != 0)
        roots.extend([0j] * zeros)
        for factor, mult in squarefree_decomposition(p[zeros:]):
            for z in _simple_roots(factor):
                roots.extend([complex(z)] * mult)
    else:
        desc = np.array([complex(c) for c in reversed(coeffs)])
        roots.extend(complex(z) for z in np.roots(desc))
    fc = [complex(c) for c in coeffs]
    for z in roots:
        res = abs(sum(c * z**k for k, c in enumerate(fc)))
        if res > precision * _residual_scale(fc, z):
            raise RootFindingError(f"root {z} has residual {res:.3e}")
    return _sorted_roots(roots)


# -- classification -----------------------------------------------------------


@dataclass(frozen=True)
class RootProfile:
    """Clustered zeros of ``Q(., phat)`` with multiplicities."""

    phat: Tuple
    roots: Tuple[Tuple[complex, int], ...]
    degenerate: bool = False
    witness: complex | None = None
    sturm: Tuple[int, int] | None = None
    notes: Tuple[str, ...] = field(default=(), compare=False)

    @property
    def classification(self) -> str:
        if self.degenerate:
            return "degenerate"
        return "all_real" if self.witness is None else "has_complex"

    @property
    def all_real(self) -> bool:
        return not self.degenerate and self.witness is None

    @property
    def certified(self) -> bool:
        return self.sturm is not None

    @property
    def sturm_all_real(self) -> bool | None:
        if self.sturm is None:
            return None
        return self.sturm[0] == self.sturm[1]

    def real_roots(self) -> List[Tuple[float, int]]:
        return [(z.real, k) for z, k in self.roots if z.imag == 0]

    def complex_roots(self) -> List[Tuple[complex, int]]:
        return [(z, k) for z, k in self.roots if z.imag != 0]


def _cluster(roots: Sequence[complex], tol: float) -> List[List[complex]]:
    clusters: List[List[complex]] = []
    for z in roots:
        for cl in clusters:
            c = cl[0]
            if abs(z - c) <= tol * max(1.0, abs(c)):
                cl.append(z)
                break
        else:
            clusters.append([z])
    return clusters


def classify(roots: Sequence[complex], tol: float = DEFAULT_TOL, phat: Tuple = ()) -> RootProfile:
    """Cluster roots and check the structure forced by ``Q >= 0`` with real coefficients.

    Real clusters must have even multiplicity and complex clusters must pair
    with their conjugates.  The witness is the complex root of largest
    ``|Im|`` (taken in the upper half plane).
    """
    merged: List[Tuple[complex, int]] = []
    for cl in _cluster(list(roots), tol):
        center = complex(np.mean(cl))
        if abs(center.imag) <= tol * max(1.0, abs(center)):
            center = complex(center.real, 0.0)
        merged.append((center, len(cl)))
    merged.sort(key=lambda t: (round(t[0].real, 10), round(t[0].imag, 10)))
    for z, k in merged:
        if z.imag == 0:
            if k % 2:
                raise PairingError(f"real root {z.real:.12g} has odd multiplicity {k}")
        else:
            partner = [m for w, m in merged if abs(w - z.conjugate()) <= tol * max(1.0, abs(z))]
            if partner != [k]:
                raise PairingError(f"complex root {z} lacks a conjugate partner of multiplicity {k}")
    cplx = [z for z, _ in merged if z.imag != 0]
    witness = None
    if cplx:
        w = max(cplx, key=lambda z: (abs(z.imag), z.imag))
        witness = w if w.imag > 0 else w.conjugate()
    return RootProfile(phat=tuple(phat), roots=tuple(merged), witness=witness)


def root_profile(sf: ShellForm, phat: Sequence, tol: float = DEFAULT_TOL) -> RootProfile:
    """Instantiate ``Q`` at ``phat``, find, classify and (for rational phat) certify its zeros."""
    inst = instantiate(sf, phat)
    if inst.degenerate:
        return RootProfile(phat=inst.phat, roots=(), degenerate=True)
    prof = classify(find_roots(inst.coeffs), tol, inst.phat)
    if not inst.exact:
        return prof
    return _with_sturm(prof, sturm_real_count(inst.coeffs))


def _with_sturm(prof: RootProfile, sturm: Tuple[int, int]) -> RootProfile:
    notes = prof.notes
    witness = prof.witness
    if (sturm[0] == sturm[1]) != (witness is None):
        notes = notes + (f"numeric classification disagrees with Sturm count {sturm}",)
        if sturm[0] != sturm[1] and witness is None:
            # complex pair below the clustering tolerance; the exact count wins
            cands = [z for z, _ in prof.roots]
            witness = max(cands, key=lambda z: abs(z.imag)) if cands else None
    return RootProfile(prof.phat, prof.roots, prof.degenerate, witness, sturm, notes)


def check_mirror(at_phat: RootProfile, at_minus: RootProfile, tol: float = DEFAULT_TOL) -> None:
    """Zeros at ``-phat`` must be the negatives of those at ``phat``."""
    if at_phat.degenerate or at_minus.degenerate:
        return
    a = sorted(((z, k) for z, k in at_phat.roots), key=lambda t: (t[0].real, t[0].imag))
    b = sorted(((-z, k) for z, k in at_minus.roots), key=lambda t: (t[0].real, t[0].imag))
    if len(a) != len(b):
        raise PairingError("root counts at phat and -phat differ")
    for z, k in a:
        if not any(abs(z - w) <= tol * max(1.0, abs(z)) and k == m for w, m in b):
            raise PairingError(f"root {z} at phat={at_phat.phat} has no mirror at -phat")


def format_complex(z: complex, digits: int = 6) -> str:
    """Compact text form used in reports, e.g. ``1.41421i`` or ``-1+2i``."""
    re_, im = z.real, z.imag
    if abs(im) == 0:
        return f"{re_:.{digits}g}"
    imag = f"{im:.{digits}g}i"
    if re_ == 0:
        return imag
    return f"{re_:.{digits}g}{'+' if im > 0 else ''}{imag}"
