"""The half-plane factor F of Q and its reflection symmetry.

At a fixed ``phat`` the factor is

    F(p+) = c * (i p+)^(-n) * prod (p+ - rho)

where the ``rho`` are the zeros of ``Q(., phat)`` in the closed lower half
plane: each complex zero with ``Im < 0`` at full multiplicity and each real
zero at half multiplicity.  The constant is ``c = sqrt(lead)`` when F has an
even number of zeros and ``c = i sqrt(lead)`` when the number is odd; with this
choice ``F(p+, phat) F(-p+, -phat) == p+^(-2n) Q(p+, phat)`` and
``F(-p+, -phat) == conj(F(p+, phat))`` hold for real ``p+``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

import numpy as np

from gffmod.roots import DEFAULT_TOL, PairingError, RootProfile, check_mirror, root_profile
from gffmod.shell import ShellForm, instantiate

__all__ = [
    "FactorError",
    "FactorEvaluator",
    "SymmetryReport",
    "build_factor",
    "factor_pair",
    "eval_F",
    "check_symmetry",
    "reconstruction_error",
    "SYMMETRY_TOL",
]

SYMMETRY_TOL = 1e-9


class FactorError(ValueError):
    pass


@dataclass(frozen=True)
class FactorEvaluator:
    n: int
    scalar: complex
    lower_factors: Tuple[complex, ...]
    phat: Tuple

    @property
    def degree(self) -> int:
        return len(self.lower_factors)

    def real_zeros(self) -> Tuple[float, ...]:
        return tuple(z.real for z in self.lower_factors if z.imag == 0)

    def __call__(self, pplus):
        return eval_F(self, pplus)


def build_factor(sf: ShellForm, profile: RootProfile, mirror: RootProfile | None = None, tol: float = DEFAULT_TOL) -> FactorEvaluator:
    """Assemble F at ``profile.phat`` from the zeros of Q there.

    ``mirror`` is the profile at ``-phat``; it must be the negated image of
    ``profile`` (checked, :class:`FactorError` otherwise).
    """
    where = "(" + ",".join(str(x) for x in profile.phat) + ")"
    if profile.degenerate or (mirror is not None and mirror.degenerate):
        raise FactorError(f"degenerate instance at phat={where}")
    if mirror is not None:
        try:
            check_mirror(profile, mirror, tol)
        except PairingError as exc:
            raise FactorError(f"pairing mismatch: {exc}") from exc
    lead = instantiate(sf, profile.phat).coeffs[-1]
    if lead <= 0:
        raise FactorError(f"leading coefficient {lead} of Q is not positive at phat={where}")
    roots = []
    for z, k in profile.roots:
        if z.imag == 0:
            if k % 2:
                raise FactorError(f"real zero {z.real} has odd multiplicity {k}")
            roots.extend([complex(z.real, 0.0)] * (k // 2))
        elif z.imag < 0:
            roots.extend([z] * k)
    scalar = math.sqrt(float(lead)) * (1j if len(roots) % 2 else 1.0)
    return FactorEvaluator(n=sf.n, scalar=complex(scalar), lower_factors=tuple(roots), phat=tuple(profile.phat))


def eval_F(fe: FactorEvaluator, pplus):
    """``F(p+)`` for scalar or array ``p+``; raises at the pole ``p+ = 0`` when ``n > 0``."""
    p = np.asarray(pplus, dtype=complex)
    if fe.n > 0 and np.any(p == 0):
        raise FactorError("F has a pole at p+ = 0")
    val = fe.scalar * (1j * p) ** (-fe.n) if fe.n else np.full(p.shape, fe.scalar, dtype=complex)
    for rho in fe.lower_factors:
        val = val * (p - rho)
    return complex(val) if val.ndim == 0 else val


def _negate(phat: Tuple) -> Tuple:
    return tuple(-x for x in phat)


def factor_pair(sf: ShellForm, phat: Sequence, tol: float = DEFAULT_TOL) -> Tuple[FactorEvaluator, FactorEvaluator]:
    """Factors at ``phat`` and ``-phat``, each built from its own root profile."""
    phat = tuple(phat)
    prof = root_profile(sf, phat, tol)
    minus = _negate(prof.phat)
    mprof = prof if minus == prof.phat else root_profile(sf, minus, tol)
    return build_factor(sf, prof, mprof, tol), build_factor(sf, mprof, prof, tol)


@dataclass(frozen=True)
class SymmetryReport:
    max_deviation: float
    samples: int
    tolerance: float = SYMMETRY_TOL

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance


def check_symmetry(fe: FactorEvaluator, fe_mirror: FactorEvaluator, samples: Sequence[float], tol: float = SYMMETRY_TOL) -> SymmetryReport:
    """Max relative deviation of ``F(-p+, -phat)`` from ``conj F(p+, phat)`` over real samples."""
    p = np.asarray(samples, dtype=float)
    a = eval_F(fe_mirror, -p)
    b = np.conj(eval_F(fe, p))
    scale = np.maximum(np.abs(b), np.abs(a))
    dev = np.where(scale > 0, np.abs(a - b) / np.where(scale > 0, scale, 1), 0.0)
    return SymmetryReport(float(np.max(dev, initial=0.0)), len(p), tol)


def reconstruction_error(sf: ShellForm, fe: FactorEvaluator, fe_mirror: FactorEvaluator, samples: Sequence[float]) -> float:
    """Max of ``|F(p)F(-p,-phat) - p^(-2n) Q(p)| / (p^(-2n) sum |q_k| |p|^k)`` on real samples."""
    coeffs = [float(c) if isinstance(c, Fraction) else c for c in instantiate(sf, fe.phat).coeffs]
    p = np.asarray(samples, dtype=float)
    q = sum(c * p**k for k, c in enumerate(coeffs))
    scale = sum(abs(c) * np.abs(p) ** k for k, c in enumerate(coeffs))
    lhs = eval_F(fe, p) * eval_F(fe_mirror, -p) * p ** (2 * sf.n)
    return float(np.max(np.abs(lhs - q) / np.where(scale > 0, scale, 1), initial=0.0))
