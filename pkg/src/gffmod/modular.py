"""Closed-form wedge modular flow and conjugation on the one-particle space.

Pointwise formulas (``lam = exp(2 pi t)``)::

    right flow:   F(lam p+, phat) / F(p+, phat)             * phi(lam p+, phat)
    left flow:    F(-p+/lam, -phat) / F(-p+, -phat)         * phi(p+/lam, phat)
    right conj:   F(-p+, phat) / F(p+, phat)                * conj(phi(p+, -phat))
    left conj:    F(p+, -phat) / F(-p+, -phat)              * conj(phi(p+, -phat))

The :class:`Lattice` discretizes ``p+`` on a log-uniform grid so the flow by
``t = k h / (2 pi)`` is an exact index shift, and ``phat`` on a grid closed
under negation so the conjugation is an exact index map.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from gffmod.factor import FactorError, FactorEvaluator, eval_F, factor_pair
from gffmod.roots import DEFAULT_TOL, root_profile
from gffmod.shell import ShellForm

__all__ = [
    "ModularError",
    "Lattice",
    "LatticeState",
    "delta_prefactor",
    "j_prefactor",
    "build_lattice",
    "apply_flow",
    "apply_conjugation",
    "inner",
    "norm",
    "random_state",
    "check_flow_unitarity",
    "check_group_law",
    "check_antiunitarity",
    "check_involution",
    "check_s_identity",
    "check_borchers",
    "check_duality_equivalence",
    "FLOW_TOL",
    "S_IDENTITY_TOL",
    "BORCHERS_TOL",
    "J_EQUAL_TOL",
]

FLOW_TOL = 1e-8
S_IDENTITY_TOL = 1e-10
BORCHERS_TOL = 1e-8
J_EQUAL_TOL = 1e-9
ROOT_PROXIMITY = 1e-6

DEFAULT_NPLUS = 256
DEFAULT_H = math.log(2) / 16
PHAT_AXIS = tuple(Fraction(k, 4) for k in range(-8, 9))


class ModularError(ArithmeticError):
    pass


# -- pointwise prefactors -------------------------------------------------------


def _checked_ratio(num, den, fe: FactorEvaluator):
    den_arr = np.asarray(den)
    if np.any(den_arr == 0):
        zeros = ", ".join(f"{r:.12g}" for r in fe.real_zeros())
        raise ModularError(f"F vanishes on the real line (real zeros: {zeros})")
    return num / den


def delta_prefactor(fe: FactorEvaluator, t: float, pplus, side: str = "right", fe_mirror: FactorEvaluator | None = None):
    """Multiplier of the modular flow ``delta^{it}`` at ``(p+, phat)``.

    ``fe`` is F at ``phat``; the left side needs ``fe_mirror`` (F at ``-phat``).
    """
    lam = math.exp(2 * math.pi * t)
    if side == "right":
        return _checked_ratio(eval_F(fe, lam * np.asarray(pplus)), eval_F(fe, pplus), fe)
    if side == "left":
        if fe_mirror is None:
            raise ValueError("left-wedge prefactor needs the factor at -phat")
        p = np.asarray(pplus)
        return _checked_ratio(eval_F(fe_mirror, -p / lam), eval_F(fe_mirror, -p), fe_mirror)
    raise ValueError(f"unknown side {side!r}")


def j_prefactor(fe: FactorEvaluator, fe_mirror: FactorEvaluator, pplus, side: str = "right"):
    """Multiplier of the modular conjugation at ``(p+, phat)``."""
    p = np.asarray(pplus)
    if side == "right":
        return _checked_ratio(eval_F(fe, -p), eval_F(fe, p), fe)
    if side == "left":
        return _checked_ratio(eval_F(fe_mirror, p), eval_F(fe_mirror, -p), fe_mirror)
    raise ValueError(f"unknown side {side!r}")


# -- lattice ------------------------------------------------------------------


@dataclass
class Lattice:
    """Discretized one-particle space of one mass component."""

    sf: ShellForm
    pplus: np.ndarray
    h: float
    phat: List[Tuple[Fraction, ...]]
    neg: np.ndarray
    active: np.ndarray
    Fp: np.ndarray  # F(p+_i, phat_j)
    Fm: np.ndarray  # F(-p+_i, phat_j)
    quad: np.ndarray  # trapezoid weights, shape (N, P)
    factors: Dict[int, FactorEvaluator] = field(repr=False, default_factory=dict)
    warnings: List[str] = field(default_factory=list)

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.pplus), len(self.phat))

    @property
    def weight(self) -> np.ndarray:
        """``W = F(p+, phat) F(-p+, -phat) / p+`` (zero on excluded phat columns)."""
        w = self.Fp * self.Fm[:, self.neg] / self.pplus[:, None]
        return np.where(self.active[None, :], w.real, 0.0)

    def zeros(self) -> "LatticeState":
        return LatticeState(np.zeros(self.shape, dtype=complex), self)


@dataclass
class LatticeState:
    values: np.ndarray
    lattice: Lattice
    truncated: bool = False

    @property
    def pplus_grid(self) -> np.ndarray:
        return self.lattice.pplus

    @property
    def phat_grid(self) -> List[Tuple[Fraction, ...]]:
        return self.lattice.phat

    @property
    def weight(self) -> np.ndarray:
        return self.lattice.weight

    def __mul__(self, c) -> "LatticeState":
        return LatticeState(self.values * c, self.lattice, self.truncated)

    __rmul__ = __mul__

    def __add__(self, other: "LatticeState") -> "LatticeState":
        return LatticeState(self.values + other.values, self.lattice, self.truncated or other.truncated)

    def __sub__(self, other: "LatticeState") -> "LatticeState":
        return LatticeState(self.values - other.values, self.lattice, self.truncated or other.truncated)


def _trapezoid(n: int) -> np.ndarray:
    w = np.ones(n)
    if n > 1:
        w[0] = w[-1] = 0.5
    return w


def build_lattice(
    sf: ShellForm,
    n_plus: int = DEFAULT_NPLUS,
    p_min: float | None = None,
    h: float = DEFAULT_H,
    phat_axis: Sequence[Fraction] = PHAT_AXIS,
    tol: float = DEFAULT_TOL,
) -> Lattice:
    """Default lattice: 256 log-spaced ``p+`` above ``m/8 + 1/8`` with step ``ln 2 / 16``.

    The grid is ``p_min * exp((i + 1/2) h)``; the half-step offset keeps rational
    and power-of-two real zeros of F off the grid.
    """
    if p_min is None:
        p_min = math.sqrt(float(sf.m2)) / 8 + 1 / 8
    pplus = p_min * np.exp(h * (np.arange(n_plus) + 0.5))
    axis = [Fraction(x) for x in phat_axis]
    if sorted(-x for x in axis) != sorted(axis):
        raise ValueError("phat axis must be closed under negation")
    phat = [()] if sf.d == 2 else list(product(axis, repeat=sf.d - 2))
    index = {p: j for j, p in enumerate(phat)}
    neg = np.array([index[tuple(-x for x in p)] for p in phat])
    P = len(phat)
    Fp = np.ones((n_plus, P), dtype=complex)
    Fm = np.ones((n_plus, P), dtype=complex)
    active = np.ones(P, dtype=bool)
    factors: Dict[int, FactorEvaluator] = {}
    warnings: List[str] = []
    for j, q in enumerate(phat):
        if j in factors:
            continue
        try:
            fe, fe_m = factor_pair(sf, q, tol)
        except FactorError as exc:
            active[j] = active[neg[j]] = False
            warnings.append(f"phat={_fmt(q)} excluded: {exc}")
            continue
        factors[j], factors[neg[j]] = fe, fe_m
    for j, fe in factors.items():
        Fp[:, j] = eval_F(fe, pplus)
        Fm[:, j] = eval_F(fe, -pplus)
        for r in fe.real_zeros():
            if r > 0:
                dist = np.min(np.abs(pplus - r)) / r
                if dist < ROOT_PROXIMITY:
                    warnings.append(f"grid point within {dist:.1e} of real zero {r:.6g} at phat={_fmt(phat[j])}")
    wq = h * pplus * _trapezoid(n_plus)
    wp = np.ones(P)
    if sf.d > 2:
        step = float(axis[1] - axis[0]) if len(axis) > 1 else 1.0
        w1 = step * _trapezoid(len(axis))
        wp = np.array([np.prod([w1[axis.index(x)] for x in q]) for q in phat])
    quad = wq[:, None] * wp[None, :]
    return Lattice(sf, pplus, h, phat, neg, active, Fp, Fm, quad, factors, warnings)


def _fmt(phat: Tuple) -> str:
    return "(" + ",".join(str(x) for x in phat) + ")"


def inner(a: LatticeState, b: LatticeState) -> complex:
    """``<a, b>``, antilinear in the first argument."""
    lat = a.lattice
    return complex(np.sum(lat.quad * lat.weight * np.conj(a.values) * b.values))


def norm(a: LatticeState) -> float:
    return math.sqrt(max(inner(a, a).real, 0.0))


def random_state(lat: Lattice, rng: np.random.Generator, margin: int | None = None) -> LatticeState:
    """Random state supported on the interior ``p+`` indices ``[margin, N - margin)``.

    The default margin ``N/4 + 1`` keeps shifts with ``|k| <= N/4`` off the end points.
    """
    n, p = lat.shape
    margin = n // 4 + 1 if margin is None else margin
    vals = np.zeros((n, p), dtype=complex)
    vals[margin : n - margin] = rng.normal(size=(n - 2 * margin, p)) + 1j * rng.normal(size=(n - 2 * margin, p))
    vals[:, ~lat.active] = 0
    return LatticeState(vals, lat)


def _shift(values: np.ndarray, k: int) -> Tuple[np.ndarray, bool]:
    # out[i] = values[i + k], zero-filled off grid
    out = np.zeros_like(values)
    n = values.shape[0]
    if k >= 0:
        out[: n - k] = values[k:]
        lost = bool(np.any(values[:k] != 0))
    else:
        out[-k:] = values[: n + k]
        lost = bool(np.any(values[n + k :] != 0))
    return out, lost


def apply_flow(state: LatticeState, k: int, side: str = "right") -> LatticeState:
    """Modular flow for ``t = k h / (2 pi)`` as an exact grid shift."""
    lat = state.lattice
    n = lat.shape[0]
    if abs(k) >= n:
        raise ValueError("|k| must be smaller than the number of p+ points")
    if k == 0:
        return LatticeState(state.values.copy(), lat, state.truncated)
    with np.errstate(divide="ignore", invalid="ignore"):
        if side == "right":
            num, _ = _shift(lat.Fp, k)
            pref = num / lat.Fp
            moved, lost = _shift(state.values, k)
        elif side == "left":
            Fneg = lat.Fm[:, lat.neg]
            num, _ = _shift(Fneg, -k)
            pref = num / Fneg
            moved, lost = _shift(state.values, -k)
        else:
            raise ValueError(f"unknown side {side!r}")
        out = np.where(moved != 0, pref * moved, 0)
    out[:, ~lat.active] = 0
    return LatticeState(out, lat, state.truncated or lost)


def apply_conjugation(state: LatticeState, side: str = "right") -> LatticeState:
    lat = state.lattice
    mirrored = np.conj(state.values[:, lat.neg])
    with np.errstate(divide="ignore", invalid="ignore"):
        if side == "right":
            pref = lat.Fm / lat.Fp
        elif side == "left":
            pref = lat.Fp[:, lat.neg] / lat.Fm[:, lat.neg]
        else:
            raise ValueError(f"unknown side {side!r}")
        out = pref * mirrored
    out[:, ~lat.active] = 0
    return LatticeState(out, lat, state.truncated)


# -- numerical identity checks ------------------------------------------------------


def check_flow_unitarity(lat: Lattice, rng: np.random.Generator, ks: Sequence[int], side: str = "right") -> float:
    phi = random_state(lat, rng)
    n0 = norm(phi)
    return max(abs(norm(apply_flow(phi, k, side)) / n0 - 1) for k in ks)


def check_group_law(lat: Lattice, rng: np.random.Generator, k: int, l: int) -> float:
    phi = random_state(lat, rng)
    a = apply_flow(apply_flow(phi, k), l)
    b = apply_flow(phi, k + l)
    return norm(a - b) / norm(phi)


def check_antiunitarity(lat: Lattice, rng: np.random.Generator, side: str = "right") -> float:
    phi, psi = random_state(lat, rng), random_state(lat, rng)
    lhs = inner(apply_conjugation(phi, side), apply_conjugation(psi, side))
    return abs(lhs - np.conj(inner(phi, psi))) / (norm(phi) * norm(psi))


def check_involution(lat: Lattice, rng: np.random.Generator, side: str = "right") -> float:
    phi = random_state(lat, rng)
    return norm(apply_conjugation(apply_conjugation(phi, side), side) - phi) / norm(phi)


def _translation_phase(lat: Lattice, a_plus: float, a_minus: float, a_hat: Sequence[float]) -> np.ndarray:
    p = lat.pplus[:, None]
    hat = np.array([[float(x) for x in q] for q in lat.phat]) if lat.sf.d > 2 else np.zeros((1, 0))
    s = np.sum(hat**2, axis=1)[None, :] + float(lat.sf.m2)
    pminus = s / p
    dot = (hat @ np.asarray(a_hat, dtype=float))[None, :] if lat.sf.d > 2 else 0.0
    return np.exp(1j * (0.5 * p * a_minus + 0.5 * pminus * a_plus - dot))


def check_borchers(lat: Lattice, rng: np.random.Generator, a: Sequence[float], k: int) -> float:
    """``|| delta^{it} T(a) phi - T(Lambda(t) a) delta^{it} phi || / || phi ||`` with ``t = k h / 2 pi``.

    ``Lambda(t)`` rescales ``a+ -> exp(-kh) a+`` and ``a- -> exp(kh) a-``.
    """
    a = [float(x) for x in a]
    a_plus, a_minus, a_hat = a[0] + a[1], a[0] - a[1], a[2:]
    lam = math.exp(k * lat.h)
    phi = random_state(lat, rng)
    T = _translation_phase(lat, a_plus, a_minus, a_hat)
    T_boosted = _translation_phase(lat, a_plus / lam, a_minus * lam, a_hat)
    lhs = apply_flow(LatticeState(T * phi.values, lat), k)
    rhs = LatticeState(T_boosted * apply_flow(phi, k).values, lat)
    return norm(lhs - rhs) / norm(phi)


def closed_form_vector(m2: float, a: float, b: float) -> Callable:
    """``phi(p+, phat) = exp(i a p+ - i b (phat^2 + m^2)/p+) exp(-phat^2)``, analytic for Im p+ > 0."""

    def phi(pplus, phat2):
        return np.exp(1j * a * pplus - 1j * b * (phat2 + m2) / pplus) * np.exp(-phat2)

    return phi


S_PHAT_AXIS = tuple(Fraction(k, 4) for k in (-7, -5, -3, -1, 1, 3, 5, 7))


@dataclass(frozen=True)
class IdentityCheck:
    max_error: float
    points: int
    excluded: int


def check_s_identity(sf: ShellForm, vectors: Sequence[Tuple[float, float]] = ((1.0, 0.5), (0.3, 2.0)),
                     n_plus: int = 64, tol: float = DEFAULT_TOL) -> IdentityCheck:
    """Compare ``j (delta^{1/2} phi)`` with ``s phi = conj(phi(-p+, -phat))`` on closed-form vectors."""
    pplus = np.exp(np.linspace(math.log(1 / 16), math.log(16), n_plus))
    phats = [()] if sf.d == 2 else list(product(S_PHAT_AXIS, repeat=sf.d - 2))
    worst, count, excluded = 0.0, 0, 0
    m2 = float(sf.m2)
    for q in phats:
        fe, fe_m = factor_pair(sf, q, tol)
        phat2 = float(sum(x * x for x in q))
        zeros = [abs(r) for r in fe.real_zeros() + fe_m.real_zeros() if r != 0]
        keep = np.ones(n_plus, dtype=bool)
        for r in zeros:
            keep &= np.abs(pplus - r) / r > ROOT_PROXIMITY
        p = pplus[keep]
        excluded += int(np.sum(~keep))
        kappa = eval_F(fe, -p) / eval_F(fe, p)          # j-prefactor at phat
        kappa_m = eval_F(fe_m, -p) / eval_F(fe_m, p)    # j-prefactor at -phat
        for a, b in vectors:
            phi = closed_form_vector(m2, a, b)
            # delta^{1/2} phi at -phat, by continuation p+ -> -p+
            half_m = kappa_m * phi(-p, phat2)
            lhs = kappa * np.conj(half_m)
            rhs = np.conj(phi(-p, phat2))
            err = np.abs(lhs - rhs) / np.abs(rhs)
            worst = max(worst, float(np.max(err, initial=0.0)))
            count += len(p)
    return IdentityCheck(worst, count, excluded)


@dataclass(frozen=True)
class EquivalenceCheck:
    """Per-phat comparison of ``j_R == j_L`` against the exact all-real certificate."""

    agree: int
    disagree: List[str]
    all_real_points: int
    complex_points: int

    @property
    def passed(self) -> bool:
        return not self.disagree


def check_duality_equivalence(lat: Lattice, tol: float = J_EQUAL_TOL, root_tol: float = DEFAULT_TOL) -> EquivalenceCheck:
    with np.errstate(divide="ignore", invalid="ignore"):
        jr = lat.Fm / lat.Fp
        jl = lat.Fp[:, lat.neg] / lat.Fm[:, lat.neg]
        dev = np.abs(jr - jl) / np.abs(jr)
    agree, disagree, n_real, n_cplx = 0, [], 0, 0
    for j, q in enumerate(lat.phat):
        if not lat.active[j]:
            continue
        fe = lat.factors[j]
        keep = np.ones(len(lat.pplus), dtype=bool)
        for r in fe.real_zeros() + lat.factors[lat.neg[j]].real_zeros():
            if r != 0:
                keep &= np.abs(lat.pplus - abs(r)) / abs(r) > ROOT_PROXIMITY
        equal = bool(np.all(dev[keep, j] <= tol))
        prof = root_profile(lat.sf, q, root_tol)
        certified_real = prof.sturm_all_real
        n_real += bool(certified_real)
        n_cplx += not certified_real
        if equal == certified_real:
            agree += 1
        else:
            disagree.append(f"phat={_fmt(q)}: j_R==j_L is {equal}, Sturm all-real is {certified_real}")
    return EquivalenceCheck(agree, disagree, n_real, n_cplx)
