"""Verdict engine: wedge duality, local modular action, Lorentz covariance and CGMA.

A wedge frame ``L`` stands for the wedge ``L W_R``.  Its modular objects are
those of the standard right wedge for the transformed weight
``M_L(p) = M(L^{-1} p)``, so every frame is analyzed through the shell form of
``M_L``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

from gffmod.lorentz import DEFAULT_ORBIT_DEPTH, LorentzTransform, orbit
from gffmod.model import Component, FieldModel
from gffmod.poly import Polynomial, apply_linear, is_constant_on_shell
from gffmod.roots import DEFAULT_TOL, PairingError, RootFindingError, classify, find_roots, format_complex, sturm_real_count
from gffmod.shell import ShellForm, instantiate, phat_samples, to_shell_form

__all__ = [
    "Verdict",
    "CovarianceVerdict",
    "Consistency",
    "VerdictReport",
    "frame_orbit",
    "duality_verdict",
    "local_action_verdict",
    "covariance_verdict",
    "covariance_and_cgma_verdict",
    "cross_check",
    "linear_power_form",
    "CGMA_CAVEAT",
]

CGMA_CAVEAT = (
    "holds if duality holds for all wedges; the minimal net is then not Lorentz covariant, "
    "only the maximal net is"
)


def _fmt_vec(v: Sequence) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


@dataclass
class Verdict:
    """``holds`` or ``fails``; ``basis`` says how the answer was reached."""

    status: str
    basis: str
    witness: Optional[Dict[str, Any]] = None
    notes: List[str] = field(default_factory=list)
    stats: Dict[str, Any] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.status == "holds"

    @property
    def label(self) -> str:
        return f"{self.status}({self.basis})"

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"status": self.status, "basis": self.basis}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.stats:
            out["stats"] = self.stats
        out["notes"] = list(self.notes)
        return out


@dataclass
class CovarianceVerdict:
    constant: bool
    values: List[Optional[str]]
    witness: Optional[Dict[str, Any]] = None

    @property
    def holds(self) -> bool:
        return self.constant

    @property
    def label(self) -> str:
        if self.constant:
            return "constant(" + ", ".join(str(v) for v in self.values) + ")"
        return "nonconstant"

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"status": "constant" if self.constant else "nonconstant", "values": list(self.values)}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class Consistency:
    checked: bool
    consistent: bool
    detail: str

    def to_dict(self) -> Dict[str, Any]:
        return {"checked": self.checked, "consistent": self.consistent, "detail": self.detail}


@dataclass
class VerdictReport:
    duality: Verdict
    local_action: Verdict
    lorentz_covariance: CovarianceVerdict
    cgma: Verdict
    consistency: Consistency
    notes: List[str] = field(default_factory=list)

    def summary(self) -> Dict[str, str]:
        return {
            "duality": self.duality.status,
            "local_action": self.local_action.status,
            "lorentz_covariance": "constant" if self.lorentz_covariance.constant else "nonconstant",
            "cgma": self.cgma.status,
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            "duality": self.duality.to_dict(),
            "local_action": self.local_action.to_dict(),
            "lorentz_covariance": self.lorentz_covariance.to_dict(),
            "cgma": self.cgma.to_dict(),
            "consistency": self.consistency.to_dict(),
            "notes": list(self.notes),
        }


# -- frames -------------------------------------------------------------------


@lru_cache(maxsize=None)
def _orbit_cached(d: int, depth: int) -> Tuple[LorentzTransform, ...]:
    return tuple(orbit(d, depth))


def frame_orbit(d: int, depth: int = DEFAULT_ORBIT_DEPTH) -> Tuple[LorentzTransform, ...]:
    """Wedge frames examined by the orbit searches, identity first."""
    return _orbit_cached(d, depth)


def _frame_info(index: int, L: LorentzTransform) -> Dict[str, Any]:
    return {"frame_index": index, "frame": "identity" if L.is_identity() else L.to_strings()}


def _frame_shell_form(comp: Component, L: LorentzTransform) -> ShellForm:
    M = comp.M if L.is_identity() else apply_linear(comp.M, L)
    return to_shell_form(M, comp.mass2)


class _FrameForms:
    """Lazily computed shell forms per (component, frame)."""

    def __init__(self, model: FieldModel, depth: int):
        self.model = model
        self.depth = depth
        self.frames = frame_orbit(model.dimension, depth)
        self._cache: Dict[Tuple[int, int], ShellForm] = {}

    def get(self, ci: int, fi: int) -> ShellForm:
        key = (ci, fi)
        if key not in self._cache:
            self._cache[key] = _frame_shell_form(self.model.components[ci], self.frames[fi])
        return self._cache[key]


# -- linear powers (a.p)^(2n) ---------------------------------------------------


def linear_power_form(M: Polynomial) -> Optional[Tuple[Tuple[Fraction, ...], int, Fraction]]:
    """Write ``M = c (a.p)^k`` with Minkowski product ``a.p = a0 p0 - sum a_i p_i``, or None."""
    deg = M.total_degree()
    if M.is_zero() or deg < 2 or any(sum(e) != deg for e in M.terms):
        return None
    d = M.nvars
    k = next(
        (i for i in range(d) if M.terms.get(tuple(deg if j == i else 0 for j in range(d)), 0) != 0),
        None,
    )
    if k is None:
        return None
    D = M
    for _ in range(deg - 1):
        D = D.derivative(k)
    lin = [D.terms.get(tuple(1 if j == i else 0 for j in range(d)), Fraction(0)) for i in range(d)]
    b = [x / lin[k] for x in lin]
    c = M.terms[tuple(deg if j == k else 0 for j in range(d))]
    ell = Polynomial(d, {tuple(1 if j == i else 0 for j in range(d)): b[i] for i in range(d) if b[i]})
    if (ell**deg).scale(c) != M:
        return None
    a = (b[0],) + tuple(-x for x in b[1:])
    return a, deg, c


def _minkowski_square(a: Sequence[Fraction]) -> Fraction:
    return a[0] * a[0] - sum(x * x for x in a[1:])


def _discriminant_note(comp: Component, d: int, ci: int) -> Optional[str]:
    if not (d == 2 or (d == 3 and comp.mass2 == 0)):
        return None
    form = linear_power_form(comp.M)
    if form is None:
        return None
    a, k, _ = form
    aa = _minkowski_square(a)
    where = f"component {ci}: M = c (a.p)^{k}, a={_fmt_vec(a)}, a.a={aa}"
    if aa <= 0:
        return f"{where}; a is space-like or light-like, so the discriminant -(a.a) is nonnegative and all zeros are real in every frame"
    return f"{where}; a is time-like, so complex zeros occur"


# -- duality ------------------------------------------------------------------------


def _duality_witness(sf: ShellForm, phat, tol: float) -> Optional[Dict[str, Any]]:
    inst = instantiate(sf, phat)
    real, deg = sturm_real_count(inst.coeffs)
    if real == deg:
        return None
    info: Dict[str, Any] = {"phat": [str(x) for x in inst.phat], "sturm": [real, deg]}
    try:
        prof = classify(find_roots(inst.coeffs), tol, inst.phat)
        root = prof.witness
    except (RootFindingError, PairingError):
        root = None
    if root is None:
        root = next(z for z in find_roots(inst.coeffs) if abs(z.imag) > 0)
        root = root if root.imag > 0 else root.conjugate()
    info["root"] = format_complex(root)
    info["root_value"] = [float(f"{root.real:.12g}"), float(f"{root.imag:.12g}")]
    return info


def _duality(model: FieldModel, forms: _FrameForms, seed: int, tol: float,
             constancy: List[bool]) -> Verdict:
    notes: List[str] = []
    d = model.dimension
    for ci, comp in enumerate(model.components):
        note = _discriminant_note(comp, d, ci)
        if note:
            notes.append(note)
    if all(constancy):
        return Verdict(
            "holds",
            "certified",
            notes=notes + ["M is constant on every mass shell, so Q has no zeros in any wedge frame"],
        )
    samples = phat_samples(d, seed)
    examined = degenerate = 0
    for ci in range(len(model.components)):
        for fi, L in enumerate(forms.frames):
            sf = forms.get(ci, fi)
            for phat in samples:
                inst = instantiate(sf, phat)
                if inst.degenerate:
                    degenerate += 1
                    continue
                examined += 1
                w = _duality_witness(sf, phat, tol)
                if w is not None:
                    witness = {"component": ci, **_frame_info(fi, L), **w}
                    return Verdict("fails", "certified", witness, notes,
                                   {"instances": examined, "degenerate": degenerate})
    notes.append(f"no witness at depth {forms.depth} ({len(forms.frames)} frames x {len(samples)} phat samples); "
                 "this is not a proof of duality")
    return Verdict("holds", "sampled", None, notes,
                   {"frames": len(forms.frames), "phat_samples": len(samples),
                    "instances": examined, "degenerate": degenerate})


def duality_verdict(model: FieldModel, depth: int = DEFAULT_ORBIT_DEPTH, seed: int = 0, tol: float = DEFAULT_TOL) -> Verdict:
    """Wedge duality for all wedges in the orbit, with a Sturm-certified witness on failure."""
    consts = [is_constant_on_shell(c.M, c.mass2).constant for c in model.components]
    return _duality(model, _FrameForms(model, depth), seed, tol, consts)


# -- local action ---------------------------------------------------------------------


def _local_action(model: FieldModel, forms: _FrameForms, constancy: List[bool]) -> Verdict:
    right = all(forms.get(ci, 0).is_pplus_monomial() for ci in range(len(model.components)))
    stats = {"right_wedge": "holds" if right else "fails"}
    if all(constancy):
        return Verdict("holds", "certified", None, ["M is constant on every mass shell"], stats)
    for ci in range(len(model.components)):
        for fi, L in enumerate(forms.frames):
            sf = forms.get(ci, fi)
            if not sf.is_pplus_monomial():
                witness = {"component": ci, **_frame_info(fi, L),
                           "pplus_exponents": sf.pplus_exponents(), "Q": str(sf.Q)}
                return Verdict("fails", "certified", witness, [], stats)
    stats["frames"] = len(forms.frames)
    return Verdict("holds", "sampled", None,
                   [f"Q is a p+ monomial in all {len(forms.frames)} frames examined"], stats)


def local_action_verdict(model: FieldModel, depth: int = DEFAULT_ORBIT_DEPTH) -> Verdict:
    """Geometric modular action: ``Q_L = p+^k C(phat)`` in every frame ``L`` of the orbit."""
    consts = [is_constant_on_shell(c.M, c.mass2).constant for c in model.components]
    return _local_action(model, _FrameForms(model, depth), consts)


# -- covariance, CGMA and consistency -------------------------------------------------


def covariance_verdict(model: FieldModel) -> CovarianceVerdict:
    values: List[Optional[str]] = []
    witness = None
    for ci, comp in enumerate(model.components):
        res = is_constant_on_shell(comp.M, comp.mass2)
        values.append(str(res.value) if res.constant else None)
        if not res.constant and witness is None:
            witness = {"component": ci, "nonconstant_part": str(res.witness)}
    return CovarianceVerdict(witness is None, values, witness)


def cross_check(model: FieldModel, report: VerdictReport) -> Consistency:
    """Recompute the equivalence cross-check from the four verdicts of ``report``."""
    return _consistency(model, report.duality, report.local_action, report.lorentz_covariance, report.cgma)


def _consistency(model: FieldModel, dual: Verdict, local: Verdict, cov: CovarianceVerdict, cgma: Verdict) -> Consistency:
    if not model.equivalence_regime:
        return Consistency(False, True, "equivalence not asserted outside d >= 4 and massive d = 3")
    values = {"duality": dual.holds, "local_action": local.holds, "lorentz_covariance": cov.holds, "cgma": cgma.holds}
    if len(set(values.values())) == 1:
        return Consistency(True, True, "all four verdicts agree")
    parts = ", ".join(f"{k}={'holds' if v else 'fails'}" for k, v in values.items())
    return Consistency(True, False, f"internal error: verdicts disagree ({parts})")


def covariance_and_cgma_verdict(model: FieldModel, depth: int = DEFAULT_ORBIT_DEPTH, seed: int = 0,
                                tol: float = DEFAULT_TOL) -> VerdictReport:
    """All four verdicts plus the cross-check of their equivalence."""
    forms = _FrameForms(model, depth)
    cov = covariance_verdict(model)
    consts = [v is not None for v in cov.values]
    dual = _duality(model, forms, seed, tol, consts)
    local = _local_action(model, forms, consts)
    notes: List[str] = []
    d = model.dimension
    if model.equivalence_regime:
        cgma = Verdict("holds" if cov.constant else "fails", "certified",
                       notes=["equal to the Lorentz covariance verdict in this dimension"])
    else:
        cgma = Verdict(dual.status, "conditional", dual.witness, [CGMA_CAVEAT])
        notes.append(f"d={d}" + ("" if d == 2 else " massless") +
                     ": duality, covariance and CGMA are not equivalent here; " + CGMA_CAVEAT)
        if d == 2 and any(c.mass2 == 0 for c in model.components):
            notes.append("d=2 with a massless component is not covered by the equivalence cross-check")
    consistency = _consistency(model, dual, local, cov, cgma)
    return VerdictReport(dual, local, cov, cgma, consistency, notes)
