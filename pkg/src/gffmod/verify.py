"""Numerical identity suite for a field model, run component by component."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Sequence

import numpy as np

from gffmod.factor import SYMMETRY_TOL, FactorError, check_symmetry, factor_pair, reconstruction_error
from gffmod.model import FieldModel
from gffmod.modular import (
    BORCHERS_TOL,
    DEFAULT_NPLUS,
    FLOW_TOL,
    J_EQUAL_TOL,
    S_IDENTITY_TOL,
    Lattice,
    build_lattice,
    check_antiunitarity,
    check_borchers,
    check_duality_equivalence,
    check_flow_unitarity,
    check_group_law,
    check_involution,
    check_s_identity,
)
from gffmod.roots import DEFAULT_TOL
from gffmod.shell import phat_samples, to_shell_form

__all__ = ["SuiteConfig", "CheckResult", "run_suite", "round_sig", "FLOW_KS", "GROUP_LAW_TOL", "WEIGHT_TOL"]

FLOW_KS = (1, -1, 7, -16, 64, -64)
GROUP_LAW_PAIRS = ((5, 11), (-20, 33))
GROUP_LAW_TOL = 1e-12
WEIGHT_TOL = 1e-12


def round_sig(x: float, digits: int = 4) -> float:
    """Round to a few significant digits so reports are stable to last-bit noise."""
    return float(f"{x:.{digits - 1}e}")


@dataclass(frozen=True)
class SuiteConfig:
    cluster_tol: float = DEFAULT_TOL
    symmetry_tol: float = SYMMETRY_TOL
    flow_tol: float = FLOW_TOL
    s_identity_tol: float = S_IDENTITY_TOL
    borchers_tol: float = BORCHERS_TOL
    j_equal_tol: float = J_EQUAL_TOL
    n_plus: int = DEFAULT_NPLUS

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    tolerance: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return bool(self.value <= self.tolerance)

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"value": round_sig(self.value), "tolerance": self.tolerance, "passed": self.passed}
        if self.detail:
            out["detail"] = self.detail
        return out


def _borchers_vectors(d: int) -> List[List[float]]:
    a1 = [0.0, 1.0] + [0.0] * (d - 2)
    a2 = [0.5, -0.25] + [0.3 * (i + 1) for i in range(d - 2)]
    return [a1, a2]


def _factor_checks(model: FieldModel, ci: int, seed: int, cfg: SuiteConfig) -> List[CheckResult]:
    comp = model.components[ci]
    sf = to_shell_form(comp.M, comp.mass2)
    grid = np.concatenate([np.exp(np.linspace(-3, 3, 32)), -np.exp(np.linspace(-3, 3, 32))])
    sym = rec = upper = 0.0
    skipped = 0
    for phat in phat_samples(model.dimension, seed):
        try:
            fe, fe_m = factor_pair(sf, phat, cfg.cluster_tol)
        except FactorError:
            skipped += 1
            continue
        sym = max(sym, check_symmetry(fe, fe_m, grid[:32], cfg.symmetry_tol).max_deviation)
        rec = max(rec, reconstruction_error(sf, fe, fe_m, grid))
        upper = max([upper] + [z.imag for z in fe.lower_factors])
    note = f"{skipped} degenerate phat samples skipped" if skipped else ""
    return [
        CheckResult("factor_symmetry", sym, cfg.symmetry_tol, note),
        CheckResult("factor_reconstruction", rec, cfg.symmetry_tol, note),
        CheckResult("factor_zeros_in_lower_half_plane", max(upper, 0.0), 0.0, note),
    ]


def _lattice_checks(lat: Lattice, model: FieldModel, seed: int, cfg: SuiteConfig) -> List[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []
    for side in ("right", "left"):
        out.append(CheckResult(f"flow_unitarity_{side}", check_flow_unitarity(lat, rng, FLOW_KS, side), cfg.flow_tol,
                               f"k in {list(FLOW_KS)}"))
    gl = max(check_group_law(lat, rng, k, l) for k, l in GROUP_LAW_PAIRS)
    out.append(CheckResult("flow_group_law", gl, GROUP_LAW_TOL))
    for side in ("right", "left"):
        out.append(CheckResult(f"conjugation_antiunitarity_{side}", check_antiunitarity(lat, rng, side), cfg.flow_tol))
        out.append(CheckResult(f"conjugation_involution_{side}", check_involution(lat, rng, side), cfg.flow_tol))
    b = max(check_borchers(lat, rng, a, k) for a in _borchers_vectors(model.dimension) for k in (5, -9))
    out.append(CheckResult("borchers_commutation", b, cfg.borchers_tol))
    w = lat.weight
    scale = float(np.max(np.abs(w))) or 1.0
    out.append(CheckResult("weight_positivity", max(0.0, -float(np.min(w)) / scale), WEIGHT_TOL))
    eq = check_duality_equivalence(lat, cfg.j_equal_tol, cfg.cluster_tol)
    detail = f"{eq.agree} phat columns agree ({eq.all_real_points} all real, {eq.complex_points} complex)"
    if eq.disagree:
        detail += "; " + "; ".join(eq.disagree[:3])
    out.append(CheckResult("jR_equals_jL_iff_all_real", float(len(eq.disagree)), 0.0, detail))
    return out


def run_suite(model: FieldModel, seed: int = 0, cfg: SuiteConfig = SuiteConfig(),
              components: Sequence[int] | None = None) -> Dict[str, Any]:
    """Run every identity check; returns a JSON-ready dict with an overall ``passed`` flag."""
    results = []
    for ci in components if components is not None else range(len(model.components)):
        comp = model.components[ci]
        sf = to_shell_form(comp.M, comp.mass2)
        checks = _factor_checks(model, ci, seed, cfg)
        lat = build_lattice(sf, n_plus=cfg.n_plus, tol=cfg.cluster_tol)
        checks += _lattice_checks(lat, model, seed, cfg)
        s = check_s_identity(sf, tol=cfg.cluster_tol)
        checks.append(CheckResult("s_identity", s.max_error, cfg.s_identity_tol,
                                  f"{s.points} points, {s.excluded} excluded near real zeros"))
        results.append({
            "component": ci,
            "passed": all(c.passed for c in checks),
            "checks": {c.name: c.to_dict() for c in checks},
            "lattice": {"n_plus": len(lat.pplus), "p_min": round_sig(float(lat.pplus[0]), 6),
                        "h": round_sig(lat.h, 6), "phat_points": len(lat.phat),
                        "excluded_phat": int(np.sum(~lat.active))},
            "warnings": list(lat.warnings),
        })
    return {"passed": all(r["passed"] for r in results), "components": results}
