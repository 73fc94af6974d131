"""Analysis reports: assembly, JSON serialization and the text summary."""

from __future__ import annotations

import json
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from gffmod import __version__
from gffmod.factor import FactorError, check_symmetry, eval_F, factor_pair
from gffmod.lorentz import DEFAULT_ORBIT_DEPTH
from gffmod.model import FieldModel
from gffmod.modular import (
    ModularError,
    build_lattice,
    check_antiunitarity,
    check_duality_equivalence,
    check_flow_unitarity,
    check_group_law,
    check_involution,
    delta_prefactor,
    j_prefactor,
)
from gffmod.roots import PairingError, RootFindingError, format_complex, root_profile
from gffmod.shell import ShellForm, instantiate, phat_samples, to_shell_form
from gffmod.verdicts import VerdictReport, covariance_and_cgma_verdict, duality_verdict
from gffmod.verify import SuiteConfig, round_sig, run_suite

__all__ = [
    "REPORT_SCHEMA",
    "NORMALIZATION_NOTE",
    "check_report",
    "factor_report",
    "flow_report",
    "conjugate_report",
    "verify_report",
    "orbit_duality_report",
    "render_text",
    "to_json",
    "emit",
]

REPORT_SCHEMA = "gffmod.report/1"

NORMALIZATION_NOTE = (
    "F normalization: F = c (i p+)^(-n) prod(p+ - rho) with c = sqrt(lead Q), times i when F has an odd "
    "number of zeros, so that F(p+,phat) F(-p+,-phat) = p+^(-2n) Q. For M = p0^2 this gives "
    "F = (2 i p+)^(-1) (p+ + i sqrt(phat^2+m^2))^2; the variant with prefactor (2 i p+)^(-2) does not "
    "reconstruct M on the shell."
)


def _fmt_vec(v: Sequence) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def _cnum(z: complex) -> List[float]:
    return [round_sig(z.real, 12) if z.real else 0.0, round_sig(z.imag, 12) if z.imag else 0.0]


def _header(model: FieldModel, command: str, options: Dict[str, Any]) -> Dict[str, Any]:
    return {
        "schema": REPORT_SCHEMA,
        "command": command,
        "tool": {"name": "gffmod", "version": __version__},
        "options": options,
        "model": model.to_dict(),
    }


def _shell_summary(sf: ShellForm) -> Dict[str, Any]:
    return {"n": sf.n, "Q": str(sf.Q), "pplus_degree": sf.degree, "pplus_exponents": sf.pplus_exponents()}


def _root_grid(sf: ShellForm, d: int, seed: int, tol: float, warnings: List[str], ci: int) -> Dict[str, Any]:
    counts = {"all_real": 0, "has_complex": 0, "degenerate": 0, "unclassified": 0}
    first = None
    degenerate = []
    samples = phat_samples(d, seed)
    for phat in samples:
        try:
            prof = root_profile(sf, phat, tol)
        except (PairingError, RootFindingError) as exc:
            counts["unclassified"] += 1
            warnings.append(f"component {ci}: phat={_fmt_vec(phat)} unclassified: {exc}")
            continue
        if prof.degenerate:
            counts["degenerate"] += 1
            degenerate.append(_fmt_vec(phat))
            continue
        real = prof.sturm_all_real if prof.certified else prof.all_real
        counts["all_real" if real else "has_complex"] += 1
        if not real and first is None:
            first = {"phat": [str(x) for x in prof.phat], "root": format_complex(prof.witness)}
        for note in prof.notes:
            warnings.append(f"component {ci}: phat={_fmt_vec(phat)}: {note}")
    if degenerate:
        shown = ", ".join(degenerate[:5]) + (" ..." if len(degenerate) > 5 else "")
        warnings.append(f"component {ci}: {len(degenerate)} degenerate phat samples (leading coefficient vanishes): {shown}")
    out: Dict[str, Any] = {"samples": len(samples), **counts}
    if first is not None:
        out["first_complex"] = first
    return out


def _components(model: FieldModel, seed: int, tol: float, warnings: List[str]) -> List[Dict[str, Any]]:
    out = []
    for ci, comp in enumerate(model.components):
        sf = to_shell_form(comp.M, comp.mass2)
        out.append({
            "index": ci,
            **comp.to_dict(),
            "shell_form": _shell_summary(sf),
            "root_grid": _root_grid(sf, model.dimension, seed, tol, warnings, ci),
        })
    return out


def check_report(model: FieldModel, seed: int = 0, depth: int = DEFAULT_ORBIT_DEPTH,
                 cfg: SuiteConfig = SuiteConfig(), verdicts: Optional[VerdictReport] = None) -> Dict[str, Any]:
    """Full pipeline: shell forms, root grid, verdicts, consistency and numerical suite."""
    warnings: List[str] = [NORMALIZATION_NOTE]
    report = _header(model, "check", {"seed": seed, "depth": depth, "config": cfg.to_dict()})
    vr = verdicts if verdicts is not None else covariance_and_cgma_verdict(model, depth, seed, cfg.cluster_tol)
    report["summary"] = vr.summary()
    report["components"] = _components(model, seed, cfg.cluster_tol, warnings)
    report["verdicts"] = vr.to_dict()
    suite = run_suite(model, seed, cfg)
    report["numerical_suite"] = suite
    for comp in suite["components"]:
        warnings.extend(f"component {comp['component']}: {w}" for w in comp["warnings"])
    report["warnings"] = warnings
    return report


def _default_phat(d: int) -> tuple:
    return tuple("0" for _ in range(d - 2))


def factor_report(model: FieldModel, phat: Optional[Sequence] = None, cfg: SuiteConfig = SuiteConfig()) -> Dict[str, Any]:
    phat = tuple(phat) if phat is not None else _default_phat(model.dimension)
    report = _header(model, "factor", {"phat": [str(x) for x in phat], "config": cfg.to_dict()})
    warnings: List[str] = [NORMALIZATION_NOTE]
    comps = []
    for ci, comp in enumerate(model.components):
        sf = to_shell_form(comp.M, comp.mass2)
        inst = instantiate(sf, phat)
        entry: Dict[str, Any] = {"index": ci, "shell_form": _shell_summary(sf),
                                 "coefficients": [str(c) for c in inst.coeffs]}
        if inst.degenerate:
            entry["classification"] = "degenerate"
            warnings.append(f"component {ci}: leading coefficient of Q vanishes at phat={_fmt_vec(inst.phat)}")
            comps.append(entry)
            continue
        prof = root_profile(sf, phat, cfg.cluster_tol)
        entry["roots"] = [{"value": format_complex(z), "multiplicity": k} for z, k in prof.roots]
        entry["classification"] = prof.classification
        if prof.sturm is not None:
            entry["sturm"] = {"distinct_real": prof.sturm[0], "squarefree_degree": prof.sturm[1]}
        try:
            fe, fe_m = factor_pair(sf, phat, cfg.cluster_tol)
        except FactorError as exc:
            warnings.append(f"component {ci}: {exc}")
            comps.append(entry)
            continue
        samples = np.exp(np.linspace(-3, 3, 64))
        entry["F"] = {
            "n": fe.n,
            "scalar": format_complex(fe.scalar),
            "lower_zeros": [format_complex(z) for z in fe.lower_factors],
            "values": {str(p): format_complex(eval_F(fe, p)) for p in (1, 2)},
            "symmetry_deviation": round_sig(check_symmetry(fe, fe_m, samples).max_deviation),
        }
        comps.append(entry)
    report["components"] = comps
    report["warnings"] = warnings
    return report


def _probe_column(lat) -> int:
    # the phat = 0 column when active, else the first active one
    zero = tuple(0 for _ in range(lat.sf.d - 2))
    for j, q in enumerate(lat.phat):
        if lat.active[j] and tuple(q) == zero:
            return j
    return int(np.flatnonzero(lat.active)[0])


def flow_report(model: FieldModel, k: int, seed: int = 0, cfg: SuiteConfig = SuiteConfig()) -> Dict[str, Any]:
    report = _header(model, "flow", {"k": k, "seed": seed, "config": cfg.to_dict()})
    warnings: List[str] = []
    comps = []
    for ci, comp in enumerate(model.components):
        sf = to_shell_form(comp.M, comp.mass2)
        lat = build_lattice(sf, n_plus=cfg.n_plus, tol=cfg.cluster_tol)
        n = len(lat.pplus)
        if abs(k) >= n:
            raise ValueError(f"|k| must be smaller than {n}")
        rng = np.random.default_rng(seed)
        margin = n // 4 + 1
        if abs(k) > n - 2 * margin:
            warnings.append(f"component {ci}: |k|={abs(k)} moves interior states off the grid; norms are truncated")
        t = k * lat.h / (2 * math.pi)
        j = _probe_column(lat)
        fe = lat.factors[j]
        fe_m = lat.factors[int(lat.neg[j])]
        entry = {
            "index": ci,
            "t": round_sig(t, 12),
            "lambda": round_sig(math.exp(k * lat.h), 12),
            "unitarity_right": round_sig(check_flow_unitarity(lat, rng, [k], "right")),
            "unitarity_left": round_sig(check_flow_unitarity(lat, rng, [k], "left")),
            "group_law": round_sig(check_group_law(lat, rng, k, k) if abs(2 * k) < n else 0.0),
            "prefactor_at": {"pplus": 1, "phat": [str(x) for x in lat.phat[j]]},
        }
        try:
            entry["prefactor_right"] = _cnum(complex(delta_prefactor(fe, t, 1.0, "right")))
            entry["prefactor_left"] = _cnum(complex(delta_prefactor(fe, t, 1.0, "left", fe_m)))
        except ModularError as exc:
            warnings.append(f"component {ci}: {exc}")
        warnings.extend(f"component {ci}: {w}" for w in lat.warnings)
        comps.append(entry)
    report["components"] = comps
    report["warnings"] = warnings
    return report


def conjugate_report(model: FieldModel, seed: int = 0, cfg: SuiteConfig = SuiteConfig()) -> Dict[str, Any]:
    report = _header(model, "conjugate", {"seed": seed, "config": cfg.to_dict()})
    warnings: List[str] = []
    comps = []
    for ci, comp in enumerate(model.components):
        sf = to_shell_form(comp.M, comp.mass2)
        lat = build_lattice(sf, n_plus=cfg.n_plus, tol=cfg.cluster_tol)
        rng = np.random.default_rng(seed)
        eq = check_duality_equivalence(lat, cfg.j_equal_tol, cfg.cluster_tol)
        j = _probe_column(lat)
        fe, fe_m = lat.factors[j], lat.factors[int(lat.neg[j])]
        entry: Dict[str, Any] = {"index": ci}
        for side in ("right", "left"):
            entry[f"antiunitarity_{side}"] = round_sig(check_antiunitarity(lat, rng, side))
            entry[f"involution_{side}"] = round_sig(check_involution(lat, rng, side))
        entry["jR_equals_jL"] = {"agree": eq.agree, "disagree": eq.disagree,
                                 "all_real_columns": eq.all_real_points, "complex_columns": eq.complex_points}
        try:
            entry["prefactors"] = {
                "phat": [str(x) for x in lat.phat[j]],
                "right": {str(p): _cnum(complex(j_prefactor(fe, fe_m, float(p), "right"))) for p in (1, 2)},
                "left": {str(p): _cnum(complex(j_prefactor(fe, fe_m, float(p), "left"))) for p in (1, 2)},
            }
        except ModularError as exc:
            warnings.append(f"component {ci}: {exc}")
        warnings.extend(f"component {ci}: {w}" for w in lat.warnings)
        comps.append(entry)
    report["components"] = comps
    report["warnings"] = warnings
    return report


def verify_report(model: FieldModel, seed: int = 0, cfg: SuiteConfig = SuiteConfig()) -> Dict[str, Any]:
    report = _header(model, "verify", {"seed": seed, "config": cfg.to_dict()})
    suite = run_suite(model, seed, cfg)
    report["numerical_suite"] = suite
    report["warnings"] = [f"component {c['component']}: {w}" for c in suite["components"] for w in c["warnings"]]
    return report


def orbit_duality_report(model: FieldModel, depth: int = DEFAULT_ORBIT_DEPTH, seed: int = 0,
                         cfg: SuiteConfig = SuiteConfig()) -> Dict[str, Any]:
    report = _header(model, "orbit-duality", {"seed": seed, "depth": depth, "config": cfg.to_dict()})
    v = duality_verdict(model, depth, seed, cfg.cluster_tol)
    report["summary"] = {"duality": v.status}
    report["duality"] = v.to_dict()
    report["warnings"] = []
    return report


# -- output -----------------------------------------------------------------------------


_TABLE_ROWS = ("duality", "local_action", "lorentz_covariance", "cgma")


def _verdict_table(report: Dict[str, Any]) -> List[str]:
    v = report["verdicts"]
    lines = []
    for name in _TABLE_ROWS:
        entry = v[name]
        if name == "lorentz_covariance":
            status = "holds" if entry["status"] == "constant" else "fails"
            detail = entry["status"]
            if entry["status"] == "constant":
                detail += "(" + ", ".join(entry["values"]) + ")"
        else:
            status, detail = entry["status"], entry["basis"]
        lines.append(f"{name:<20}{status:<7}{detail}")
    return lines


def _render_value(key: str, value: Any, indent: int, out: List[str]) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        out.append(f"{pad}{key}:")
        for k, v in value.items():
            _render_value(str(k), v, indent + 1, out)
    elif isinstance(value, list) and value and any(isinstance(x, (dict, list)) for x in value):
        out.append(f"{pad}{key}:")
        for i, v in enumerate(value):
            _render_value(f"[{i}]", v, indent + 1, out)
    else:
        text = ", ".join(str(x) for x in value) if isinstance(value, list) else str(value)
        out.append(f"{pad}{key}: {text}")


def render_text(report: Dict[str, Any]) -> str:
    """Human summary; for ``check`` it opens with the four-line verdict table."""
    lines: List[str] = []
    if "verdicts" in report:
        lines.extend(_verdict_table(report))
        v = report["verdicts"]
        for name in ("duality", "local_action", "lorentz_covariance"):
            if v[name].get("witness"):
                _render_value(f"{name} witness", v[name]["witness"], 0, lines)
        lines.append(f"consistency: {v['consistency']['detail']}")
        for note in v["notes"] + v["duality"]["notes"]:
            lines.append(f"note: {note}")
        suite = report.get("numerical_suite")
        if suite is not None:
            lines.append(f"numerical suite: {'passed' if suite['passed'] else 'FAILED'}")
            for comp in suite["components"]:
                for name, c in comp["checks"].items():
                    if not c["passed"]:
                        lines.append(f"  component {comp['component']} {name}: {c['value']} > {c['tolerance']}")
    else:
        lines.append(f"command: {report['command']}")
        for key, value in report.items():
            if key in ("schema", "command", "tool", "options", "model", "warnings"):
                continue
            _render_value(key, value, 0, lines)
    for w in report.get("warnings", []):
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"


def to_json(report: Dict[str, Any]) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def emit(report: Dict[str, Any], fmt: str = "json", path: Optional[str | Path] = None) -> None:
    text = to_json(report) if fmt == "json" else render_text(report)
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)
