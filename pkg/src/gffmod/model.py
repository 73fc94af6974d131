"""Field models: dimension plus a discrete Lehmann weight of (weight, m^2, M) components.

Model files are JSON with rationals written as strings::

    {
      "schema": "gffmod.model/1",
      "dimension": 4,
      "components": [{"weight": "1", "mass2": "1", "M": "p0^2"}]
    }

Only finite discrete Lehmann weights can be written down; a continuous
weight has no representation in this format.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Tuple

from gffmod.parser import ParseError, parse
from gffmod.poly import Polynomial, is_even
from gffmod.shell import ShellError, find_negative, to_shell_form

__all__ = ["MODEL_SCHEMA", "ModelError", "Component", "FieldModel", "model_from_dict", "load_model"]

MODEL_SCHEMA = "gffmod.model/1"


class ModelError(ValueError):
    """Model rejected; ``problems`` lists every violated requirement."""

    def __init__(self, problems: List[str]):
        super().__init__("; ".join(problems))
        self.problems = list(problems)


@dataclass(frozen=True)
class Component:
    weight: Fraction
    mass2: Fraction
    M: Polynomial
    source: str = ""

    def to_dict(self) -> Dict[str, str]:
        return {"weight": str(self.weight), "mass2": str(self.mass2), "M": self.source or str(self.M)}


@dataclass(frozen=True)
class FieldModel:
    dimension: int
    components: Tuple[Component, ...]
    name: str = ""

    @property
    def massive(self) -> bool:
        return all(c.mass2 > 0 for c in self.components)

    @property
    def equivalence_regime(self) -> bool:
        """Dimensions where duality, local action, covariance and CGMA must agree."""
        return self.dimension >= 4 or (self.dimension == 3 and self.massive)

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"schema": MODEL_SCHEMA}
        if self.name:
            out["name"] = self.name
        out["dimension"] = self.dimension
        out["components"] = [c.to_dict() for c in self.components]
        return out


def _rational(value: Any, what: str, problems: List[str]) -> Fraction | None:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        problems.append(f"{what}: expected a rational string such as \"3/4\", got {value!r}")
        return None
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError):
        problems.append(f"{what}: malformed rational {value!r}")
        return None


def _fmt_point(pp, phat) -> str:
    return f"p+={pp}, phat=(" + ",".join(str(x) for x in phat) + ")"


def model_from_dict(data: Dict[str, Any]) -> FieldModel:
    problems: List[str] = []
    if not isinstance(data, dict):
        raise ModelError(["schema: top level must be a JSON object"])
    schema = data.get("schema", MODEL_SCHEMA)
    if schema != MODEL_SCHEMA:
        problems.append(f"schema: unsupported schema {schema!r}")
    d = data.get("dimension")
    if isinstance(d, bool) or not isinstance(d, int) or d < 2:
        raise ModelError(problems + [f"dimension: expected an integer >= 2, got {d!r}"])
    comps = data.get("components")
    if not isinstance(comps, list) or not comps:
        raise ModelError(problems + ["components: expected a nonempty list"])
    out = []
    for idx, raw in enumerate(comps):
        where = f"components[{idx}]"
        if not isinstance(raw, dict):
            problems.append(f"{where}: expected an object")
            continue
        missing = [k for k in ("weight", "mass2", "M") if k not in raw]
        if missing:
            problems.append(f"{where}: missing {', '.join(missing)}")
            continue
        w = _rational(raw["weight"], f"{where}.weight", problems)
        m2 = _rational(raw["mass2"], f"{where}.mass2", problems)
        if w is not None and w <= 0:
            problems.append(f"{where}.weight: Lehmann weight must be positive, got {w}")
        if m2 is not None and m2 < 0:
            problems.append(f"{where}.mass2: must be nonnegative, got {m2}")
        src = raw["M"]
        if not isinstance(src, str):
            problems.append(f"{where}.M: expected a polynomial string")
            continue
        try:
            M = parse(src, d)
        except ParseError as exc:
            problems.append(f"{where}.M: {exc}")
            continue
        if not is_even(M):
            problems.append(f"{where}.M: not even (M(-p) != M(p)): {M}")
            continue
        if m2 is None or m2 < 0 or w is None:
            continue
        try:
            sf = to_shell_form(M, m2)
        except ShellError as exc:
            problems.append(f"{where}.M: {exc}")
            continue
        neg = find_negative(sf)
        if neg is not None:
            pp, phat, val = neg
            problems.append(f"{where}.M: negative on the mass shell at {_fmt_point(pp, phat)} (p+^2n Q = {val})")
            continue
        out.append(Component(weight=w, mass2=m2, M=M, source=src))
    if problems:
        raise ModelError(problems)
    return FieldModel(dimension=d, components=tuple(out), name=str(data.get("name", "")))


def load_model(path: str | Path) -> FieldModel:
    """Read and validate a model file.  I/O failures propagate as ``OSError``."""
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError([f"schema: invalid JSON ({exc})"]) from exc
    return model_from_dict(data)
