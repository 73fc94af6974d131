"""Reference models used by the test suite, the acceptance checks and ``models/*.json``."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict

from gffmod.model import MODEL_SCHEMA, FieldModel, model_from_dict

__all__ = ["CORPUS", "corpus_model", "write_corpus"]


def _one(d: int, m2: str, M: str, name: str) -> Dict[str, Any]:
    return {"schema": MODEL_SCHEMA, "name": name, "dimension": d,
            "components": [{"weight": "1", "mass2": m2, "M": M}]}


CORPUS: Dict[str, Dict[str, Any]] = {
    "free_d4": _one(4, "1", "1", "free scalar field, d=4"),
    "time_derivative_d4": _one(4, "1", "p0^2", "M = p0^2, d=4, m^2=1"),
    "spacelike_d3_massless": _one(3, "0", "(-p1-p2)^2", "(a.p)^2 with a=(0,1,1), d=3, m=0"),
    "spacelike_d2": _one(2, "1", "p1^2", "(a.p)^2 with a=(0,1), d=2"),
    "transverse_d4": _one(4, "1", "p2^2", "(a.p)^2 with a=(0,0,1,0), d=4"),
    "timelike_mix_d4": _one(4, "1", "(p0-2*p2)^2", "(a.p)^2 with a=(1,0,2,0), d=4"),
    "transverse_d3_massive": _one(3, "1", "p2^2", "(a.p)^2 with a=(0,0,1), d=3, m=1"),
    "two_mass_covariant_d4": {
        "schema": MODEL_SCHEMA,
        "name": "two masses, M constant on each shell, d=4",
        "dimension": 4,
        "components": [
            {"weight": "1", "mass2": "1", "M": "1"},
            {"weight": "1/2", "mass2": "4", "M": "p0^2 - p1^2 - p2^2 - p3^2"},
        ],
    },
}


def corpus_model(name: str) -> FieldModel:
    return model_from_dict(CORPUS[name])


def write_corpus(directory: str | Path) -> None:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    for name, data in CORPUS.items():
        (out / f"{name}.json").write_text(json.dumps(data, indent=2) + "\n")
