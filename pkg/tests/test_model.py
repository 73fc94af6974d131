from __future__ import annotations

import json

import pytest

from gffmod.corpus import CORPUS, write_corpus
from gffmod.model import ModelError, load_model, model_from_dict


def data(M="1", d=4, weight="1", mass2="1", **extra):
    return {"dimension": d, "components": [{"weight": weight, "mass2": mass2, "M": M}], **extra}


def test_valid_minimal_model():
    m = model_from_dict(data())
    assert m.dimension == 4 and len(m.components) == 1
    assert m.components[0].mass2 == 1 and m.equivalence_regime


def test_odd_weight_rejected():
    with pytest.raises(ModelError, match="not even"):
        model_from_dict(data("p0^3"))


def test_negative_weight_rejected_with_witness():
    with pytest.raises(ModelError) as info:
        model_from_dict(data("-p2^2"))
    assert "phat=(1,0)" in info.value.problems[0]


def test_all_problems_listed():
    bad = {"dimension": 3, "components": [
        {"weight": "-1", "mass2": "x", "M": "p0^2"},
        {"weight": "1", "mass2": "0", "M": "p9"},
        {"weight": "1", "mass2": "0"},
    ]}
    with pytest.raises(ModelError) as info:
        model_from_dict(bad)
    problems = info.value.problems
    assert len(problems) == 4
    assert any("weight" in p for p in problems)
    assert any("malformed rational" in p for p in problems)
    assert any("unknown variable" in p for p in problems)
    assert any("missing" in p for p in problems)


@pytest.mark.parametrize("payload, message", [
    ({"dimension": 1, "components": []}, "dimension"),
    ({"dimension": 4, "components": []}, "components"),
    ({"schema": "other/2", "dimension": 4, "components": [{"weight": "1", "mass2": "1", "M": "1"}]}, "schema"),
    ([], "schema"),
])
def test_schema_errors(payload, message):
    with pytest.raises(ModelError, match=message):
        model_from_dict(payload)


def test_vanishing_on_shell_rejected():
    with pytest.raises(ModelError, match="vanishes"):
        model_from_dict(data("p0^2 - p1^2 - p2^2 - p3^2 - 1"))


def test_load_from_file(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps(data("p0^2")))
    assert load_model(path).components[0].source == "p0^2"
    path.write_text("{not json")
    with pytest.raises(ModelError, match="invalid JSON"):
        load_model(path)
    with pytest.raises(OSError):
        load_model(tmp_path / "missing.json")


def test_corpus_files_round_trip(tmp_path):
    write_corpus(tmp_path)
    for name, payload in CORPUS.items():
        model = load_model(tmp_path / f"{name}.json")
        assert model.to_dict() == payload
