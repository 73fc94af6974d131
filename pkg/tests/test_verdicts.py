from __future__ import annotations

from fractions import Fraction

import pytest

from gffmod.corpus import CORPUS, corpus_model
from gffmod.lorentz import rotation
from gffmod.model import model_from_dict
from gffmod.parser import parse
from gffmod.poly import apply_linear
from gffmod.shell import to_shell_form
from gffmod.verdicts import (
    CGMA_CAVEAT,
    covariance_and_cgma_verdict,
    covariance_verdict,
    duality_verdict,
    linear_power_form,
    local_action_verdict,
)


def one(d, m2, M):
    return model_from_dict({"dimension": d, "components": [{"weight": "1", "mass2": m2, "M": M}]})


class TestDuality:
    def test_free_field_certified(self):
        v = duality_verdict(one(4, "1", "1"))
        assert v.label == "holds(certified)"

    def test_timelike_witness_in_identity_frame(self):
        v = duality_verdict(one(4, "1", "(p0-2*p2)^2"))
        assert v.status == "fails" and v.basis == "certified"
        assert v.witness["frame"] == "identity"
        assert v.witness["phat"] == ["0", "1"]
        assert v.witness["root"] == "1.41421i"
        assert v.witness["sturm"] == [0, 2]

    def test_spacelike_massless_sampled(self):
        v = duality_verdict(one(3, "0", "(-p1-p2)^2"))
        assert v.label == "holds(sampled)"
        assert any("discriminant" in n for n in v.notes)

    def test_transverse_needs_a_boost(self):
        model = one(4, "1", "p2^2")
        assert duality_verdict(model, depth=0).label == "holds(sampled)"
        v = duality_verdict(model, depth=1)
        assert v.status == "fails" and v.witness["frame"] != "identity"

    def test_seed_only_changes_random_samples(self):
        a = duality_verdict(one(4, "1", "p0^2"), seed=1)
        b = duality_verdict(one(4, "1", "p0^2"), seed=2)
        assert a.witness == b.witness  # found on the fixed grid


class TestLocalAction:
    def test_free_field(self):
        assert local_action_verdict(one(4, "1", "1")).label == "holds(certified)"

    def test_transverse_right_wedge_only(self):
        v = local_action_verdict(one(4, "1", "p2^2"))
        assert v.stats["right_wedge"] == "holds"
        assert v.status == "fails"

    def test_quarter_turn_frame_is_mixed(self):
        M = apply_linear(parse("p2^2", 4), rotation(4, 1, 2, 1))
        sf = to_shell_form(M, 1)
        assert not sf.is_pplus_monomial()
        assert sf.Q == parse("1/4*(p0^2 - p1^2 - p2^2 - 1)^2", 3)


class TestLinearPowerForm:
    def test_recovers_vector(self):
        a, k, c = linear_power_form(parse("(p0 - 2*p2)^2", 4))
        assert a == (1, 0, 2, 0) and k == 2 and c == 1

    def test_scaled_fourth_power(self):
        a, k, c = linear_power_form(parse("3*(p1 + 1/2*p2)^4", 3))
        assert k == 4 and c == 3 and a == (0, -1, Fraction(-1, 2))

    @pytest.mark.parametrize("text", ["p0^2 + p1^2", "1", "p0^2 + 1", "p0*p1"])
    def test_rejects_other_shapes(self, text):
        assert linear_power_form(parse(text, 3)) is None


class TestCovarianceAndCgma:
    def test_free_field_all_positive(self):
        r = covariance_and_cgma_verdict(one(4, "1", "1"))
        assert r.summary() == {"duality": "holds", "local_action": "holds",
                               "lorentz_covariance": "constant", "cgma": "holds"}
        assert r.lorentz_covariance.label == "constant(1)"
        assert r.consistency.checked and r.consistency.consistent

    def test_time_derivative_all_negative(self):
        r = covariance_and_cgma_verdict(one(4, "1", "p0^2"))
        assert r.summary() == {"duality": "fails", "local_action": "fails",
                               "lorentz_covariance": "nonconstant", "cgma": "fails"}
        assert r.lorentz_covariance.witness["nonconstant_part"] == "p1^2 + p2^2 + p3^2"
        assert r.consistency.consistent

    def test_massless_d3_annotation(self):
        r = covariance_and_cgma_verdict(one(3, "0", "(-p1-p2)^2"))
        assert not r.lorentz_covariance.constant
        assert r.cgma.basis == "conditional" and CGMA_CAVEAT in r.cgma.notes
        assert not r.consistency.checked

    def test_massless_d2_outside_main_result(self):
        r = covariance_and_cgma_verdict(one(2, "0", "p1^2 + p0^2"))
        assert any("not covered" in n for n in r.notes)

    @pytest.mark.parametrize("name", sorted(CORPUS))
    def test_corpus_consistent(self, name):
        model = corpus_model(name)
        r = covariance_and_cgma_verdict(model)
        assert r.consistency.consistent
        if model.equivalence_regime:
            assert len(set(r.summary().values()) - {"constant", "nonconstant"}) == 1
            assert r.duality.holds == r.lorentz_covariance.constant

    def test_covariance_values_per_component(self):
        v = covariance_verdict(corpus_model("two_mass_covariant_d4"))
        assert v.values == ["1", "4"] and v.label == "constant(1, 4)"
