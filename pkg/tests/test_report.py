"""Report assembly: invariant blocks, conclusions, JSON, text rendering."""

import itertools

import pytest

from rimcert import (
    CertificationReport,
    certify,
    companion_diagram,
    conclusions_for,
    invariant_block,
    render_text,
    spec_from_json,
)
from rimcert.braids import resolve_knot
from rimcert.diagrams import band_double, braid_closure_diagram
from rimcert.report import REPORT_SCHEMA, SMOOTHNESS_CAVEAT, TOPOLOGICAL_TEXT

STATUSES = ("cyclic", "non_cyclic", "inconclusive")


def _invariant_samples():
    yield None
    for name in ("unknot", "3_1", "4_1"):
        yield invariant_block(braid_closure_diagram(resolve_knot(name)))


def test_conclusions_pure_and_total():
    for status, inv in itertools.product(STATUSES, _invariant_samples()):
        first = conclusions_for(status, inv)
        again = conclusions_for(status, inv)
        assert first == again
        assert first["topological"] == TOPOLOGICAL_TEXT[status]
        assert first["smoothness_caveat"] == SMOOTHNESS_CAVEAT
        if inv is None:
            assert first["smoothly_knotted"] is None
            assert first["normal_invariant"] is None
        else:
            assert first["smoothly_knotted"] == (not inv["alexander_trivial"])
            assert first["normal_invariant"] == inv["normal_invariant"]


def test_pairwise_homeomorphism_claim_only_when_cyclic():
    for status in STATUSES:
        text = conclusions_for(status, None)["topological"]
        claimed = "pairwise homeomorphism" in text
        assert claimed == (status == "cyclic")
    assert "standardness theorems do not apply" in TOPOLOGICAL_TEXT["non_cyclic"]
    assert "undetermined" in TOPOLOGICAL_TEXT["inconclusive"]


def test_unknown_status_rejected():
    with pytest.raises(ValueError):
        conclusions_for("certified", None)


def test_certified_cyclic_report():
    spec = spec_from_json({"knot": "3_1", "d": 2, "m": 1, "n": 0})
    report = certify(spec)
    doc = report.to_json()
    assert doc["schema"] == REPORT_SCHEMA
    assert doc["label"] == "rim(3_1, d=2, m=1, n=0)"
    assert doc["verdict"]["status"] == "cyclic"
    assert doc["verdict"]["certified"] is True
    assert doc["group"]["enumerated_index"] == 1
    inv = doc["invariants"]
    assert inv["alexander_polynomial"] == "t^2-t+1"
    assert inv["alexander_trivial"] is False
    assert inv["determinant"] == 3
    assert inv["arf"] == 1
    assert inv["normal_invariant"] == "1*PD(T')"
    assert doc["conclusions"]["smoothly_knotted"] is True
    assert doc["timing"]["elapsed_seconds"] >= 0


def test_unknot_is_not_smoothly_knotted():
    report = certify(spec_from_json({"knot": "unknot", "d": 3}))
    assert report.verdict.status == "cyclic"
    assert report.invariants["alexander_trivial"] is True
    assert report.conclusions["smoothly_knotted"] is False
    assert report.conclusions["normal_invariant"] == "0*PD(T')"


def test_inconclusive_report_has_no_enumerated_index():
    spec = spec_from_json({"knot": "4_1", "d": 3, "m": 1, "n": 20})
    report = certify(spec, max_cosets=500)
    assert report.verdict.status == "inconclusive"
    assert report.group["enumerated_index"] is None
    assert "undetermined" in report.conclusions["topological"]
    assert report.limits == {"max_cosets": 500, "timeout": 60.0}


def test_timing_block_is_optional():
    report = certify(spec_from_json({"knot": "unknot", "d": 2}))
    assert "timing" in report.to_json()
    assert "timing" not in report.to_json(timing=False)


def test_companion_of_rim_spec_is_its_own_diagram():
    spec = spec_from_json({"knot": "5_2", "d": 2})
    assert companion_diagram(spec) is spec.knot


def test_companion_of_named_annulus_spec_is_the_closure():
    spec = spec_from_json({"knot": "3_1", "d": 2, "kind": "annulus"})
    companion = companion_diagram(spec)
    expected = braid_closure_diagram(resolve_knot("3_1"))
    assert companion.to_json() == expected.to_json()


def test_raw_tangle_report_omits_invariants():
    tangle = band_double(braid_closure_diagram(resolve_knot("3_1")), 0)
    spec = spec_from_json({"knot": tangle.to_json(), "d": 2, "kind": "annulus"})
    assert companion_diagram(spec) is None
    report = certify(spec)
    assert report.invariants is None
    assert report.conclusions["smoothly_knotted"] is None
    assert "unavailable" in render_text(report)


def test_render_text_mentions_the_load_bearing_facts():
    spec = spec_from_json({"knot": "3_1", "d": 2, "m": 1, "n": 0})
    report = certify(spec, timeout=None)
    text = render_text(report)
    assert "rim(3_1, d=2, m=1, n=0)" in text
    assert "verdict: cyclic" in text
    assert "witness: meridian_subgroup_index=1" in text
    assert "alexander polynomial t^2-t+1" in text
    assert "pairwise homeomorphism" in text
    assert SMOOTHNESS_CAVEAT in text
    assert "no timeout" in text


def test_report_is_a_frozen_record():
    report = certify(spec_from_json({"knot": "unknot", "d": 2}))
    assert isinstance(report, CertificationReport)
    with pytest.raises(AttributeError):
        report.elapsed = 0.0
