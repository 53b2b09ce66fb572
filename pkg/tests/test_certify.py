"""Verdict semantics for the cyclicity certifier."""

import pytest

from rimcert import (
    GroupPresentation,
    Word,
    certify_cyclic,
    parse_word,
    spec_from_json,
    surgered_group,
)
from rimcert.certify import CYCLIC, INCONCLUSIVE, NON_CYCLIC

AB = ("a", "b")


def _rim(knot, d, m=1, n=0):
    return surgered_group(spec_from_json({"knot": knot, "d": d, "m": m, "n": n}))


# S3 presented as the trefoil group with the meridian squared killed.
S3_MOD_MERIDIAN = GroupPresentation(
    ngens=2,
    relators=(
        parse_word("a b a B A B", AB),
        parse_word("a a", AB),
    ),
    meridian=Word.gen(0),
)


def test_cyclic_verdict_fields():
    v = certify_cyclic(_rim("unknot", 3), 3)
    assert v.status == CYCLIC
    assert v.certified
    assert v.order == 3
    assert v.witness == {"meridian_subgroup_index": 1}
    cert = v.certificate
    assert cert["stage"] == "meridian_index"
    assert cert["enumeration"]["complete"]
    assert cert["enumeration"]["index"] == 1
    assert cert["abelian_invariants"] == {"free_rank": 0, "torsion": [3]}
    assert cert["limits"]["max_cosets"] > 0


def test_refuted_by_abelianization():
    # Z/2 x Z/2 is not cyclic of order 4; stage 1 settles it with no
    # enumeration at all.
    klein = GroupPresentation(
        ngens=2,
        relators=(
            parse_word("a a", AB),
            parse_word("b b", AB),
            parse_word("a b A B", AB),
        ),
        meridian=Word.gen(0),
    )
    v = certify_cyclic(klein, 4)
    assert v.status == NON_CYCLIC
    assert v.certified
    assert v.certificate["stage"] == "abelianization"
    assert v.witness["abelian_invariants"]["torsion"] == [2, 2]
    assert "enumeration" not in v.certificate


def test_non_cyclic_meridian_index_with_order():
    # Abelianization Z/2 survives stage 1, but the meridian subgroup
    # closes at index 3 and the full group at order 6.
    v = certify_cyclic(S3_MOD_MERIDIAN, 2)
    assert v.status == NON_CYCLIC
    assert v.certified
    assert v.witness == {"meridian_subgroup_index": 3, "group_order": 6}
    cert = v.certificate
    assert cert["stage"] == "meridian_index"
    assert cert["enumeration"]["index"] == 3
    assert cert["order_enumeration"]["index"] == 6


def test_inconclusive_is_honest_about_limits():
    p = _rim("4_1", 3, 1, 20)
    v = certify_cyclic(p, 3, max_cosets=500)
    assert v.status == INCONCLUSIVE
    assert not v.certified
    assert v.witness == {}
    cert = v.certificate
    assert cert["stage"] == "overflow"
    assert not cert["meridian_enumeration"]["complete"]
    assert cert["meridian_enumeration"]["reason"] == "max_cosets"
    assert not cert["order_enumeration"]["complete"]
    assert cert["limits"]["max_cosets"] == 500


def test_timeout_reported_in_certificate():
    v = certify_cyclic(_rim("4_1", 3, 1, 20), 3, timeout=1e-9)
    assert v.status == INCONCLUSIVE
    assert v.certificate["meridian_enumeration"]["reason"] == "timeout"
    assert v.certificate["limits"]["timeout"] == 1e-9


def test_wide_presentation_notes_collapse():
    p = _rim("4_1", 2)
    assert p.ngens > 3
    v = certify_cyclic(p, 2)
    assert v.status == CYCLIC
    note = v.certificate["collapsed_presentation"]
    assert 1 <= note["generators"] < p.ngens
    assert note["total_relator_length"] > 0


def test_narrow_presentation_runs_as_is():
    v = certify_cyclic(S3_MOD_MERIDIAN, 2)
    assert "collapsed_presentation" not in v.certificate


def test_verdict_json_deterministic():
    a = certify_cyclic(_rim("3_1", 3, 2, 1), 3).to_json()
    b = certify_cyclic(_rim("3_1", 3, 2, 1), 3).to_json()
    assert a == b
    assert a["status"] == CYCLIC
    assert a["certified"] is True


def test_bad_inputs_raise():
    with pytest.raises(ValueError):
        certify_cyclic(S3_MOD_MERIDIAN, 0)
    unmarked = GroupPresentation(ngens=1, relators=(parse_word("a a", "a"),))
    with pytest.raises(ValueError):
        certify_cyclic(unmarked, 2)
