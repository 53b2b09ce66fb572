import math
import random

import pytest

from rimcert.abelian import abelian_invariants
from rimcert.braids import resolve_knot
from rimcert.diagrams import band_double, braid_closure_diagram
from rimcert.enumeration import todd_coxeter
from rimcert.groups import Word
from rimcert.invariants import wirtinger
from rimcert.surgery import (
    SurgerySpec,
    annulus_rim_surgery_group,
    branched_cover_surgered_group,
    gluing_matrix,
    meridian_kernel_words,
    plotnick_matrix,
    rim_surgery_group,
    spec_from_json,
    surgered_group,
    twist_roll_conjugator,
    unbranched_cover_group,
    validate_gluing,
)


def _rim_spec(knot, d, m=0, n=0):
    return spec_from_json({"knot": knot, "d": d, "m": m, "n": n})


# -- gluing matrices -----------------------------------------------------------


def test_gluing_matrix_shape():
    assert gluing_matrix(2, 3).rows == ((1, 0, 0), (2, 1, 0), (3, 0, 1))
    assert gluing_matrix(0, 0).rows == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_validate_gluing_messages():
    assert validate_gluing(((1, 0, 0), (5, 1, 0), (9, 0, 1))) == []
    bad_col = validate_gluing(((1, 0, 1), (0, 1, 0), (0, 0, 1)))
    assert any("third column" in msg for msg in bad_col)
    bad_det = validate_gluing(((2, 0, 0), (0, 1, 0), (0, 0, 1)))
    assert any("determinant" in msg for msg in bad_det)
    assert validate_gluing("nonsense")


def test_plotnick_matrices_on_random_coprime_pairs():
    rng = random.Random(71)
    count = 0
    while count < 100:
        d = rng.randint(1, 1000)
        m = rng.randint(1, 1000)
        if math.gcd(d, m) != 1:
            continue
        count += 1
        pm = plotnick_matrix(d, m)
        assert pm.determinant() == 1
        assert d * pm.complement + m * pm.inverse_residue == 1
        assert 0 <= pm.inverse_residue < max(d, 1)
        assert pm.bottom_row_parameters == (0, 0)


def test_plotnick_rejects_non_coprime():
    with pytest.raises(ValueError):
        plotnick_matrix(4, 2)
    with pytest.raises(ValueError):
        plotnick_matrix(0, 1)


# -- specs ---------------------------------------------------------------------


def test_spec_parsing_and_labels():
    spec = spec_from_json({"knot": "3_1", "d": 2, "m": 1, "n": 4})
    assert spec.label() == "rim(3_1, d=2, m=1, n=4)"
    assert spec.to_json()["knot"] == "3_1"
    spec = spec_from_json({"knot": "3_1", "d": 2, "kind": "annulus"})
    assert spec.kind == "annulus"
    assert spec.label().startswith("annulus(3_1")


def test_spec_validation():
    with pytest.raises(ValueError):
        spec_from_json({"knot": "3_1"})
    with pytest.raises(ValueError):
        spec_from_json({"knot": "3_1", "d": 0})
    with pytest.raises(ValueError):
        spec_from_json({"knot": "3_1", "d": 2, "kind": "ribbon"})
    with pytest.raises(ValueError):
        spec_from_json({"knot": "3_1", "d": 2, "m": -1})
    with pytest.raises(ValueError):
        SurgerySpec(knot=braid_closure_diagram(resolve_knot("3_1")), d=2,
                    kind="annulus")


def test_spec_round_trips_raw_diagrams():
    d = braid_closure_diagram(resolve_knot("4_1"))
    spec = spec_from_json({"knot": d.to_json(), "d": 3})
    assert spec.source is None
    assert surgered_group(spec).ngens == d.n_arcs


# -- surgered groups -----------------------------------------------------------


def test_conjugator_word():
    p = wirtinger(braid_closure_diagram(resolve_knot("3_1")))
    w = twist_roll_conjugator(p, 2, 0)
    assert w == p.meridian**2
    assert twist_roll_conjugator(p, 0, 0).is_identity()


def test_rim_group_h1_is_z_mod_d():
    for knot in ("unknot", "3_1", "4_1", "5_2"):
        for d in (1, 2, 3, 5):
            g = surgered_group(_rim_spec(knot, d, m=1, n=1))
            inv = abelian_invariants(g)
            assert inv.is_cyclic_of_order(d)


def test_rim_group_relator_budget():
    # crossing relators + meridian power + one commutator per generator
    spec = _rim_spec("4_1", 2, m=1, n=1)
    base = wirtinger(braid_closure_diagram(resolve_knot("4_1")))
    g = rim_surgery_group(spec)
    assert g.ngens == base.ngens
    assert len(g.relators) == len(base.relators) + 1 + base.ngens


def test_rim_group_trivial_conjugator_has_no_commutators():
    spec = _rim_spec("4_1", 2, m=0, n=0)
    base = wirtinger(braid_closure_diagram(resolve_knot("4_1")))
    g = rim_surgery_group(spec)
    assert len(g.relators) == len(base.relators) + 1


def test_annulus_group_h1_is_z_mod_d():
    for knot in ("3_1", "4_1"):
        for d in (1, 2, 3):
            spec = spec_from_json(
                {"knot": knot, "d": d, "m": 1, "n": 1, "kind": "annulus"}
            )
            inv = abelian_invariants(surgered_group(spec))
            assert inv.is_cyclic_of_order(d)


def test_annulus_meridian_is_rebadged():
    spec = spec_from_json({"knot": "3_1", "d": 2, "kind": "annulus"})
    t = band_double(braid_closure_diagram(resolve_knot("3_1")), 0)
    g = annulus_rim_surgery_group(spec)
    assert g.meridian.length() == 1  # a1, not the a3 difference loop
    assert g.ngens == t.n_arcs


def test_kind_dispatch_guards():
    rim = _rim_spec("3_1", 2)
    ann = spec_from_json({"knot": "3_1", "d": 2, "kind": "annulus"})
    with pytest.raises(ValueError):
        annulus_rim_surgery_group(rim)
    with pytest.raises(ValueError):
        rim_surgery_group(ann)


def test_d_equals_one_gives_trivial_group():
    for kind in ("rim", "annulus"):
        spec = spec_from_json({"knot": "3_1", "d": 1, "m": 1, "n": 2, "kind": kind})
        r = todd_coxeter(surgered_group(spec), [])
        assert r.complete and r.index == 1


# -- covers ----------------------------------------------------------------------


def test_meridian_kernel_words_shape():
    words = meridian_kernel_words(0, 4, 3)
    # (ngens-1) per transversal slot plus the closing power
    assert len(words) == 3 * 3 + 1
    assert words[-1] == Word.gen(0) ** 3
    # all arc generators are conjugate meridians, so membership in the
    # mod-3 kernel is total exponent sum divisible by 3
    for w in words:
        assert w.exponent_sum() % 3 == 0


def test_unbranched_cover_detects_cyclic_cases():
    # cyclic surgered group <=> trivial cover group
    cyc = _rim_spec("3_1", 2, m=1, n=0)
    cover = unbranched_cover_group(cyc)
    r = todd_coxeter(cover, [])
    assert r.complete and r.index == 1

    non = _rim_spec("3_1", 2, m=0, n=0)  # S3 complement group, kernel Z/3
    cover = unbranched_cover_group(non)
    r = todd_coxeter(cover, [])
    assert r.complete and r.index == 3


def test_branched_cover_matches_unbranched_for_these_surgeries():
    spec = _rim_spec("3_1", 2, m=0, n=0)
    a = todd_coxeter(unbranched_cover_group(spec), [])
    b = todd_coxeter(branched_cover_surgered_group(spec), [])
    assert a.complete and b.complete and a.index == b.index


def test_cover_requires_rim_kind():
    spec = spec_from_json({"knot": "3_1", "d": 2, "kind": "annulus"})
    with pytest.raises(ValueError):
        unbranched_cover_group(spec)
