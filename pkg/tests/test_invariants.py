import random

import pytest

from rimcert.abelian import abelian_invariants
from rimcert.braids import BraidWord, KNOT_TABLE, braid_connected_sum, resolve_knot
from rimcert.diagrams import braid_closure_diagram
from rimcert.enumeration import todd_coxeter
from rimcert.groups import GroupPresentation, Word, commutator, quotient
from rimcert.invariants import (
    alexander_polynomial,
    arf_invariant,
    fox_derivative,
    knot_determinant,
    normal_invariant_report,
    tangle_wirtinger,
    wirtinger,
)
from rimcert.laurent import LaurentPolynomial

from oracles import SEIFERT, alexander_from_seifert, arf_from_seifert


def _diagram(name):
    return braid_closure_diagram(resolve_knot(name))


# -- Alexander polynomials and Arf against the Seifert oracle -----------------


def test_alexander_matches_seifert_oracle():
    for name, v in SEIFERT.items():
        mine = alexander_polynomial(_diagram(name))
        assert mine == LaurentPolynomial(tuple(alexander_from_seifert(v)), 0)


def test_alexander_matches_table_references():
    for name, entry in KNOT_TABLE.items():
        assert alexander_polynomial(_diagram(name)) == entry.alexander


def test_arf_matches_seifert_oracle():
    for name, v in SEIFERT.items():
        assert arf_invariant(_diagram(name)) == arf_from_seifert(v)
        assert arf_invariant(_diagram(name)) == KNOT_TABLE[name].arf


def test_determinants():
    expected = {"unknot": 1, "3_1": 3, "4_1": 5, "5_1": 5, "5_2": 7}
    for name, det in expected.items():
        assert knot_determinant(_diagram(name)) == det


def test_alexander_multiplies_under_connected_sum():
    a = resolve_knot("3_1")
    b = resolve_knot("4_1")
    joined = braid_connected_sum(a, b)
    product = alexander_polynomial(_diagram("3_1")) * alexander_polynomial(
        _diagram("4_1")
    )
    assert alexander_polynomial(braid_closure_diagram(joined)) == product.normalized()


def _random_knot_braids(count, seed, max_letters=8):
    rng = random.Random(seed)
    found = []
    while len(found) < count:
        strands = rng.randint(2, 4)
        letters = tuple(
            rng.choice((1, -1)) * rng.randint(1, strands - 1)
            for _ in range(rng.randint(1, max_letters))
        )
        b = BraidWord(strands, letters)
        if b.is_knot():
            found.append(b)
    return found


def test_alexander_properties_on_random_braids():
    # unit value at 1 and palindromic coefficients, two hundred samples
    for braid in _random_knot_braids(200, seed=61):
        delta = alexander_polynomial(braid_closure_diagram(braid))
        assert abs(delta.evaluate(1)) == 1
        assert delta.is_palindromic()
        assert knot_determinant(braid_closure_diagram(braid)) % 2 == 1


def test_fox_derivative_product_rule():
    rng = random.Random(67)

    def rand_word():
        return Word.from_letters(
            (rng.randrange(2), rng.choice((1, -1)))
            for _ in range(rng.randint(0, 6))
        )

    for _ in range(100):
        u, v = rand_word(), rand_word()
        for g in (0, 1):
            left = fox_derivative(u * v, g)
            # d(uv) = du + u dv with u abelianized to t^(exponent sum)
            shift = LaurentPolynomial.term(1, u.exponent_sum())
            right = fox_derivative(u, g) + shift * fox_derivative(v, g)
            assert left == right


def test_fox_derivative_basics():
    x = Word.gen(0)
    assert fox_derivative(x, 0) == LaurentPolynomial.one()
    assert fox_derivative(x.inverse(), 0) == LaurentPolynomial.term(-1, -1)
    assert fox_derivative(x, 1).is_zero()


# -- Wirtinger presentations ---------------------------------------------------


def test_wirtinger_shape_and_h1():
    for name in ("3_1", "4_1", "5_1", "5_2"):
        d = _diagram(name)
        p = wirtinger(d)
        assert p.ngens == d.n_arcs
        assert len(p.relators) == len(d.crossings)
        inv = abelian_invariants(p)
        assert (inv.free_rank, inv.torsion) == (1, ())


def test_wirtinger_longitude_is_nullhomologous():
    # exponent sum zero = linking number zero with the knot
    for name in ("unknot", "3_1", "4_1", "5_1", "5_2"):
        p = wirtinger(_diagram(name))
        assert p.longitude.exponent_sum() == 0


def _image_permutation(table, word):
    """Permutation of the cosets of a completed regular table."""
    n = len(table.table)
    out = []
    for c in range(n):
        x = c
        for g, s in word.letters():
            x = table.table[x][2 * g] if s > 0 else table.table[x][2 * g + 1]
        out.append(x)
    return out


def test_peripheral_pair_commutes_in_finite_quotients():
    # [meridian, longitude] must die in every quotient; check the regular
    # representation of knot group mod meridian^d for small d.
    cases = [("3_1", 2), ("3_1", 3), ("4_1", 2), ("5_2", 2)]
    for name, d in cases:
        p = wirtinger(_diagram(name))
        q = quotient(p, [p.meridian**d])
        r = todd_coxeter(q, [])
        assert r.complete
        comm = commutator(p.meridian, p.longitude)
        n = len(r.table.table)
        assert _image_permutation(r.table, comm) == list(range(n))


def test_unknot_wirtinger_group_is_z():
    p = wirtinger(_diagram("unknot"))
    assert p.ngens == 1 and not p.relators
    assert p.longitude.is_identity()


# -- tangle groups -------------------------------------------------------------


def test_tangle_group_h1_is_rank_two():
    from rimcert.diagrams import band_double

    for name in ("3_1", "4_1"):
        t = band_double(_diagram(name), 0)
        tg = tangle_wirtinger(t)
        assert len(tg.presentation.relators) == len(t.crossings)
        inv = abelian_invariants(tg.presentation)
        assert (inv.free_rank, inv.torsion) == (2, ())


def test_tangle_marked_words():
    from rimcert.diagrams import band_double

    tg = tangle_wirtinger(band_double(_diagram("3_1"), 0))
    assert tg.a1.length() == 1
    assert tg.a2.length() == 1
    assert tg.a3 == tg.a1 * tg.a2.inverse()
    assert tg.presentation.meridian == tg.a3
    # the doubled strands are anti-parallel: their meridians abelianize
    # with opposite signs, so a3 dies in homology
    assert tg.a3.exponent_sum() == 0 or tg.a1 != tg.a2


def test_tangle_longitude_owns_no_self_linking():
    from rimcert.diagrams import band_double

    for name in ("3_1", "4_1"):
        t = band_double(_diagram(name), 0)
        tg = tangle_wirtinger(t)
        strand2 = set(t.strand2)
        own = sum(s for g, s in tg.longitude.letters() if g in strand2)
        assert own == 0


def test_normal_invariant_labels():
    assert normal_invariant_report(_diagram("3_1")).label == "1*PD(T')"
    assert normal_invariant_report(_diagram("5_2")).label == "0*PD(T')"
    assert normal_invariant_report(_diagram("unknot")).normally_trivial


def test_arf_requires_odd_determinant():
    # all genuine knots have odd determinant; the assertion is a guard on
    # the diagram bookkeeping, not reachable through the public builders
    for name in ("3_1", "4_1", "5_1", "5_2"):
        assert arf_invariant(_diagram(name)) in (0, 1)
