"""Surgered-complement group presentations and the associated gluing data.

The surgeries cut out a circle's neighborhood and reglue it with a twist
(m times around the surface meridian) and a roll (n times around the
companion longitude).  At the group level the regluing does two things:
it kills the d-th power of the surface meridian and forces every
generator to commute with the conjugator word w built from the twist and
roll counts.  Covers of the result are presented through the
Reidemeister-Schreier machinery on the mod-d meridian-exponent kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .braids import resolve_knot
from .diagrams import KnotDiagram, TangleDiagram, band_double, braid_closure_diagram
from .enumeration import DEFAULT_MAX_COSETS, SubgroupPresentation, reidemeister_schreier
from .groups import GroupPresentation, Word, commutator, quotient
from .invariants import tangle_wirtinger, wirtinger

RIM = "rim"
ANNULUS = "annulus"
KINDS = (RIM, ANNULUS)


# -- gluing matrices --------------------------------------------------------


Rows3 = tuple[tuple[int, int, int], ...]


def _as_rows(rows) -> Rows3:
    out = tuple(tuple(int(v) for v in row) for row in rows)
    if len(out) != 3 or any(len(r) != 3 for r in out):
        raise ValueError("gluing matrices are 3x3")
    return out


@dataclass(frozen=True, slots=True)
class GluingMatrix:
    """Boundary regluing in the (circle, meridian, torus-meridian) basis."""

    rows: Rows3

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", _as_rows(self.rows))

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def gluing_matrix(m: int, n: int) -> GluingMatrix:
    """Regluing that twists m times and rolls n times."""
    mat = GluingMatrix(((1, 0, 0), (m, 1, 0), (n, 0, 1)))
    bad = validate_gluing(mat.rows)
    if bad:
        raise AssertionError(f"twist/roll matrix failed validation: {bad}")
    return mat


def validate_gluing(rows) -> list[str]:
    """Violation messages for a candidate regluing matrix; [] means ok."""
    try:
        mat = _as_rows(rows)
    except (TypeError, ValueError):
        return ["matrix must be 3x3 with integer entries"]
    violations = []
    col3 = (mat[0][2], mat[1][2], mat[2][2])
    if col3 != (0, 0, 1):
        violations.append(
            "third column must be (0, 0, 1): the torus meridian has to map "
            "to the longitude"
        )
    block = mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    if block != 1:
        violations.append(f"upper-left 2x2 block has determinant {block}, not 1")
    return violations


@dataclass(frozen=True, slots=True)
class PlotnickMatrix:
    """Regluing that exhibits the twisted cover complement inside S^4.

    ``inverse_residue`` is the least nonnegative inverse of ``twists``
    modulo ``order`` and ``complement`` completes the Bezout identity
    order*complement + twists*inverse_residue = 1.  The general
    homology-sphere gluing form carries two bottom-row parameters; this
    matrix forces both to vanish, which is what makes the ambient
    manifold standard.  They are recorded for the report.
    """

    order: int
    twists: int
    inverse_residue: int
    complement: int
    rows: Rows3
    bottom_row_parameters: tuple[int, int] = (0, 0)

    def determinant(self) -> int:
        r = self.rows
        return (
            r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
            - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
        )

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "twists": self.twists,
            "inverse_residue": self.inverse_residue,
            "complement": self.complement,
            "rows": [list(r) for r in self.rows],
            "bottom_row_parameters": list(self.bottom_row_parameters),
        }


def plotnick_matrix(d: int, m: int) -> PlotnickMatrix:
    """Build the standard-ambient gluing for coprime order and twist count."""
    if d < 1:
        raise ValueError("cover order must be positive")
    if math.gcd(d, m) != 1:
        raise ValueError(f"twist count {m} and order {d} must be coprime")
    beta = pow(m, -1, d)
    gamma = (1 - m * beta) // d
    mat = PlotnickMatrix(
        order=d,
        twists=m,
        inverse_residue=beta,
        complement=gamma,
        rows=((m, d, 0), (-gamma, beta, 0), (0, 0, 1)),
    )
    if d * gamma + m * beta != 1:
        raise AssertionError("Bezout identity failed")
    if mat.determinant() != 1:
        raise AssertionError("matrix determinant must be 1")
    return mat


# -- surgery specifications -------------------------------------------------


@dataclass(frozen=True, slots=True)
class SurgerySpec:
    """One surgery instance: what to cut along and how to reglue.

    ``knot`` is a closed diagram for plain rim surgery and a doubled-band
    tangle for the annulus flavor.  ``source`` keeps the human-readable
    origin (a table name or braid literal) purely for reporting.
    """

    knot: KnotDiagram | TangleDiagram
    d: int
    m: int = 0
    n: int = 0
    kind: str = RIM
    source: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if self.d < 1:
            raise ValueError("d must be a positive integer")
        if self.m < 0:
            raise ValueError("twist count m must be nonnegative")
        if self.kind == RIM and not isinstance(self.knot, KnotDiagram):
            raise ValueError("rim surgery needs a closed knot diagram")
        if self.kind == ANNULUS and not isinstance(self.knot, TangleDiagram):
            raise ValueError("annulus surgery needs a doubled-band tangle")
        self.knot.validate()

    def label(self) -> str:
        src = self.source or f"{len(self.knot.crossings)} crossings"
        return f"{self.kind}({src}, d={self.d}, m={self.m}, n={self.n})"

    def to_json(self) -> dict:
        knot = self.source if self.source is not None else self.knot.to_json()
        return {
            "knot": knot,
            "d": self.d,
            "m": self.m,
            "n": self.n,
            "kind": self.kind,
        }


def spec_from_json(doc: dict) -> SurgerySpec:
    """Parse {"knot": name|braid|diagram, "d", "m", "n", "kind"}."""
    if not isinstance(doc, dict):
        raise ValueError("surgery spec must be a JSON object")
    if "knot" not in doc or "d" not in doc:
        raise ValueError("surgery spec needs at least 'knot' and 'd'")
    kind = doc.get("kind", RIM)
    knot = doc["knot"]
    source = None
    if isinstance(knot, str):
        source = knot
        braid = resolve_knot(knot)
        diagram = braid_closure_diagram(braid)
        knot = band_double(diagram, 0) if kind == ANNULUS else diagram
    elif isinstance(knot, dict):
        loader = TangleDiagram if kind == ANNULUS else KnotDiagram
        knot = loader.from_json(knot)
    else:
        raise ValueError("'knot' must be a name, a braid literal, or a diagram")
    return SurgerySpec(
        knot=knot,
        d=int(doc["d"]),
        m=int(doc.get("m", 0)),
        n=int(doc.get("n", 0)),
        kind=kind,
        source=source,
    )


# -- surgered groups --------------------------------------------------------


def twist_roll_conjugator(p: GroupPresentation, m: int, n: int) -> Word:
    """The regluing conjugator: longitude^n * meridian^m, freely reduced.

    The two peripheral words commute in the group but not freely, so the
    order is fixed once here; swapping it changes nothing any caller can
    observe because the presentations differ by conjugate relator sets.
    """
    if p.meridian is None or p.longitude is None:
        raise ValueError("presentation is missing peripheral words")
    return (p.longitude ** n) * (p.meridian ** m)


def _commute_with_all(ngens: int, w: Word) -> list[Word]:
    if w.is_identity():
        return []
    return [commutator(Word.gen(i), w) for i in range(ngens)]


def rim_surgery_group(spec: SurgerySpec) -> GroupPresentation:
    """Group of the complement after m-twisted n-rolled rim surgery.

    Relators on top of the knot group: meridian^d, and one commutator per
    generator forcing the twist/roll conjugator to be central.
    """
    if spec.kind != RIM:
        raise ValueError("spec kind must be rim")
    base = wirtinger(spec.knot)
    w = twist_roll_conjugator(base, spec.m, spec.n)
    extra = [base.meridian ** spec.d]
    extra.extend(_commute_with_all(base.ngens, w))
    return quotient(base, extra)


def annulus_rim_surgery_group(spec: SurgerySpec) -> GroupPresentation:
    """Group of the complement after annulus rim surgery along a band.

    The tangle's boundary data provides the three marked loops: the two
    strand meridians at the shared end and their difference.  Surgery
    kills the d-th power of the first, identifies the two, kills the
    difference, and makes the conjugator central.  The surviving meridian
    of the surgered surface is the first marked loop.
    """
    if spec.kind != ANNULUS:
        raise ValueError("spec kind must be annulus")
    tg = tangle_wirtinger(spec.knot)
    w = twist_roll_conjugator(tg.presentation, spec.m, spec.n)
    extra = [tg.a1 ** spec.d, tg.a3, tg.a1 * tg.a2.inverse()]
    extra.extend(_commute_with_all(tg.presentation.ngens, w))
    return replace(quotient(tg.presentation, extra), meridian=tg.a1)


def surgered_group(spec: SurgerySpec) -> GroupPresentation:
    if spec.kind == RIM:
        return rim_surgery_group(spec)
    return annulus_rim_surgery_group(spec)


# -- cyclic covers of the surgered complement -------------------------------


def meridian_kernel_words(meridian_gen: int, ngens: int, d: int) -> list[Word]:
    """Generators of the kernel of (meridian exponent mod d).

    Schreier generators for the transversal 1, mu, ..., mu^(d-1): each
    non-meridian generator conjugated through the transversal, plus the
    d-th meridian power closing the cycle.
    """
    mu = meridian_gen
    words = []
    for j in range(d):
        for i in range(ngens):
            if i == mu:
                continue
            words.append(
                Word.gen(mu, j) * Word.gen(i) * Word.gen(mu, -((j + 1) % d))
            )
    words.append(Word.gen(mu, d))
    return words


def _cover_pieces(
    spec: SurgerySpec, max_cosets: int
) -> tuple[SubgroupPresentation, list[Word], list[Word]]:
    """Common data for both cover flavors.

    Returns the subgroup presentation of the mod-d kernel, the rewritten
    lifts of meridian^d through every transversal representative, and the
    relators pinning the deck/regluing action: one per Schreier generator
    s, saying s equals its conjugate by w = meridian^m * longitude^n.
    """
    if spec.kind != RIM:
        raise ValueError("covers are built for rim specs")
    base = wirtinger(spec.knot)
    assert base.meridian == Word.gen(0)
    sub = reidemeister_schreier(
        base, meridian_kernel_words(0, base.ngens, spec.d), max_cosets
    )
    if sub.index != spec.d:
        raise AssertionError(
            f"meridian-exponent kernel has index {sub.index}, expected {spec.d}"
        )
    mu_power = base.meridian ** spec.d
    merid_lifts = [
        sub.rewrite(t * mu_power * t.inverse()) for t in sub.transversal
    ]
    w = (base.meridian ** spec.m) * (base.longitude ** spec.n)
    action = []
    for s_index, s_word in enumerate(sub.schreier_words):
        image = sub.rewrite(w.inverse() * s_word * w)
        action.append(Word.gen(s_index, -1) * image)
    return sub, merid_lifts, action


def unbranched_cover_group(
    spec: SurgerySpec, max_cosets: int = DEFAULT_MAX_COSETS
) -> GroupPresentation:
    """Group of the d-fold cyclic cover of the surgered complement.

    The surgered group is cyclic of order d exactly when this group is
    trivial, which is what the certifier's cross-validation checks.
    """
    sub, merid_lifts, action = _cover_pieces(spec, max_cosets)
    return quotient(sub.presentation, merid_lifts + action)


def branched_cover_surgered_group(
    spec: SurgerySpec, max_cosets: int = DEFAULT_MAX_COSETS
) -> GroupPresentation:
    """Group of the d-fold branched cover, surgered.

    Filling the lifted knot back in kills every lift of the meridian
    power, which is the same relator family the unbranched construction
    already imposes; the quotients are applied in the branched order
    (meridian lifts first) and the resulting presentation coincides with
    the unbranched one for these surgeries.
    """
    sub, merid_lifts, action = _cover_pieces(spec, max_cosets)
    branched = quotient(sub.presentation, merid_lifts)
    return quotient(branched, action)
