"""Knot and tangle diagrams built by sweeping braid words.

A diagram is a list of crossings over arc identifiers.  Arcs are the
maximal overpasses of the curve: a new arc starts every time the curve
dives under a crossing.  Arc ids are assigned in traversal order, so arc 0
of a closed braid is the arc entering strand 1 at the top; its Wirtinger
generator is the marked meridian downstream.

Band doubling replaces every strand of the source braid by two parallel
copies (each crossing becomes four) and appends clasp pairs until the band
framing matches the request; the closure arcs of the first pair are then
cut, leaving a two-strand tangle in a ball with four boundary points.  The
two boundary arcs of the band are anti-parallel, which is what makes the
loop around both of them a product x * y^-1 of their meridians.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .braids import BraidWord


@dataclass(frozen=True, slots=True)
class Crossing:
    over: int
    under_in: int
    under_out: int
    sign: int

    def __post_init__(self) -> None:
        if self.sign not in (-1, 1):
            raise ValueError("crossing sign must be +1 or -1")

    def to_json(self) -> dict:
        return {
            "over": self.over,
            "under_in": self.under_in,
            "under_out": self.under_out,
            "sign": self.sign,
        }

    @staticmethod
    def from_json(doc: dict) -> "Crossing":
        return Crossing(doc["over"], doc["under_in"], doc["under_out"], doc["sign"])


@dataclass(frozen=True, slots=True)
class KnotDiagram:
    crossings: tuple[Crossing, ...]
    n_arcs: int
    writhe: int
    braid: BraidWord | None = None

    def validate(self) -> None:
        c = len(self.crossings)
        if c == 0:
            if self.n_arcs != 1:
                raise ValueError("a crossingless knot diagram has exactly one arc")
            return
        if self.n_arcs != c:
            raise ValueError("a knot diagram has as many arcs as crossings")
        if self.writhe != sum(x.sign for x in self.crossings):
            raise ValueError("stored writhe disagrees with crossing signs")
        ins = sorted(x.under_in for x in self.crossings)
        outs = sorted(x.under_out for x in self.crossings)
        if ins != list(range(c)) or outs != list(range(c)):
            raise ValueError("each arc must end and start exactly one underpass")
        for x in self.crossings:
            if not (0 <= x.over < self.n_arcs):
                raise ValueError("crossing references an unknown over arc")

    def to_json(self) -> dict:
        return {
            "crossings": [x.to_json() for x in self.crossings],
            "arcs": self.n_arcs,
            "writhe": self.writhe,
            "braid": str(self.braid) if self.braid is not None else None,
        }

    @staticmethod
    def from_json(doc: dict) -> "KnotDiagram":
        from .braids import parse_braid

        braid = parse_braid(doc["braid"]) if doc.get("braid") else None
        d = KnotDiagram(
            crossings=tuple(Crossing.from_json(c) for c in doc["crossings"]),
            n_arcs=doc["arcs"],
            writhe=doc["writhe"],
            braid=braid,
        )
        d.validate()
        return d


@dataclass(frozen=True, slots=True)
class TangleDiagram:
    """Two open strands in a ball, with the three marked boundary loops.

    `strand1` and `strand2` list each strand's arcs in order along its own
    orientation; the strands are anti-parallel copies of the source knot.
    Boundary loops are stored as signed arc sequences: a1 and a2 each
    encircle one arc at the same end of the band, a3 encircles both.
    """

    crossings: tuple[Crossing, ...]
    n_arcs: int
    strand1: tuple[int, ...]
    strand2: tuple[int, ...]
    a1: tuple[tuple[int, int], ...]
    a2: tuple[tuple[int, int], ...]
    a3: tuple[tuple[int, int], ...]
    source_writhe: int

    def validate(self) -> None:
        arcs = set(self.strand1) | set(self.strand2)
        if arcs != set(range(self.n_arcs)) or len(self.strand1) + len(
            self.strand2
        ) != self.n_arcs:
            raise ValueError("strand arc lists must partition the arcs")
        by_in = {x.under_in: x for x in self.crossings}
        if len(by_in) != len(self.crossings):
            raise ValueError("an arc ends at more than one underpass")
        for strand in (self.strand1, self.strand2):
            for a, b in zip(strand, strand[1:]):
                x = by_in.get(a)
                if x is None or x.under_out != b:
                    raise ValueError("strand arcs are not chained by underpasses")
        if len(self.a1) != 1 or len(self.a2) != 1 or len(self.a3) != 2:
            raise ValueError("boundary loops must encircle one, one and two arcs")

    def to_json(self) -> dict:
        return {
            "crossings": [x.to_json() for x in self.crossings],
            "arcs": self.n_arcs,
            "strand1": list(self.strand1),
            "strand2": list(self.strand2),
            "a1": [list(p) for p in self.a1],
            "a2": [list(p) for p in self.a2],
            "a3": [list(p) for p in self.a3],
            "source_writhe": self.source_writhe,
        }

    @staticmethod
    def from_json(doc: dict) -> "TangleDiagram":
        t = TangleDiagram(
            crossings=tuple(Crossing.from_json(c) for c in doc["crossings"]),
            n_arcs=doc["arcs"],
            strand1=tuple(doc["strand1"]),
            strand2=tuple(doc["strand2"]),
            a1=tuple((a, s) for a, s in doc["a1"]),
            a2=tuple((a, s) for a, s in doc["a2"]),
            a3=tuple((a, s) for a, s in doc["a3"]),
            source_writhe=doc["source_writhe"],
        )
        t.validate()
        return t


def braid_closure_diagram(braid: BraidWord) -> KnotDiagram:
    """Diagram of the braid closure; requires a one-component closure."""
    if not braid.is_knot():
        raise ValueError("braid closure is a link, not a knot")
    k = len(braid.letters)
    if k == 0:
        return KnotDiagram(crossings=(), n_arcs=1, writhe=0, braid=braid)

    # Walk the whole knot starting at the top of position 0.  Each crossing
    # is met exactly twice, once over and once under.
    passages: list[tuple[int, bool]] = []
    pos, h = 0, 0
    first = True
    while first or (pos, h) != (0, 0):
        first = False
        l = braid.letters[h]
        i = abs(l) - 1
        if pos in (i, i + 1):
            over = (l > 0) == (pos == i)
            passages.append((h, over))
            pos = i + 1 if pos == i else i
        h += 1
        if h == k:
            h = 0  # closure arc returns to the top of the same position

    over_arc = [-1] * k
    under_in = [-1] * k
    under_out = [-1] * k
    current = 0
    for h, over in passages:
        if over:
            # Over-passages after the final underpass sit on the closing
            # arc, which is arc 0 again.
            over_arc[h] = current % k
        else:
            under_in[h] = current
            current += 1
            under_out[h] = current % k
    if current != k:
        raise AssertionError("traversal must dive under every crossing once")

    crossings = tuple(
        Crossing(over_arc[h], under_in[h], under_out[h], 1 if braid.letters[h] > 0 else -1)
        for h in range(k)
    )
    d = KnotDiagram(
        crossings=crossings, n_arcs=k, writhe=braid.writhe(), braid=braid
    )
    d.validate()
    return d


def _double_letters(braid: BraidWord, framing: int) -> tuple[list[int], int]:
    """2-cable the braid word and append clasp letters; returns (letters, clasps)."""
    doubled: list[int] = []
    for l in braid.letters:
        j = abs(l)
        if l > 0:
            doubled.extend([2 * j, 2 * j - 1, 2 * j + 1, 2 * j])
        else:
            doubled.extend([-2 * j, -(2 * j + 1), -(2 * j - 1), -2 * j])
    twists = framing - braid.writhe()
    s = 1 if twists > 0 else -1
    doubled.extend([s] * (2 * abs(twists)))
    return doubled, abs(twists)


def _tangle_walk(
    letters: list[int], start: int, n_positions: int
) -> tuple[list[tuple[int, bool]], int]:
    """Walk one doubled strand from the top of `start` to a cut bottom.

    Closure arcs exist at every position except 0 and 1, whose closure arcs
    are cut to form the tangle ends.  Returns the drawing-order passages and
    the final bottom position.
    """
    total = len(letters)
    passages: list[tuple[int, bool]] = []
    pos, h = start, 0
    while True:
        if h == total:
            if pos <= 1:
                return passages, pos
            h = 0
            continue
        l = letters[h]
        i = abs(l) - 1
        if pos in (i, i + 1):
            over = (l > 0) == (pos == i)
            passages.append((h, over))
            pos = i + 1 if pos == i else i
        h += 1


def band_double(diagram: KnotDiagram, framing: int) -> TangleDiagram:
    """Double the knot into the two boundary arcs of a band with `framing`.

    Every crossing of the source becomes four crossings between the copies;
    |framing - writhe| clasp pairs bring the blackboard framing to the
    requested one.  The copies are anti-parallel: the second strand runs
    against the braid direction.
    """
    if diagram.braid is None:
        raise ValueError("band doubling needs a diagram built from a braid word")
    braid = diagram.braid
    letters, clasp_pairs = _double_letters(braid, framing)
    n2 = 2 * braid.strands

    walk1, end1 = _tangle_walk(letters, 0, n2)
    walk2, end2 = _tangle_walk(letters, 1, n2)
    if end1 != 0 or end2 != 1:
        raise AssertionError("doubled strands must come back to the cut pair")
    seen = sorted(h for w in (walk1, walk2) for h, _ in w)
    if seen != sorted(list(range(len(letters))) * 2):
        raise AssertionError("every doubled crossing is passed exactly twice")

    # The second copy is oriented against the drawing, so its passages run
    # in reverse and every mixed crossing flips sign.
    truewalk1 = walk1
    truewalk2 = list(reversed(walk2))
    on_strand2 = [0] * len(letters)
    for h, _ in walk2:
        on_strand2[h] += 1
    sign_of = [
        (1 if letters[h] > 0 else -1) * (-1 if on_strand2[h] == 1 else 1)
        for h in range(len(letters))
    ]

    over_arc = [-1] * len(letters)
    under_in = [-1] * len(letters)
    under_out = [-1] * len(letters)
    strands: list[list[int]] = []
    next_arc = 0
    for walk in (truewalk1, truewalk2):
        arcs = [next_arc]
        next_arc += 1
        for h, over in walk:
            if over:
                over_arc[h] = arcs[-1]
            else:
                under_in[h] = arcs[-1]
                arcs.append(next_arc)
                under_out[h] = next_arc
                next_arc += 1
        strands.append(arcs)

    crossings = tuple(
        Crossing(over_arc[h], under_in[h], under_out[h], sign_of[h])
        for h in range(len(letters))
    )
    s1, s2 = strands
    t = TangleDiagram(
        crossings=crossings,
        n_arcs=next_arc,
        strand1=tuple(s1),
        strand2=tuple(s2),
        a1=((s1[0], 1),),
        a2=((s2[-1], 1),),
        a3=((s1[0], 1), (s2[-1], -1)),
        source_writhe=braid.writhe(),
    )
    t.validate()
    if len(crossings) != 4 * len(braid.letters) + 2 * clasp_pairs:
        raise AssertionError("doubling must yield 4c + 2|framing - writhe| crossings")
    return t
