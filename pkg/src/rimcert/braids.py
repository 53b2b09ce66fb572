"""Braid words, their closures, and the built-in knot table.

The text format is "Bn: l1 l2 ...", for example "B3: 1 -2 1 -2".  Strands
are 1-based; letter i crosses the strands at positions i and i+1, with the
strand at position i passing over for a positive letter (right-handed
crossing).  A braid is accepted as a knot input only when its closure has a
single component.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .laurent import LaurentPolynomial

_HEADER_RE = re.compile(r"^\s*B\s*(\d+)\s*:\s*(.*?)\s*$")


@dataclass(frozen=True, slots=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        object.__setattr__(self, "letters", tuple(self.letters))
        for l in self.letters:
            if l == 0 or abs(l) >= self.strands:
                raise ValueError(
                    f"letter {l} is out of range for a {self.strands}-strand braid"
                )

    def writhe(self) -> int:
        return sum(1 if l > 0 else -1 for l in self.letters)

    def closure_permutation(self) -> list[int]:
        """0-based map: top position -> bottom position."""
        perm = list(range(self.strands))
        for l in self.letters:
            i = abs(l) - 1
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
        # perm as computed tracks which top strand occupies each bottom slot;
        # invert to map tops to bottoms.
        out = [0] * self.strands
        for bottom, top in enumerate(perm):
            out[top] = bottom
        return out

    def closure_components(self) -> int:
        perm = self.closure_permutation()
        seen = [False] * self.strands
        cycles = 0
        for s in range(self.strands):
            if not seen[s]:
                cycles += 1
                t = s
                while not seen[t]:
                    seen[t] = True
                    t = perm[t]
        return cycles

    def is_knot(self) -> bool:
        return self.closure_components() == 1

    def mirrored(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-l for l in self.letters))

    def __str__(self) -> str:
        return format_braid(self)


def parse_braid(text: str) -> BraidWord:
    """Parse "Bn: l1 l2 ..." and require the closure to be a knot."""
    m = _HEADER_RE.match(text)
    if not m:
        raise ValueError(f"malformed braid {text!r}; expected 'Bn: l1 l2 ...'")
    strands = int(m.group(1))
    body = m.group(2)
    letters = []
    for tok in body.split():
        try:
            val = int(tok)
        except ValueError:
            raise ValueError(f"malformed braid letter {tok!r}") from None
        letters.append(val)
    braid = BraidWord(strands, tuple(letters))
    comps = braid.closure_components()
    if comps != 1:
        raise ValueError(
            f"closure of {text.strip()!r} has {comps} components; need a knot"
        )
    return braid


def format_braid(b: BraidWord) -> str:
    body = " ".join(str(l) for l in b.letters)
    return f"B{b.strands}: {body}".rstrip()


def braid_connected_sum(a: BraidWord, b: BraidWord) -> BraidWord:
    """Closure of the result is the connected sum of the two closures."""
    shift = a.strands - 1
    shifted = tuple(l + shift if l > 0 else l - shift for l in b.letters)
    return BraidWord(a.strands + b.strands - 1, a.letters + shifted)


@dataclass(frozen=True, slots=True)
class KnotTableEntry:
    name: str
    braid: BraidWord
    alexander: LaurentPolynomial  # normalized reference value
    arf: int


def _entry(name: str, braid_text: str, coeffs: tuple[int, ...], arf: int) -> KnotTableEntry:
    return KnotTableEntry(
        name=name,
        braid=parse_braid(braid_text),
        alexander=LaurentPolynomial(coeffs, 0),
        arf=arf,
    )


# Reference polynomials are listed low degree first and pinned by the
# Seifert-matrix oracles in the test suite.
KNOT_TABLE: dict[str, KnotTableEntry] = {
    e.name: e
    for e in (
        _entry("unknot", "B1:", (1,), 0),
        _entry("3_1", "B2: 1 1 1", (1, -1, 1), 1),
        _entry("4_1", "B3: 1 -2 1 -2", (1, -3, 1), 1),
        _entry("5_1", "B2: 1 1 1 1 1", (1, -1, 1, -1, 1), 1),
        _entry("5_2", "B3: 1 1 1 2 -1 2", (2, -3, 2), 0),
    )
}


def builtin_knot(name: str) -> KnotTableEntry:
    try:
        return KNOT_TABLE[name]
    except KeyError:
        known = ", ".join(sorted(KNOT_TABLE))
        raise ValueError(f"unknown knot {name!r}; built-ins: {known}") from None


def resolve_knot(text: str) -> BraidWord:
    """Accept either a built-in name or a literal braid word."""
    if text in KNOT_TABLE:
        return KNOT_TABLE[text].braid
    if _HEADER_RE.match(text):
        return parse_braid(text)
    raise ValueError(
        f"{text!r} is neither a built-in knot name nor a braid word 'Bn: ...'"
    )
