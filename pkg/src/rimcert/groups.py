"""Freely reduced words and finite group presentations.

Words are stored run-length encoded as (generator, exponent) syllables so
that high powers such as mu^d stay short.  Generators are 0-based integer
indices; exponents are nonzero.  Adjacent syllables always have distinct
generators, which is exactly the freely reduced normal form.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Sequence

Syllable = tuple[int, int]


def _reduce_syllables(syllables: Iterable[Syllable]) -> tuple[Syllable, ...]:
    """Merge adjacent syllables with equal generators, dropping zeros."""
    out: list[list[int]] = []
    for gen, exp in syllables:
        if exp == 0:
            continue
        if gen < 0:
            raise ValueError(f"negative generator index {gen}")
        if out and out[-1][0] == gen:
            out[-1][1] += exp
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([gen, exp])
    # A single merge pass is not enough: removing a zero syllable can make
    # its neighbours adjacent.  Iterate until stable.
    changed = True
    while changed:
        changed = False
        i = 0
        while i + 1 < len(out):
            if out[i][0] == out[i + 1][0]:
                out[i][1] += out[i + 1][1]
                del out[i + 1]
                if out[i][1] == 0:
                    del out[i]
                    i = max(i - 1, 0)
                changed = True
            else:
                i += 1
    return tuple((g, e) for g, e in out)


@dataclass(frozen=True, slots=True)
class Word:
    """A freely reduced word in a free group on indexed generators."""

    syllables: tuple[Syllable, ...] = ()

    def __post_init__(self) -> None:
        reduced = _reduce_syllables(self.syllables)
        if reduced != tuple(self.syllables):
            object.__setattr__(self, "syllables", reduced)

    @staticmethod
    def identity() -> "Word":
        return Word(())

    @staticmethod
    def gen(index: int, exp: int = 1) -> "Word":
        return Word(((index, exp),))

    @staticmethod
    def from_letters(letters: Iterable[tuple[int, int]]) -> "Word":
        return Word(tuple(letters))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.syllables + other.syllables)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.syllables)))

    def __pow__(self, k: int) -> "Word":
        if k == 0:
            return Word(())
        base = self if k > 0 else self.inverse()
        return Word(base.syllables * abs(k))

    def is_identity(self) -> bool:
        return not self.syllables

    def length(self) -> int:
        """Number of letters (total absolute exponent)."""
        return sum(abs(e) for _, e in self.syllables)

    def letters(self) -> Iterator[tuple[int, int]]:
        """Yield single letters (gen, +1|-1) left to right."""
        for g, e in self.syllables:
            step = 1 if e > 0 else -1
            for _ in range(abs(e)):
                yield g, step

    def max_generator(self) -> int:
        """Largest generator index used, or -1 for the identity."""
        return max((g for g, _ in self.syllables), default=-1)

    def exponent_sum(self, gen: int | None = None) -> int:
        if gen is None:
            return sum(e for _, e in self.syllables)
        return sum(e for g, e in self.syllables if g == gen)

    def cyclically_reduced(self) -> "Word":
        syls = list(self.syllables)
        while len(syls) > 1 and syls[0][0] == syls[-1][0]:
            g = syls[0][0]
            head, tail = syls[0][1], syls[-1][1]
            if head + tail == 0:
                syls = syls[1:-1]
            else:
                syls = [(g, head + tail)] + syls[1:-1]
                break
        return Word(tuple(syls))

    def conjugated_by(self, g: "Word") -> "Word":
        """g^-1 * self * g."""
        return g.inverse() * self * g

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        return "*".join(
            f"x{g}" if e == 1 else f"x{g}^{e}" for g, e in self.syllables
        )


def free_reduce(word: Word | Sequence[Syllable]) -> Word:
    """Free reduction; idempotent, never increases letter length."""
    if isinstance(word, Word):
        return Word(word.syllables)
    return Word(tuple(word))


def commutator(a: Word, b: Word) -> Word:
    return a.inverse() * b.inverse() * a * b


@dataclass(frozen=True, slots=True)
class GroupMap:
    """A homomorphism given on generators; images indexed by source gen."""

    images: tuple[Word, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "images", tuple(self.images))


def apply_map(f: GroupMap, w: Word) -> Word:
    """Image of w under f, freely reduced."""
    syls: list[Syllable] = []
    for g, e in w.syllables:
        if g >= len(f.images):
            raise ValueError(f"generator x{g} has no image under the map")
        img = f.images[g] if e > 0 else f.images[g].inverse()
        for _ in range(abs(e)):
            syls.extend(img.syllables)
    return Word(tuple(syls))


def _relator_sort_key(w: Word) -> tuple:
    return (w.length(), w.syllables)


def default_generator_names(ngens: int) -> tuple[str, ...]:
    """a..z for the first 26 generators, then g26, g27, ..."""
    names = []
    for i in range(ngens):
        names.append(chr(ord("a") + i) if i < 26 else f"g{i}")
    return tuple(names)


@dataclass(frozen=True, slots=True)
class GroupPresentation:
    """<x0..x{ngens-1} | relators>, optionally with peripheral words.

    Relators are cyclically reduced, nonempty, and ordered by length then
    lexicographically so that identical groups enumerate identically.
    """

    ngens: int
    relators: tuple[Word, ...] = ()
    meridian: Word | None = None
    longitude: Word | None = None
    gen_names: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.ngens < 0:
            raise ValueError("generator count must be nonnegative")
        rels = []
        for r in self.relators:
            if not isinstance(r, Word):
                r = Word(tuple(r))
            if r.max_generator() >= self.ngens:
                raise ValueError(
                    f"relator {r} uses a generator outside x0..x{self.ngens - 1}"
                )
            r = r.cyclically_reduced()
            if not r.is_identity():
                rels.append(r)
        rels.sort(key=_relator_sort_key)
        object.__setattr__(self, "relators", tuple(rels))
        for name, w in (("meridian", self.meridian), ("longitude", self.longitude)):
            if w is not None and w.max_generator() >= self.ngens:
                raise ValueError(f"{name} word uses an undefined generator")
        if self.gen_names is not None:
            names = tuple(self.gen_names)
            if len(names) != self.ngens:
                raise ValueError("gen_names length must equal ngens")
            object.__setattr__(self, "gen_names", names)

    def names(self) -> tuple[str, ...]:
        return self.gen_names or default_generator_names(self.ngens)

    def total_relator_length(self) -> int:
        return sum(r.length() for r in self.relators)

    def describe(self) -> str:
        names = self.names()
        rels = ", ".join(format_word(r, names) for r in self.relators) or "-"
        return f"<{' '.join(names) or '-'} | {rels}>"


def quotient(p: GroupPresentation, extra_relators: Iterable[Word]) -> GroupPresentation:
    """Add relators; peripheral data carries over unchanged."""
    extra = tuple(extra_relators)
    for r in extra:
        if r.max_generator() >= p.ngens:
            raise ValueError(f"extra relator {r} uses an undefined generator")
    return GroupPresentation(
        ngens=p.ngens,
        relators=p.relators + extra,
        meridian=p.meridian,
        longitude=p.longitude,
        gen_names=p.gen_names,
    )


# --- relator normal forms, used for duplicate detection -------------------


def _letter_tuple(w: Word) -> tuple[int, ...]:
    # encode letters as single ints: 2g for x_g, 2g+1 for x_g^-1
    out = []
    for g, s in w.letters():
        out.append(2 * g if s > 0 else 2 * g + 1)
    return tuple(out)


def _cyclic_normal_form(w: Word) -> tuple[int, ...]:
    """Least rotation of the letter sequence of w and of w^-1."""
    best: tuple[int, ...] | None = None
    for cand in (w, w.inverse()):
        letters = _letter_tuple(cand)
        n = len(letters)
        for i in range(max(n, 1)):
            rot = letters[i:] + letters[:i]
            if best is None or rot < best:
                best = rot
    return best if best is not None else ()


def _word_from_letter_tuple(letters: tuple[int, ...]) -> Word:
    return Word(tuple((l // 2, 1 if l % 2 == 0 else -1) for l in letters))


# --- Tietze simplification -------------------------------------------------


def _substitute_generator(w: Word, gen: int, image: Word) -> Word:
    """Replace gen by image inside w (other generators unchanged)."""
    syls: list[Syllable] = []
    for g, e in w.syllables:
        if g != gen:
            syls.append((g, e))
            continue
        img = image if e > 0 else image.inverse()
        for _ in range(abs(e)):
            syls.extend(img.syllables)
    return Word(tuple(syls))


def _drop_generator(w: Word, gen: int) -> Word:
    """Renumber generators above gen down by one; gen must not occur."""
    return Word(tuple((g if g < gen else g - 1, e) for g, e in w.syllables))


def _dedupe(relators: list[Word]) -> list[Word]:
    seen: set[tuple[int, ...]] = set()
    out = []
    for r in relators:
        key = _cyclic_normal_form(r)
        if key and key not in seen:
            seen.add(key)
            out.append(r)
    return out


def _find_single_occurrence(
    relators: list[Word], protect: frozenset[int] = frozenset()
) -> tuple[int, int] | None:
    """(relator index, generator) where the generator occurs exactly once.

    The occurrence must be a single letter in that relator; candidates are
    ordered by relator length then generator index for determinism.
    Generators in ``protect`` are never offered for elimination.
    """
    best: tuple[int, int, int] | None = None
    counts: dict[int, int] = {}
    for r in relators:
        for g, e in r.syllables:
            counts[g] = counts.get(g, 0) + abs(e)
    for idx, r in enumerate(relators):
        per_gen: dict[int, int] = {}
        for g, e in r.syllables:
            per_gen[g] = per_gen.get(g, 0) + abs(e)
        for g, c in sorted(per_gen.items()):
            if c == 1 and g not in protect:
                key = (r.length(), g, idx)
                if best is None or key < best:
                    best = key
    if best is None:
        return None
    return best[2], best[1]


def _solve_for(r: Word, gen: int) -> Word:
    """Given relator r containing gen exactly once, express gen's value."""
    letters = list(r.letters())
    pos = next(i for i, (g, _) in enumerate(letters) if g == gen)
    sign = letters[pos][1]
    # rotate so the gen letter is first: r ~ g^sign * w  =>  g^sign = w^-1
    rest = letters[pos + 1 :] + letters[:pos]
    w = Word(tuple(rest))
    return w.inverse() if sign > 0 else w


def _try_subword_reductions(relators: list[Word], max_len: int) -> bool:
    """One pass of length-reducing substitutions between relator pairs.

    If more than half of (a rotation of) r appears inside s, the occurrence
    is replaced by the inverse of the shorter remainder.  Only strictly
    length-reducing rewrites are applied.  Returns True when any change fired.
    """
    changed = False
    for i, r in enumerate(relators):
        rl = _letter_tuple(r)
        L = len(rl)
        if L < 2:
            continue
        variants = set()
        for seq in (rl, _letter_tuple(r.inverse())):
            for k in range(L):
                variants.add(seq[k:] + seq[:k])
        half = L // 2 + 1
        for j, s in enumerate(relators):
            if i == j:
                continue
            sl = _letter_tuple(s)
            if len(sl) < half:
                continue
            for rot in sorted(variants):
                piece = rot[:half]
                # find piece inside sl
                for start in range(len(sl) - half + 1):
                    if tuple(sl[start : start + half]) == piece:
                        remainder = rot[half:]
                        inv = _word_from_letter_tuple(remainder).inverse()
                        new = (
                            _word_from_letter_tuple(sl[:start])
                            * inv
                            * _word_from_letter_tuple(sl[start + half :])
                        ).cyclically_reduced()
                        if new.length() < s.length() and new.length() <= max_len:
                            relators[j] = new
                            changed = True
                            break
                if changed:
                    break
            if changed:
                break
        if changed:
            break
    return changed


def tietze_simplify(p: GroupPresentation, budget: int) -> GroupPresentation:
    """Presentation hygiene: bounded, deterministic, never grows relators.

    Removes duplicate and trivial relators, eliminates any generator that
    occurs exactly once in some relator (when the substitution does not
    increase total relator length), and applies length-reducing subword
    substitutions.  `budget` bounds the number of rewrite passes.  Relator
    length is additionally capped at 10x the largest input relator.
    """
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    relators = list(p.relators)
    names = list(p.names())
    meridian = p.meridian
    longitude = p.longitude
    ngens = p.ngens
    max_len = max((r.length() for r in relators), default=0) * 10

    for _ in range(budget):
        before = (ngens, [r.syllables for r in relators])
        relators = _dedupe([r.cyclically_reduced() for r in relators])

        cand = _find_single_occurrence(relators)
        if cand is not None:
            idx, gen = cand
            image = _solve_for(relators[idx], gen)
            total_now = sum(r.length() for r in relators)
            new_rels = []
            ok = True
            for k, r in enumerate(relators):
                if k == idx:
                    continue
                sub = _substitute_generator(r, gen, image).cyclically_reduced()
                if sub.length() > max_len:
                    ok = False
                    break
                new_rels.append(sub)
            if ok and sum(r.length() for r in new_rels) <= total_now:
                relators = [_drop_generator(r, gen) for r in new_rels]
                image_dropped = _drop_generator(image, gen)
                if meridian is not None:
                    meridian = _drop_generator(
                        _substitute_generator(meridian, gen, image), gen
                    )
                if longitude is not None:
                    longitude = _drop_generator(
                        _substitute_generator(longitude, gen, image), gen
                    )
                del names[gen]
                ngens -= 1

        _try_subword_reductions(relators, max_len)

        after = (ngens, [r.syllables for r in relators])
        if after == before:
            break

    return GroupPresentation(
        ngens=ngens,
        relators=tuple(relators),
        meridian=meridian,
        longitude=longitude,
        gen_names=tuple(names),
    )


def collapse_presentation(
    p: GroupPresentation,
    max_relator_length: int = 4096,
    protect: tuple[int, ...] = (),
) -> GroupPresentation:
    """Eliminate generators before enumeration, tolerating relator growth.

    tietze_simplify never lets the total relator length grow, which leaves
    conjugation-shaped presentations (x_out = w x_in w^-1) untouched: every
    elimination there lengthens the other relators first.  Coset enumeration
    is usually far cheaper over two or three generators with long relators
    than over many short ones, so this routine keeps eliminating any
    generator that occurs as a single letter in some relator until none is
    left or a substituted relator would exceed max_relator_length.  Marked
    peripheral words are rewritten through every elimination; the result
    presents the same marked group.

    Generators listed in ``protect`` survive the collapse.  Keeping the
    meridian generator alive lets a caller enumerate its cyclic subgroup
    over a one-letter generator instead of a rewritten conjugation word.
    """
    relators = [r.cyclically_reduced() for r in p.relators]
    names = list(p.names())
    meridian = p.meridian
    longitude = p.longitude
    ngens = p.ngens
    kept = set(protect)

    while ngens > 1:
        relators = _dedupe(relators)
        cand = _find_single_occurrence(relators, frozenset(kept))
        if cand is None:
            break
        idx, gen = cand
        image = _solve_for(relators[idx], gen)
        new_rels = []
        ok = True
        for k, r in enumerate(relators):
            if k == idx:
                continue
            sub = _substitute_generator(r, gen, image).cyclically_reduced()
            if sub.length() > max_relator_length:
                ok = False
                break
            new_rels.append(sub)
        if not ok:
            break
        relators = [_drop_generator(r, gen) for r in new_rels]
        if meridian is not None:
            meridian = _drop_generator(
                _substitute_generator(meridian, gen, image), gen
            )
        if longitude is not None:
            longitude = _drop_generator(
                _substitute_generator(longitude, gen, image), gen
            )
        del names[gen]
        # Generator indices above the eliminated one shift down by one.
        kept = {g - 1 if g > gen else g for g in kept}
        ngens -= 1

    return GroupPresentation(
        ngens=ngens,
        relators=tuple(_dedupe(relators)),
        meridian=meridian,
        longitude=longitude,
        gen_names=tuple(names),
    )


# --- serialization ----------------------------------------------------------

_TOKEN_RE = re.compile(r"^([A-Za-z])(\d*)$")


def format_word(w: Word, names: Sequence[str]) -> str:
    """Letter form: inverses are capitalized, letters space-separated."""
    toks = []
    for g, s in w.letters():
        name = names[g]
        toks.append(name if s > 0 else name[0].upper() + name[1:])
    return " ".join(toks)


def parse_word(text: str, names: Sequence[str]) -> Word:
    index = {n: (i, 1) for i, n in enumerate(names)}
    index.update({n[0].upper() + n[1:]: (i, -1) for i, n in enumerate(names)})
    letters = []
    for tok in text.split():
        if tok not in index:
            raise ValueError(f"unknown generator token {tok!r}")
        g, s = index[tok]
        letters.append((g, s))
    return Word(tuple(letters))


def presentation_to_json(p: GroupPresentation) -> dict:
    names = p.names()
    doc: dict = {
        "generators": list(names),
        "relators": [format_word(r, names) for r in p.relators],
    }
    if p.meridian is not None:
        doc["meridian"] = format_word(p.meridian, names)
    if p.longitude is not None:
        doc["longitude"] = format_word(p.longitude, names)
    return doc


def presentation_from_json(doc: dict) -> GroupPresentation:
    names = tuple(doc["generators"])
    rel = tuple(parse_word(t, names) for t in doc.get("relators", ()))
    mer = doc.get("meridian")
    lon = doc.get("longitude")
    return GroupPresentation(
        ngens=len(names),
        relators=rel,
        meridian=parse_word(mer, names) if mer is not None else None,
        longitude=parse_word(lon, names) if lon is not None else None,
        gen_names=names,
    )
