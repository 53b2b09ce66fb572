"""Coset enumeration and subgroup presentations.

The enumerator is the relator-based HLT strategy with coincidence handling
and a lookahead pass when the table fills up.  Everything is deterministic:
relators are scanned in the presentation's normalized order, undefined
entries are filled lowest coset first, lowest column first, and coincidences
always keep the smallest coset number as representative.  Outcomes are
values, not exceptions: either Complete(index) with the finished table or
Overflow with the limit that was hit.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .groups import GroupPresentation, Word, _cyclic_normal_form

DEFAULT_MAX_COSETS = 100_000


class EnumerationOverflow(RuntimeError):
    """Raised by callers that need a completed table and did not get one."""


class _TableFull(Exception):
    pass


class _Deadline(Exception):
    pass


def word_columns(w: Word) -> tuple[int, ...]:
    """Letters as table columns: 2g for x_g, 2g+1 for its inverse."""
    return tuple(2 * g if s > 0 else 2 * g + 1 for g, s in w.letters())


class CosetTable:
    """Rows are cosets, columns alternate generator and inverse."""

    __slots__ = (
        "ngens",
        "ncols",
        "table",
        "p",
        "defined",
        "limit",
        "deadline",
        "_ticks",
        "deductions",
    )

    def __init__(self, ngens: int, limit: int, deadline: float | None = None):
        self.ngens = ngens
        self.ncols = 2 * ngens
        self.table: list[list[int | None]] = [[None] * self.ncols]
        self.p: list[int] = [0]
        self.defined = 1
        self.limit = limit
        self.deadline = deadline
        self._ticks = 0
        # When not None, every new table entry is pushed here so a
        # deduction-driven strategy can rescan the relators through it.
        self.deductions: list[tuple[int, int]] | None = None

    # -- bookkeeping ---------------------------------------------------

    def n_rows(self) -> int:
        return len(self.table)

    def is_alive(self, c: int) -> bool:
        return self.p[c] == c

    def live_count(self) -> int:
        return sum(1 for c, r in enumerate(self.p) if c == r)

    def define(self, alpha: int, col: int) -> int:
        if len(self.table) >= self.limit:
            raise _TableFull
        self._ticks += 1
        if self.deadline is not None and self._ticks & 1023 == 0:
            if time.monotonic() > self.deadline:
                raise _Deadline
        beta = len(self.table)
        self.table.append([None] * self.ncols)
        self.p.append(beta)
        self.defined += 1
        self.table[alpha][col] = beta
        self.table[beta][col ^ 1] = alpha
        if self.deductions is not None:
            self.deductions.append((alpha, col))
        return beta

    def rep(self, k: int) -> int:
        p = self.p
        r = k
        while p[r] != r:
            r = p[r]
        while p[k] != r:
            p[k], k = r, p[k]
        return r

    def _merge(self, k: int, l: int, queue: list[int]) -> None:
        phi, psi = self.rep(k), self.rep(l)
        if phi != psi:
            mu, nu = (phi, psi) if phi < psi else (psi, phi)
            self.p[nu] = mu
            queue.append(nu)

    def coincidence(self, alpha: int, beta: int) -> None:
        queue: list[int] = []
        self._merge(alpha, beta, queue)
        qi = 0
        while qi < len(queue):
            gamma = queue[qi]
            qi += 1
            row = self.table[gamma]
            for x in range(self.ncols):
                delta = row[x]
                if delta is None:
                    continue
                self.table[delta][x ^ 1] = None
                mu = self.rep(gamma)
                nu = self.rep(delta)
                if self.table[mu][x] is not None:
                    self._merge(nu, self.table[mu][x], queue)
                elif self.table[nu][x ^ 1] is not None:
                    self._merge(mu, self.table[nu][x ^ 1], queue)
                else:
                    self.table[mu][x] = nu
                    self.table[nu][x ^ 1] = mu
                    if self.deductions is not None:
                        self.deductions.append((mu, x))

    # -- scanning --------------------------------------------------------

    def scan(self, alpha: int, word: tuple[int, ...], fill: bool) -> None:
        table = self.table
        f, i = alpha, 0
        b, j = alpha, len(word) - 1
        while True:
            while i <= j:
                nxt = table[f][word[i]]
                if nxt is None:
                    break
                f = nxt
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i:
                prev = table[b][word[j] ^ 1]
                if prev is None:
                    break
                b = prev
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                if self.deductions is not None:
                    self.deductions.append((f, word[i]))
                return
            if not fill:
                return
            self.define(f, word[i])

    def lookahead(self, relators: list[tuple[int, ...]]) -> None:
        for alpha in range(len(self.table)):
            if not self.is_alive(alpha):
                continue
            for r in relators:
                if not self.is_alive(alpha):
                    break
                self.scan(alpha, r, fill=False)

    def compress(self) -> int:
        live = [c for c in range(len(self.table)) if self.p[c] == c]
        idx = {c: i for i, c in enumerate(live)}
        self.table = [
            [idx[self.rep(v)] if v is not None else None for v in self.table[c]]
            for c in live
        ]
        freed = len(self.p) - len(live)
        self.p = list(range(len(live)))
        return freed

    def standardize(self) -> None:
        n = len(self.table)
        order: dict[int, int] = {0: 0}
        queue = [0]
        qi = 0
        while qi < len(queue):
            c = queue[qi]
            qi += 1
            for col in range(self.ncols):
                v = self.table[c][col]
                if v is not None and v not in order:
                    order[v] = len(order)
                    queue.append(v)
        for c in range(n):
            order.setdefault(c, len(order))
        new: list[list[int | None]] = [[] for _ in range(n)]
        for c in range(n):
            new[order[c]] = [
                order[v] if v is not None else None for v in self.table[c]
            ]
        self.table = new

    def trace(self, start: int, word: tuple[int, ...]) -> int | None:
        c = start
        for col in word:
            v = self.table[c][col]
            if v is None:
                return None
            c = v
        return c

    def is_complete(self) -> bool:
        return all(
            v is not None for c in range(len(self.table)) for v in self.table[c]
        )


@dataclass(frozen=True, slots=True)
class EnumerationResult:
    complete: bool
    index: int | None
    cosets_defined: int
    max_cosets: int
    reason: str | None = None  # "max_cosets" | "timeout" when incomplete
    table: CosetTable | None = None

    def stats(self) -> dict:
        return {
            "complete": self.complete,
            "index": self.index,
            "cosets_defined": self.cosets_defined,
            "max_cosets": self.max_cosets,
            "reason": self.reason,
        }


def _overflow(table: CosetTable, max_cosets: int, reason: str) -> EnumerationResult:
    return EnumerationResult(
        complete=False,
        index=None,
        cosets_defined=table.defined,
        max_cosets=max_cosets,
        reason=reason,
    )


def _finish(table: CosetTable, max_cosets: int) -> EnumerationResult:
    table.compress()
    table.standardize()
    return EnumerationResult(
        complete=True,
        index=len(table.table),
        cosets_defined=table.defined,
        max_cosets=max_cosets,
        table=table,
    )


def _hlt(
    relators: list[tuple[int, ...]],
    subgroup_cols: list[tuple[int, ...]],
    ngens: int,
    max_cosets: int,
    deadline: float | None,
) -> EnumerationResult:
    table = CosetTable(ngens, max_cosets, deadline)
    while True:
        try:
            for w in subgroup_cols:
                table.scan(0, w, fill=True)
            alpha = 0
            while alpha < len(table.table):
                if table.is_alive(alpha):
                    for r in relators:
                        if not table.is_alive(alpha):
                            break
                        table.scan(alpha, r, fill=True)
                    if table.is_alive(alpha):
                        row = table.table[alpha]
                        for col in range(table.ncols):
                            if row[col] is None:
                                table.define(alpha, col)
                alpha += 1
            break
        except _TableFull:
            table.lookahead(relators)
            freed = table.compress()
            # A lookahead that recovers under 5% of the budget is thrashing,
            # not converging; repeated full rescans would burn seconds for a
            # few hundred cosets of headroom.  Call the budget exhausted.
            if freed < max(1, max_cosets // 20) or len(table.table) >= max_cosets:
                return _overflow(table, max_cosets, "max_cosets")
        except _Deadline:
            return _overflow(table, max_cosets, "timeout")
    return _finish(table, max_cosets)


def _rotations_by_first(
    relators: list[tuple[int, ...]], ncols: int
) -> list[list[tuple[int, ...]]]:
    """Cyclic rotations of every relator, grouped by leading column."""
    by_first: list[list[tuple[int, ...]]] = [[] for _ in range(ncols)]
    seen: list[set[tuple[int, ...]]] = [set() for _ in range(ncols)]
    for r in relators:
        for i in range(len(r)):
            rot = r[i:] + r[:i]
            if rot not in seen[rot[0]]:
                seen[rot[0]].add(rot)
                by_first[rot[0]].append(rot)
    return by_first


def _felsch(
    relators: list[tuple[int, ...]],
    subgroup_cols: list[tuple[int, ...]],
    ngens: int,
    max_cosets: int,
    deadline: float | None,
) -> EnumerationResult:
    """Deduction-driven enumeration.

    Every new table entry is rescanned through every relator rotation that
    starts with its column, so consequences propagate before any new coset
    is defined.  Needs far fewer cosets than the relator-based pass on
    presentations with long relators and small index, at a higher cost per
    definition.  A final silent full pass certifies the finished table.
    """
    table = CosetTable(ngens, max_cosets, deadline)
    table.deductions = []
    by_first = _rotations_by_first(relators, table.ncols)

    def drain() -> None:
        ded = table.deductions
        assert ded is not None
        while ded:
            a, x = ded.pop()
            a = table.rep(a)
            b = table.table[a][x]
            if b is None:
                continue
            for rot in by_first[x]:
                table.scan(a, rot, fill=False)
                if table.p[a] != a:
                    break
            b = table.rep(b)
            for rot in by_first[x ^ 1]:
                table.scan(b, rot, fill=False)
                if table.p[b] != b:
                    break

    def complete_for_live() -> bool:
        return all(
            v is not None
            for c in range(len(table.table))
            if table.is_alive(c)
            for v in table.table[c]
        )

    try:
        for w in subgroup_cols:
            table.scan(0, w, fill=True)
        drain()
        alpha = 0
        while True:
            while alpha < len(table.table) and (
                not table.is_alive(alpha)
                or all(v is not None for v in table.table[alpha])
            ):
                alpha += 1
            if alpha >= len(table.table):
                # Candidate completion: one full non-defining pass over the
                # subgroup words and every relator must leave no open entry,
                # otherwise its coincidences reopened the table.
                for w in subgroup_cols:
                    table.scan(0, w, fill=False)
                table.lookahead(relators)
                drain()
                if complete_for_live():
                    break
                alpha = 0
                continue
            row = table.table[alpha]
            col = next(c for c in range(table.ncols) if row[c] is None)
            try:
                table.define(alpha, col)
            except _TableFull:
                if table.compress() == 0:
                    return _overflow(table, max_cosets, "max_cosets")
                alpha = 0
                continue
            drain()
    except _Deadline:
        return _overflow(table, max_cosets, "timeout")

    return _finish(table, max_cosets)


def todd_coxeter(
    p: GroupPresentation,
    subgroup: list[Word] | tuple[Word, ...] = (),
    max_cosets: int = DEFAULT_MAX_COSETS,
    deadline: float | None = None,
    strategy: str = "hlt",
) -> EnumerationResult:
    """Enumerate cosets of <subgroup> in the presented group.

    Returns Complete(index) with a compressed, standardized table, or an
    Overflow result naming the exhausted limit.  A later retry with a larger
    limit can only turn Overflow into Complete, never change an index.  The
    default "hlt" strategy scans whole relators and recovers space through
    lookahead; "felsch" is deduction-driven and defines far fewer cosets on
    presentations with heavy cancellation; "auto" runs hlt first and retries
    with felsch when the coset budget runs out.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be positive")
    if strategy not in ("auto", "hlt", "felsch"):
        raise ValueError("strategy must be auto, hlt, or felsch")
    relators = [word_columns(r) for r in p.relators]
    subgroup_cols = [word_columns(w) for w in subgroup]
    for w in subgroup:
        if w.max_generator() >= p.ngens:
            raise ValueError("subgroup word uses an undefined generator")

    if strategy != "felsch":
        result = _hlt(relators, subgroup_cols, p.ngens, max_cosets, deadline)
        if result.complete or strategy == "hlt" or result.reason == "timeout":
            return result
    return _felsch(relators, subgroup_cols, p.ngens, max_cosets, deadline)


@dataclass(frozen=True, slots=True)
class SubgroupPresentation:
    """Subgroup presentation on Schreier generators plus rewriting data."""

    presentation: GroupPresentation
    index: int
    transversal: tuple[Word, ...]  # coset -> transversal word in the big group
    schreier_words: tuple[Word, ...]  # subgroup generator -> word in the big group
    table: CosetTable
    _tree: frozenset[tuple[int, int]]
    _gen_index: dict[tuple[int, int], int]

    def rewrite(self, w: Word) -> Word:
        """Rewrite a word of the big group lying in the subgroup."""
        return self._rewrite_from(0, w, expect_return=True)

    def _rewrite_from(self, start: int, w: Word, expect_return: bool) -> Word:
        table = self.table.table
        out: list[tuple[int, int]] = []
        c = start
        for g, s in w.letters():
            if s > 0:
                if (c, g) not in self._tree:
                    out.append((self._gen_index[(c, g)], 1))
                c = table[c][2 * g]
            else:
                prev = table[c][2 * g + 1]
                if (prev, g) not in self._tree:
                    out.append((self._gen_index[(prev, g)], -1))
                c = prev
        if expect_return and c != start:
            raise ValueError("word does not lie in the subgroup")
        return Word(tuple(out))


def reidemeister_schreier(
    p: GroupPresentation,
    subgroup: list[Word] | tuple[Word, ...],
    max_cosets: int = DEFAULT_MAX_COSETS,
    deadline: float | None = None,
) -> SubgroupPresentation:
    """Present the subgroup generated by the given words.

    The transversal is Schreier (BFS over the standardized table, columns in
    generator order), generators are the non-tree table edges, and relators
    are the rewrites of every conjugate of every relator by a transversal
    representative.  The free rank bookkeeping index*(ngens-1)+1 holds by
    construction and is asserted.
    """
    result = todd_coxeter(p, subgroup, max_cosets, deadline)
    if not result.complete:
        raise EnumerationOverflow(
            f"coset enumeration exhausted {result.reason} "
            f"(defined {result.cosets_defined}, limit {result.max_cosets})"
        )
    table = result.table
    assert table is not None
    n = result.index or 1

    transversal: list[Word | None] = [None] * n
    transversal[0] = Word.identity()
    tree: set[tuple[int, int]] = set()
    queue = [0]
    qi = 0
    while qi < len(queue):
        c = queue[qi]
        qi += 1
        for col in range(table.ncols):
            v = table.table[c][col]
            if v is not None and transversal[v] is None:
                g = col >> 1
                step = 1 if col % 2 == 0 else -1
                transversal[v] = transversal[c] * Word.gen(g, step)
                tree.add((c, g) if step > 0 else (v, g))
                queue.append(v)
    if any(t is None for t in transversal):
        raise AssertionError("coset table is not connected")

    gen_index: dict[tuple[int, int], int] = {}
    schreier_words: list[Word] = []
    for c in range(n):
        for g in range(p.ngens):
            if (c, g) in tree:
                continue
            target = table.table[c][2 * g]
            gen_index[(c, g)] = len(schreier_words)
            schreier_words.append(
                transversal[c] * Word.gen(g) * transversal[target].inverse()
            )
    if p.ngens > 0 and len(schreier_words) != n * (p.ngens - 1) + 1:
        raise AssertionError("Schreier generator count must be n*(rank-1)+1")

    sub = SubgroupPresentation(
        presentation=GroupPresentation(ngens=len(schreier_words)),
        index=n,
        transversal=tuple(transversal),
        schreier_words=tuple(schreier_words),
        table=table,
        _tree=frozenset(tree),
        _gen_index=gen_index,
    )

    relators: list[Word] = []
    seen: set[tuple[int, ...]] = set()
    for c in range(n):
        for r in p.relators:
            rel = sub._rewrite_from(c, r, expect_return=True)
            rel = rel.cyclically_reduced()
            if rel.is_identity():
                continue
            key = _cyclic_normal_form(rel)
            if key not in seen:
                seen.add(key)
                relators.append(rel)

    final = GroupPresentation(ngens=len(schreier_words), relators=tuple(relators))
    return SubgroupPresentation(
        presentation=final,
        index=n,
        transversal=sub.transversal,
        schreier_words=sub.schreier_words,
        table=table,
        _tree=sub._tree,
        _gen_index=sub._gen_index,
    )
