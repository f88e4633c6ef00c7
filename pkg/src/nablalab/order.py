"""Finite posets and bounded lattices.

Subsets of a carrier are stored as int bitmasks (bit i set means element i is a
member).  Enumerations run in increasing bitmask order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .errors import (
    NoBot,
    NoJoin,
    NoMeet,
    NoResidual,
    NoTop,
    NotAntisymmetric,
    NotReflexive,
    NotTransitive,
)


def members(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(items: Iterable[int]) -> int:
    m = 0
    for i in items:
        m |= 1 << i
    return m


def full_mask(n: int) -> int:
    return (1 << n) - 1


@dataclass(frozen=True)
class FinitePoset:
    """Order on 0..n-1; ``up[i]`` is the bitmask of elements above or equal to i."""

    up: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.up)

    def leq(self, a: int, b: int) -> bool:
        return bool(self.up[a] >> b & 1)

    @cached_property
    def down(self) -> tuple[int, ...]:
        n = self.size
        return tuple(mask_of(j for j in range(n) if self.up[j] >> i & 1) for i in range(n))

    def matrix(self) -> list[list[int]]:
        n = self.size
        return [[int(self.leq(i, j)) for j in range(n)] for i in range(n)]

    def is_upset(self, mask: int) -> bool:
        return all(self.up[i] & ~mask == 0 for i in members(mask))

    def is_downset(self, mask: int) -> bool:
        return all(self.down[i] & ~mask == 0 for i in members(mask))

    def upclosure(self, mask: int) -> int:
        out = 0
        for i in members(mask):
            out |= self.up[i]
        return out

    def downclosure(self, mask: int) -> int:
        out = 0
        for i in members(mask):
            out |= self.down[i]
        return out

    @cached_property
    def upsets(self) -> tuple[int, ...]:
        return tuple(m for m in range(1 << self.size) if self.is_upset(m))

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        n = self.size
        out = []
        for a in range(n):
            for b in range(n):
                if a != b and self.leq(a, b):
                    between = (self.up[a] & self.down[b]) & ~((1 << a) | (1 << b))
                    if not between:
                        out.append((a, b))
        return tuple(out)

    def minimal(self) -> list[int]:
        return [i for i in range(self.size) if self.down[i] == 1 << i]

    def maximal(self) -> list[int]:
        return [i for i in range(self.size) if self.up[i] == 1 << i]


def validate_poset(relation: Sequence[Sequence]) -> FinitePoset:
    """Check a square 0/1 matrix is a partial order and wrap it."""
    n = len(relation)
    if any(len(row) != n for row in relation):
        raise ValueError("relation matrix must be square")
    rel = [[bool(x) for x in row] for row in relation]
    for i in range(n):
        if not rel[i][i]:
            raise NotReflexive(f"element {i} is not related to itself", witness=(i,))
    for i in range(n):
        for j in range(i + 1, n):
            if rel[i][j] and rel[j][i]:
                raise NotAntisymmetric(f"{i} and {j} are mutually related", witness=(i, j))
    for i in range(n):
        for j in range(n):
            if rel[i][j]:
                for k in range(n):
                    if rel[j][k] and not rel[i][k]:
                        raise NotTransitive(f"{i}<={j}<={k} but not {i}<={k}", witness=(i, j, k))
    return FinitePoset(tuple(mask_of(j for j in range(n) if rel[i][j]) for i in range(n)))


def poset_from_pairs(n: int, pairs: Iterable[tuple[int, int]]) -> FinitePoset:
    """Reflexive-transitive closure of ``pairs``, validated."""
    rel = [[i == j for j in range(n)] for i in range(n)]
    for a, b in pairs:
        rel[a][b] = True
    for k in range(n):
        for i in range(n):
            if rel[i][k]:
                for j in range(n):
                    if rel[k][j]:
                        rel[i][j] = True
    return validate_poset(rel)


def chain_poset(n: int) -> FinitePoset:
    return FinitePoset(tuple(full_mask(n) & ~full_mask(i) for i in range(n)))


def antichain_poset(n: int) -> FinitePoset:
    return FinitePoset(tuple(1 << i for i in range(n)))


def greatest(p: FinitePoset, mask: int):
    """The maximum of the subset ``mask``, or None."""
    for g in members(mask):
        if mask & ~p.down[g] == 0:
            return g
    return None


def least(p: FinitePoset, mask: int):
    for g in members(mask):
        if mask & ~p.up[g] == 0:
            return g
    return None


@dataclass(frozen=True)
class FiniteLattice:
    poset: FinitePoset
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]
    bot: int
    top: int
    labels: tuple[str, ...] | None = None

    @property
    def size(self) -> int:
        return self.poset.size

    def leq(self, a: int, b: int) -> bool:
        return self.poset.leq(a, b)

    @property
    def is_degenerate(self) -> bool:
        """The one-element lattice, where 0 = 1."""
        return self.size == 1

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i)

    @cached_property
    def distributive(self) -> bool:
        return is_distributive(self)[0]

    @cached_property
    def heyting(self):
        """Heyting implication table, or None when it is not total."""
        try:
            return heyting_implication(self)
        except NoResidual:
            return None

    def meet_all(self, items: Iterable[int]) -> int:
        out = self.top
        for x in items:
            out = self.meet[out][x]
        return out

    def join_all(self, items: Iterable[int]) -> int:
        out = self.bot
        for x in items:
            out = self.join[out][x]
        return out


def lattice_from_poset(p: FinitePoset, labels: Sequence[str] | None = None) -> FiniteLattice:
    n = p.size
    everything = full_mask(n)
    bot = least(p, everything) if n else None
    if bot is None:
        raise NoBot("no element below every other", witness=None)
    top = greatest(p, everything)
    if top is None:
        raise NoTop("no element above every other", witness=None)
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            m = greatest(p, p.down[a] & p.down[b])
            if m is None:
                raise NoMeet(f"{a} and {b} have no greatest lower bound", witness=(a, b))
            j = least(p, p.up[a] & p.up[b])
            if j is None:
                raise NoJoin(f"{a} and {b} have no least upper bound", witness=(a, b))
            meet[a][b] = meet[b][a] = m
            join[a][b] = join[b][a] = j
    return FiniteLattice(
        p,
        tuple(map(tuple, meet)),
        tuple(map(tuple, join)),
        bot,
        top,
        tuple(labels) if labels is not None else None,
    )


def lattice_from_relation(relation, labels=None) -> FiniteLattice:
    return lattice_from_poset(validate_poset(relation), labels)


def is_distributive(l: FiniteLattice) -> tuple[bool, tuple[int, int, int] | None]:
    meet, join = l.meet, l.join
    n = l.size
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]]:
                    return False, (a, b, c)
    return True, None


def residual_table(l: FiniteLattice, scale: Sequence[int]):
    """For each (a, b) the greatest c with scale[c] ∧ a ≤ b.

    Raises NoResidual with the first pair (a, b) that has no such maximum.
    """
    n = l.size
    meet, down = l.meet, l.poset.down
    table = []
    for a in range(n):
        row = []
        for b in range(n):
            below_b = down[b]
            cands = 0
            for c in range(n):
                if below_b >> meet[scale[c]][a] & 1:
                    cands |= 1 << c
            g = greatest(l.poset, cands)
            if g is None:
                raise NoResidual(f"no greatest residual at ({a}, {b})", witness=(a, b))
            row.append(g)
        table.append(tuple(row))
    return tuple(table)


def heyting_implication(l: FiniteLattice):
    return residual_table(l, range(l.size))


@lru_cache(maxsize=4096)
def upset_lattice(p: FinitePoset) -> tuple[FiniteLattice, tuple[int, ...]]:
    """Lattice of upsets of ``p`` under inclusion, with each element's upset bitmask."""
    ups = p.upsets
    index = {u: i for i, u in enumerate(ups)}
    m = len(ups)
    up = tuple(mask_of(j for j in range(m) if ups[i] & ~ups[j] == 0) for i in range(m))
    meet = tuple(tuple(index[ups[i] & ups[j]] for j in range(m)) for i in range(m))
    join = tuple(tuple(index[ups[i] | ups[j]] for j in range(m)) for i in range(m))
    labels = tuple("{" + ",".join(map(str, members(u))) + "}" for u in ups)
    lat = FiniteLattice(FinitePoset(up), meet, join, 0, m - 1, labels)
    return lat, ups


def is_prime_filter(l: FiniteLattice, mask: int) -> bool:
    n = l.size
    if mask == 0 or mask == full_mask(n):
        return False
    for a in members(mask):
        if l.poset.up[a] & ~mask:
            return False
        for b in members(mask):
            if not mask >> l.meet[a][b] & 1:
                return False
    for a in range(n):
        for b in range(n):
            if mask >> l.join[a][b] & 1 and not (mask >> a & 1 or mask >> b & 1):
                return False
    return True


def prime_filters(l: FiniteLattice) -> list[int]:
    """Prime filters as bitmasks, in increasing bitmask order.

    Every filter of a finite lattice is principal, so candidates are the
    principal upsets ↑a for a ≠ 0; a candidate is kept when a is join-prime.
    """
    out = []
    for a in range(l.size):
        if a == l.bot:
            continue
        if all(l.leq(a, b) or l.leq(a, c)
               for b in range(l.size) for c in range(l.size)
               if l.leq(a, l.join[b][c])):
            out.append(l.poset.up[a])
    return sorted(out)


def join_irreducibles(l: FiniteLattice) -> list[int]:
    """Non-bottom elements that are not the join of two strictly smaller elements."""
    out = []
    for a in range(l.size):
        if a == l.bot:
            continue
        strictly_below = l.poset.down[a] & ~(1 << a)
        if l.join_all(members(strictly_below)) != a:
            out.append(a)
    return out


def check_lattice_morphism(src: FiniteLattice, dst: FiniteLattice, fmap: Sequence[int]):
    """(True, None) or (False, (clause, args...)) for the first failed equation."""
    if fmap[src.bot] != dst.bot:
        return False, ("bot", src.bot)
    if fmap[src.top] != dst.top:
        return False, ("top", src.top)
    for a in range(src.size):
        for b in range(src.size):
            if fmap[src.meet[a][b]] != dst.meet[fmap[a]][fmap[b]]:
                return False, ("meet", a, b)
            if fmap[src.join[a][b]] != dst.join[fmap[a]][fmap[b]]:
                return False, ("join", a, b)
    return True, None


def export_hasse(p: FinitePoset, labels: Sequence[str] | None = None) -> str:
    """Graphviz DOT text of the cover relation, drawn bottom to top."""
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for i in range(p.size):
        name = labels[i] if labels else str(i)
        name = name.replace('"', '\\"')
        lines.append(f'  n{i} [label="{name}"];')
    for a, b in p.covers:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# Small named lattices used throughout tests and the catalog.

def chain_lattice(n: int) -> FiniteLattice:
    return lattice_from_poset(chain_poset(n))


def boolean_lattice(k: int) -> FiniteLattice:
    """Subsets of a k-set, element i being the subset with bitmask i."""
    n = 1 << k
    return lattice_from_poset(FinitePoset(tuple(mask_of(j for j in range(n) if i & ~j == 0) for i in range(n))))


def diamond_m3() -> FiniteLattice:
    """0, three pairwise incomparable atoms 1..3, top 4."""
    return lattice_from_poset(poset_from_pairs(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]),
                              ["0", "a", "b", "c", "1"])


def pentagon_n5() -> FiniteLattice:
    """0 < a < b < 1 and 0 < c < 1 with c incomparable to a, b."""
    return lattice_from_poset(poset_from_pairs(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]),
                              ["0", "a", "b", "c", "1"])
