"""Exhaustive catalogs of small structures, up to isomorphism where cheap.

Size caps default to DEFAULT_CAP and can be raised with NABLA_MAX_SIZE.
"""

from __future__ import annotations

import os
from functools import lru_cache
from itertools import permutations

from .algebra import NablaAlgebra, enumerate_nabla_algebras
from .errors import CapExceeded, NablaError
from .kripke import KripkeFrame, is_compatible, normal_frame
from .order import FiniteLattice, FinitePoset, lattice_from_poset, mask_of, members

DEFAULT_CAP = 6


def size_cap() -> int:
    raw = os.environ.get("NABLA_MAX_SIZE")
    if raw is None:
        return DEFAULT_CAP
    try:
        return int(raw)
    except ValueError:
        raise CapExceeded(f"NABLA_MAX_SIZE must be an integer, got {raw!r}")


def check_cap(n: int, what="size"):
    cap = size_cap()
    if n > cap:
        raise CapExceeded(f"{what} {n} exceeds cap {cap} (set NABLA_MAX_SIZE to raise it)", witness=n)


def _relabel_up(up, perm):
    n = len(up)
    out = [0] * n
    for i in range(n):
        out[perm[i]] = mask_of(perm[j] for j in members(up[i]))
    return tuple(out)


def _canonical(up):
    return min(_relabel_up(up, perm) for perm in permutations(range(len(up))))


@lru_cache(maxsize=None)
def posets(n: int) -> tuple[FinitePoset, ...]:
    """One representative per isomorphism class of posets on n points.

    Classes on n points are obtained by adding a new maximal point, with any
    downset of an (n-1)-point representative below it, then deduplicating by
    the lexicographically least relabelling.
    """
    if n == 0:
        return (FinitePoset(()),)
    seen = {}
    for base in posets(n - 1):
        for below in range(1 << (n - 1)):
            if not base.is_downset(below):
                continue
            up = tuple(u | (1 << (n - 1)) if below >> i & 1 else u for i, u in enumerate(base.up))
            up = up + (1 << (n - 1),)
            key = _canonical(up)
            if key not in seen:
                seen[key] = FinitePoset(key)
    return tuple(seen[k] for k in sorted(seen))


@lru_cache(maxsize=None)
def lattices(size: int) -> tuple[FiniteLattice, ...]:
    """Bounded lattices with exactly ``size`` elements, one per isomorphism class."""
    if size == 0:
        return ()
    out = []
    for p in posets(size):
        try:
            out.append(lattice_from_poset(p))
        except NablaError:
            continue
    return tuple(out)


def lattices_up_to(max_size: int) -> list[FiniteLattice]:
    return [l for s in range(1, max_size + 1) for l in lattices(s)]


@lru_cache(maxsize=None)
def algebras(size: int) -> tuple[NablaAlgebra, ...]:
    return tuple(a for l in lattices(size) for a in enumerate_nabla_algebras(l))


def algebras_up_to(max_size: int) -> list[NablaAlgebra]:
    return [a for s in range(1, max_size + 1) for a in algebras(s)]


def _automorphisms(p: FinitePoset):
    return [perm for perm in permutations(range(p.size)) if _relabel_up(p.up, perm) == p.up]


def _relabel_rel(rel, perm):
    out = [0] * len(rel)
    for i, r in enumerate(rel):
        out[perm[i]] = mask_of(perm[j] for j in members(r))
    return tuple(out)


def compatible_relations(p: FinitePoset):
    """Every relation compatible with the order of p, as successor bitmasks.

    Each row must be an upset, and rows grow as the point goes down.
    """
    n = p.size
    ups = p.upsets
    rows = [0] * n
    order = sorted(range(n), key=lambda x: -bin(p.down[x]).count("1"))

    def extend(i):
        if i == n:
            yield tuple(rows)
            return
        x = order[i]
        for u in ups:
            if all(rows[y] & ~u == 0 for y in order[:i] if p.leq(x, y)) and \
               all(u & ~rows[y] == 0 for y in order[:i] if p.leq(y, x)):
                rows[x] = u
                yield from extend(i + 1)

    yield from extend(0)


@lru_cache(maxsize=None)
def frames(n: int) -> tuple[KripkeFrame, ...]:
    """Kripke frames on n points up to isomorphism."""
    out = []
    for p in posets(n):
        autos = _automorphisms(p)
        for rel in compatible_relations(p):
            if all(_relabel_rel(rel, a) >= rel for a in autos):
                out.append(KripkeFrame(p, rel))
    return tuple(out)


def frames_up_to(max_points: int) -> list[KripkeFrame]:
    return [f for n in range(0, max_points + 1) for f in frames(n)]


def monotone_maps(p: FinitePoset):
    n = p.size
    table = [0] * n

    def extend(i):
        if i == n:
            yield tuple(table)
            return
        for v in range(n):
            if all((not p.leq(j, i) or p.leq(table[j], v)) and (not p.leq(i, j) or p.leq(v, table[j]))
                   for j in range(i)):
                table[i] = v
                yield from extend(i + 1)

    yield from extend(0)


@lru_cache(maxsize=None)
def normal_frames(n: int) -> tuple[KripkeFrame, ...]:
    """Frames x R y ⟺ x ≤ pi(y) for every monotone pi on every poset of n points."""
    return tuple(normal_frame(p, pi) for p in posets(n) for pi in monotone_maps(p))


def is_frame(p: FinitePoset, rel) -> bool:
    return is_compatible(p, rel)
