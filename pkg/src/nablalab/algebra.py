"""∇-algebras: a bounded lattice with a unary ∇ and a binary → such that
∇c ∧ a ≤ b exactly when c ≤ a → b."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .errors import InternalInconsistency, NoResidual
from .order import (
    FiniteLattice,
    FinitePoset,
    check_lattice_morphism,
    full_mask,
    greatest,
    is_distributive,
    lattice_from_poset,
    mask_of,
    members,
    residual_table,
)

TAGS = ("D", "H", "N", "R", "L", "Fa", "Fu")
FRAME_TAGS = ("N", "R", "L", "Fa", "Fu")


@dataclass(frozen=True)
class NablaAlgebra:
    lattice: FiniteLattice
    nabla: tuple[int, ...]
    arrow: tuple[tuple[int, ...], ...]
    explicit_heyting: bool = False

    @property
    def size(self) -> int:
        return self.lattice.size

    @classmethod
    def from_nabla(cls, lattice: FiniteLattice, nabla: Sequence[int], explicit_heyting=False):
        return cls(lattice, tuple(nabla), residual_from_nabla(lattice, nabla), explicit_heyting)

    @cached_property
    def box(self) -> tuple[int, ...]:
        return box_op(self)

    @cached_property
    def tags(self) -> frozenset:
        return classify(self).tags


def residual_from_nabla(l: FiniteLattice, nabla: Sequence[int]):
    """arrow(a, b) = greatest c with ∇c ∧ a ≤ b; NoResidual when it does not exist."""
    if len(nabla) != l.size:
        raise ValueError("nabla table length must equal lattice size")
    return residual_table(l, nabla)


def left_algebra(l: FiniteLattice) -> NablaAlgebra:
    """∇ constantly bottom, → constantly top."""
    return NablaAlgebra.from_nabla(l, [l.bot] * l.size)


def heyting_nabla_algebra(l: FiniteLattice, explicit_heyting=True) -> NablaAlgebra:
    """∇ the identity, so → is the Heyting implication."""
    return NablaAlgebra.from_nabla(l, range(l.size), explicit_heyting)


def verify_nabla_algebra(a: NablaAlgebra):
    """(True, None) or (False, (x, y, c)) for the first triple breaking the adjunction."""
    l = a.lattice
    n = l.size
    if len(a.nabla) != n or len(a.arrow) != n or any(len(r) != n for r in a.arrow):
        return False, ("shape",)
    leq, meet = l.leq, l.meet
    for x in range(n):
        for y in range(n):
            r = a.arrow[x][y]
            for c in range(n):
                if leq(meet[a.nabla[c]][x], y) != leq(c, r):
                    return False, (x, y, c)
    return True, None


def verify_by_monotonicity(a: NablaAlgebra):
    """Equivalent adjunction test: ∇ monotone, → antitone/monotone, counit and unit.

    Returns (ok, witness) where the witness names the failed clause.
    """
    l = a.lattice
    n = l.size
    leq, meet = l.leq, l.meet
    nab, arr = a.nabla, a.arrow
    for x in range(n):
        for y in range(n):
            if leq(x, y):
                if not leq(nab[x], nab[y]):
                    return False, ("nabla-monotone", x, y)
                for z in range(n):
                    if not leq(arr[y][z], arr[x][z]):
                        return False, ("arrow-antitone", x, y, z)
                    if not leq(arr[z][x], arr[z][y]):
                        return False, ("arrow-monotone", z, x, y)
    for x in range(n):
        for y in range(n):
            if not leq(meet[nab[arr[x][y]]][x], y):
                return False, ("counit", x, y)
            if not leq(y, arr[x][meet[nab[y]][x]]):
                return False, ("unit", x, y)
    return True, None


def box_op(a: NablaAlgebra) -> tuple[int, ...]:
    top = a.lattice.top
    return tuple(a.arrow[top][x] for x in range(a.size))


@dataclass(frozen=True)
class Classification:
    tags: frozenset
    witnesses: dict = field(default_factory=dict, compare=False)

    def __contains__(self, tag):
        return tag in self.tags

    def sorted(self) -> list[str]:
        return [t for t in TAGS if t in self.tags]


def _first_failure(pairs):
    for w in pairs:
        return w
    return None


def classify(a: NablaAlgebra) -> Classification:
    l = a.lattice
    n = l.size
    rng = range(n)
    leq, meet = l.leq, l.meet
    nab = a.nabla
    box = box_op(a)
    witnesses = {}

    if not l.distributive:
        witnesses["D"] = is_distributive(l)[1]
    if l.heyting is None:
        try:
            residual_table(l, range(n))
        except NoResidual as e:
            witnesses["H"] = e.witness
    if nab[l.top] != l.top:
        witnesses["N"] = (l.top,)
    else:
        w = _first_failure((x, y) for x in rng for y in rng if nab[meet[x][y]] != meet[nab[x]][nab[y]])
        if w is not None:
            witnesses["N"] = w
    w = _first_failure((x,) for x in rng if not leq(x, nab[x]))
    if w is not None:
        witnesses["R"] = w
    w = _first_failure((x,) for x in rng if not leq(nab[x], x))
    if w is not None:
        witnesses["L"] = w

    full = set(rng)
    fa = [set(nab) == full, len(set(box)) == n, all(nab[box[x]] == x for x in rng)]
    fu = [set(box) == full, len(set(nab)) == n, all(box[nab[x]] == x for x in rng)]
    if len(set(fa)) != 1:
        raise InternalInconsistency("Fa characterizations disagree", witness=tuple(fa))
    if len(set(fu)) != 1:
        raise InternalInconsistency("Fu characterizations disagree", witness=tuple(fu))
    if not fa[0]:
        witnesses["Fa"] = (min(full - set(nab)),)
    if not fu[0]:
        witnesses["Fu"] = (min(full - set(box)),)
    return Classification(frozenset(t for t in TAGS if t not in witnesses), witnesses)


@dataclass(frozen=True)
class NablaMorphism:
    source: NablaAlgebra
    target: NablaAlgebra
    map: tuple[int, ...]
    heyting: bool = False


def check_morphism(m: NablaMorphism):
    """(True, None) or (False, (clause, args...))."""
    s, t, f = m.source, m.target, m.map
    if len(f) != s.size or any(not 0 <= v < t.size for v in f):
        return False, ("not-total",)
    ok, w = check_lattice_morphism(s.lattice, t.lattice, f)
    if not ok:
        return ok, w
    n = s.size
    for x in range(n):
        if f[s.nabla[x]] != t.nabla[f[x]]:
            return False, ("nabla", x)
    for x in range(n):
        for y in range(n):
            if f[s.arrow[x][y]] != t.arrow[f[x]][f[y]]:
                return False, ("arrow", x, y)
    if m.heyting:
        hs, ht = s.lattice.heyting, t.lattice.heyting
        if hs is None or ht is None:
            return False, ("heyting-missing",)
        for x in range(n):
            for y in range(n):
                if f[hs[x][y]] != ht[f[x]][f[y]]:
                    return False, ("heyting", x, y)
    return True, None


def _monotone_zero_maps(l: FiniteLattice):
    """Monotone unary tables with ∇0 = 0, in lexicographic order.

    A residual with a = 1 makes ∇ a left adjoint, so nothing outside this set
    can have a total residual.
    """
    n = l.size
    leq = l.leq
    table = [0] * n

    def extend(i):
        if i == n:
            yield tuple(table)
            return
        choices = [l.bot] if i == l.bot else range(n)
        for v in choices:
            if all((not leq(j, i) or leq(table[j], v)) and (not leq(i, j) or leq(v, table[j]))
                   for j in range(i)):
                table[i] = v
                yield from extend(i + 1)

    yield from extend(0)


def enumerate_nabla_algebras(l: FiniteLattice) -> list[NablaAlgebra]:
    out = []
    for nab in _monotone_zero_maps(l):
        try:
            arrow = residual_table(l, nab)
        except NoResidual:
            continue
        out.append(NablaAlgebra(l, nab, arrow))
    return out


def _normal_ideal_closure(p: FinitePoset, mask: int) -> int:
    n = p.size
    ub = full_mask(n)
    for x in members(mask):
        ub &= p.up[x]
    lb = full_mask(n)
    for x in members(ub):
        lb &= p.down[x]
    return lb


def normal_ideals(l: FiniteLattice) -> list[int]:
    """Ideals equal to the lower bounds of their upper bounds, by bitmask."""
    p = l.poset
    out = []
    for m in range(1, 1 << l.size):
        if not p.is_downset(m):
            continue
        elems = members(m)
        if any(not m >> l.join[x][y] & 1 for x in elems for y in elems):
            continue
        if _normal_ideal_closure(p, m) == m:
            out.append(m)
    return out


def dm_completion(a: NablaAlgebra) -> tuple[NablaAlgebra, NablaMorphism]:
    """Normal-ideal completion with its embedding x ↦ ↓x."""
    l = a.lattice
    p = l.poset
    ideals = normal_ideals(l)
    index = {m: i for i, m in enumerate(ideals)}
    k = len(ideals)
    up = tuple(mask_of(j for j in range(k) if ideals[i] & ~ideals[j] == 0) for i in range(k))
    labels = tuple("↓" + l.label(greatest(p, m)) if greatest(p, m) is not None else str(i)
                   for i, m in enumerate(ideals))
    lat = lattice_from_poset(FinitePoset(up), labels)

    nabla = []
    for m in ideals:
        union = 0
        for x in members(m):
            union |= p.down[a.nabla[x]]
        nabla.append(_lookup(index, _normal_ideal_closure(p, union)))
    arrow = []
    for mm in ideals:
        row = []
        for nn in ideals:
            res = mask_of(x for x in range(l.size)
                          if all(nn >> l.meet[a.nabla[x]][y] & 1 for y in members(mm)))
            row.append(_lookup(index, res))
        arrow.append(tuple(row))
    completed = NablaAlgebra(lat, tuple(nabla), tuple(arrow), a.explicit_heyting)
    embed = tuple(_lookup(index, p.down[x]) for x in range(l.size))
    return completed, NablaMorphism(a, completed, embed, heyting=l.heyting is not None)


def _lookup(index, mask):
    if mask not in index:
        raise InternalInconsistency("result is not a normal ideal", witness=mask)
    return index[mask]


def _signature(p: FinitePoset, x: int):
    return (bin(p.up[x]).count("1"), bin(p.down[x]).count("1"))


def find_isomorphism(a: NablaAlgebra, b: NablaAlgebra, heyting=False):
    """An order isomorphism that also preserves ∇ and →, or None."""
    n = a.size
    if b.size != n:
        return None
    pa, pb = a.lattice.poset, b.lattice.poset
    sig_b = {}
    for y in range(n):
        sig_b.setdefault(_signature(pb, y), []).append(y)
    if sorted(map(len, sig_b.values())) != sorted(
            map(len, _group(n, lambda x: _signature(pa, x)).values())):
        return None
    cands = [sig_b.get(_signature(pa, x), []) for x in range(n)]
    for iso in _order_isos(n, cands, pa, pb):
        ok, _ = check_morphism(NablaMorphism(a, b, iso, heyting))
        if ok:
            return iso
    return None


def _group(n, key):
    g = {}
    for x in range(n):
        g.setdefault(key(x), []).append(x)
    return g


def _order_isos(n, cands, pa, pb):
    f = [None] * n
    used = [False] * n

    def extend(i):
        if i == n:
            yield tuple(f)
            return
        for y in cands[i]:
            if used[y]:
                continue
            if any(pa.leq(i, j) != pb.leq(y, f[j]) or pa.leq(j, i) != pb.leq(f[j], y) for j in range(i)):
                continue
            f[i] = y
            used[y] = True
            yield from extend(i + 1)
            used[y] = False

    yield from extend(0)


def relabel(a: NablaAlgebra, perm: Sequence[int]) -> NablaAlgebra:
    """Transport ``a`` along the bijection x ↦ perm[x]."""
    l = a.lattice
    n = l.size
    inv = [0] * n
    for x, y in enumerate(perm):
        inv[y] = x
    up = tuple(mask_of(perm[j] for j in members(l.poset.up[inv[i]])) for i in range(n))
    labels = tuple(l.label(inv[i]) for i in range(n)) if l.labels else None
    lat = lattice_from_poset(FinitePoset(up), labels)
    nabla = tuple(perm[a.nabla[inv[i]]] for i in range(n))
    arrow = tuple(tuple(perm[a.arrow[inv[i]][inv[j]]] for j in range(n)) for i in range(n))
    return NablaAlgebra(lat, nabla, arrow, a.explicit_heyting)
