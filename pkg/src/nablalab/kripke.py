"""Kripke frames (W, ≤, R) for distributive ∇-algebras and the passages
between frames and algebras."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .algebra import FRAME_TAGS, Classification, NablaAlgebra, NablaMorphism
from .errors import InternalInconsistency, NotCompatible, NotDistributive
from .order import (
    FinitePoset,
    greatest,
    mask_of,
    members,
    prime_filters,
    upset_lattice,
)


@dataclass(frozen=True)
class KripkeFrame:
    """``rel[x]`` is the bitmask of R-successors of x."""

    poset: FinitePoset
    rel: tuple[int, ...]

    @property
    def size(self) -> int:
        return self.poset.size

    def related(self, x: int, y: int) -> bool:
        return bool(self.rel[x] >> y & 1)

    @cached_property
    def pred(self) -> tuple[int, ...]:
        n = self.size
        return tuple(mask_of(x for x in range(n) if self.rel[x] >> y & 1) for y in range(n))

    def matrix(self) -> list[list[int]]:
        n = self.size
        return [[int(self.related(x, y)) for y in range(n)] for x in range(n)]


def _compatibility_failure(p: FinitePoset, rel: Sequence[int]):
    n = p.size
    for k in range(n):
        for l in members(rel[k]):
            for k2 in members(p.down[k]):
                for l2 in members(p.up[l]):
                    if not rel[k2] >> l2 & 1:
                        return (k2, k, l, l2)
    return None


def is_compatible(p: FinitePoset, rel: Sequence[int]) -> bool:
    up, down = p.up, p.down
    for k in range(p.size):
        succ = rel[k]
        for l in members(succ):
            if up[l] & ~succ:
                return False
        for k2 in members(down[k]):
            if succ & ~rel[k2]:
                return False
    return True


def validate_frame(p: FinitePoset, relation) -> KripkeFrame:
    """``relation`` is an n×n 0/1 matrix or a sequence of successor bitmasks."""
    n = p.size
    if len(relation) != n:
        raise ValueError("relation must have one row per point")
    if n and not isinstance(relation[0], int):
        if any(len(row) != n for row in relation):
            raise ValueError("relation matrix must be square")
        rel = tuple(mask_of(j for j in range(n) if relation[i][j]) for i in range(n))
    else:
        rel = tuple(relation)
    if not is_compatible(p, rel):
        w = _compatibility_failure(p, rel)
        raise NotCompatible(f"k'={w[0]} <= k={w[1]}, k R l={w[2]}, l <= l'={w[3]} but not k' R l'", witness=w)
    return KripkeFrame(p, rel)


def normal_frame(p: FinitePoset, pi: Sequence[int]) -> KripkeFrame:
    """The frame with x R y iff x ≤ pi(y)."""
    n = p.size
    rel = tuple(mask_of(y for y in range(n) if p.leq(x, pi[y])) for x in range(n))
    return validate_frame(p, rel)


def normality_witness(f: KripkeFrame):
    """The map pi with x R y ⟺ x ≤ pi(y), or None when some R⁻¹[y] is not principal."""
    p = f.poset
    pi = []
    for y in range(f.size):
        g = greatest(p, f.pred[y])
        if g is None or p.down[g] != f.pred[y]:
            return None
        pi.append(g)
    return tuple(pi)


def frame_conditions(f: KripkeFrame) -> Classification:
    p = f.poset
    n = f.size
    witnesses = {}
    if normality_witness(f) is None:
        witnesses["N"] = next(y for y in range(n)
                              if greatest(p, f.pred[y]) is None or p.down[greatest(p, f.pred[y])] != f.pred[y])
    w = next((x for x in range(n) if p.up[x] & ~f.rel[x]), None)
    if w is not None:
        witnesses["R"] = (w, min(members(p.up[w] & ~f.rel[w])))
    w = next((x for x in range(n) if f.rel[x] & ~p.up[x]), None)
    if w is not None:
        witnesses["L"] = (w, min(members(f.rel[w] & ~p.up[w])))
    w = next((x for x in range(n)
              if not any(f.rel[y] & ~p.up[x] == 0 for y in members(f.pred[x]))), None)
    if w is not None:
        witnesses["Fa"] = (w,)
    w = next((x for x in range(n)
              if not any(f.pred[y] & ~p.down[x] == 0 for y in members(f.rel[x]))), None)
    if w is not None:
        witnesses["Fu"] = (w,)
    return Classification(frozenset(t for t in FRAME_TAGS if t not in witnesses), witnesses)


def upset_algebra(f: KripkeFrame) -> NablaAlgebra:
    """Algebra of upsets; element i is the upset ``f.poset.upsets[i]``."""
    lat, ups = upset_lattice(f.poset)
    index = {u: i for i, u in enumerate(ups)}
    n = f.size
    nabla = []
    for u in ups:
        img = 0
        for y in members(u):
            img |= f.rel[y]
        nabla.append(index[img])
    arrow = tuple(
        tuple(index[mask_of(x for x in range(n) if f.rel[x] & u & ~v == 0)] for v in ups)
        for u in ups
    )
    return NablaAlgebra(lat, tuple(nabla), arrow)


def _nabla_image(a: NablaAlgebra, filt: int) -> int:
    return mask_of(a.nabla[x] for x in members(filt))


def prime_frame(a: NablaAlgebra) -> KripkeFrame:
    """Prime filters under inclusion; P R Q iff ∇[P] ⊆ Q.

    Point i is ``prime_filters(a.lattice)[i]``.
    """
    l = a.lattice
    if not l.distributive:
        raise NotDistributive("prime-filter frame needs a distributive lattice", witness=None)
    filters = prime_filters(l)
    k = len(filters)
    up = tuple(mask_of(j for j in range(k) if filters[i] & ~filters[j] == 0) for i in range(k))
    rel = tuple(mask_of(j for j in range(k) if _nabla_image(a, filters[i]) & ~filters[j] == 0)
                for i in range(k))
    # the implication-based description of the same relation
    n = l.size
    for i, fp in enumerate(filters):
        for j, fq in enumerate(filters):
            alt = all(not (fp >> a.arrow[x][y] & 1 and fq >> x & 1) or fq >> y & 1
                      for x in range(n) for y in range(n))
            if alt != bool(rel[i] >> j & 1):
                raise InternalInconsistency("two descriptions of the filter relation disagree", witness=(i, j))
    return validate_frame(FinitePoset(up), rel)


def canonical_embedding(a: NablaAlgebra) -> NablaMorphism:
    """a ↦ {P : a ∈ P} into the upset algebra of the prime-filter frame."""
    frame = prime_frame(a)
    filters = prime_filters(a.lattice)
    target = upset_algebra(frame)
    index = {u: i for i, u in enumerate(frame.poset.upsets)}
    fmap = tuple(index[mask_of(i for i, fp in enumerate(filters) if fp >> x & 1)] for x in range(a.size))
    return NablaMorphism(a, target, fmap, heyting=a.lattice.heyting is not None)


def check_kripke_morphism(fmap: Sequence[int], f: KripkeFrame, g: KripkeFrame, heyting=False):
    """(True, None) or (False, (clause, args...)).

    For two normal frames the answer is compared with the equational
    description through the witnesses; a mismatch raises InternalInconsistency.
    """
    verdict = _kripke_clauses(fmap, f, g, heyting)
    pi, rho = normality_witness(f), normality_witness(g)
    if pi is not None and rho is not None and _order_preserving(fmap, f.poset, g.poset):
        eq = _equational_morphism(fmap, f, g, pi, rho)
        if eq != (verdict[0] or verdict[1][0] == "heyting"):
            raise InternalInconsistency("clause check and witness equations disagree", witness=verdict[1])
    return verdict


def _order_preserving(fmap, p, q):
    return all(q.leq(fmap[x], fmap[y]) for x in range(p.size) for y in members(p.up[x]))


def _kripke_clauses(fmap, f: KripkeFrame, g: KripkeFrame, heyting):
    p, q = f.poset, g.poset
    n, m = f.size, g.size
    if len(fmap) != n or any(not 0 <= v < m for v in fmap):
        return False, ("not-total",)
    for x in range(n):
        for y in members(p.up[x]):
            if not q.leq(fmap[x], fmap[y]):
                return False, ("monotone", x, y)
    for k in range(n):
        for l in members(f.rel[k]):
            if not g.related(fmap[k], fmap[l]):
                return False, ("forth", k, l)
    for k in range(n):
        images = {fmap[l] for l in members(f.rel[k])}
        for l2 in members(g.rel[fmap[k]]):
            if l2 not in images:
                return False, ("back-successor", k, l2)
    for k in range(n):
        for l2 in members(g.pred[fmap[k]]):
            if not any(q.leq(l2, fmap[l]) for l in members(f.pred[k])):
                return False, ("back-predecessor", k, l2)
    if heyting:
        for k in range(n):
            images = {fmap[l] for l in members(p.up[k])}
            for l2 in members(q.up[fmap[k]]):
                if l2 not in images:
                    return False, ("heyting", k, l2)
    return True, None


def _equational_morphism(fmap, f, g, pi, rho) -> bool:
    p, q = f.poset, g.poset
    n = f.size
    if any(fmap[pi[x]] != rho[fmap[x]] for x in range(n)):
        return False
    for k in range(n):
        lhs = mask_of(y for y in range(g.size) if q.leq(fmap[k], rho[y]))
        rhs = mask_of(fmap[y] for y in range(n) if p.leq(k, pi[y]))
        if lhs != rhs:
            return False
    return True


def inverse_image_morphism(fmap: Sequence[int], f: KripkeFrame, g: KripkeFrame) -> NablaMorphism:
    """Upsets of g pulled back along fmap, as a map between upset algebras."""
    src, dst = upset_algebra(g), upset_algebra(f)
    index = {u: i for i, u in enumerate(f.poset.upsets)}
    fm = tuple(index[mask_of(x for x in range(f.size) if v >> fmap[x] & 1)] for v in g.poset.upsets)
    return NablaMorphism(src, dst, fm)
