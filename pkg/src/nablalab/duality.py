"""Finite ∇-spaces, their duality with distributive ∇-algebras, and the
passage between finite posets and finite spectral spaces.

A finite Priestley space carries the discrete topology, so a finite ∇-space is
stored as a KripkeFrame and every "clopen" ranges over all subsets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import NablaAlgebra, NablaMorphism, check_morphism, verify_nabla_algebra
from .errors import NotCompatible, NotNormal, NotSpectral, NotT0, NotTopology
from .kripke import (
    KripkeFrame,
    _compatibility_failure,
    frame_conditions,
    is_compatible,
    normality_witness,
    prime_frame,
    upset_algebra,
    validate_frame,
)
from .order import FinitePoset, full_mask, mask_of, members, prime_filters, upset_lattice


@dataclass(frozen=True)
class Report:
    ok: bool
    witness: object = None
    data: dict = field(default_factory=dict, compare=False)

    def __bool__(self):
        return self.ok


# ∇-spaces ------------------------------------------------------------------

def diamond(f: KripkeFrame, subset: int) -> int:
    """Points with an R-successor in ``subset``."""
    return mask_of(x for x in range(f.size) if f.rel[x] & subset)


def nabla_image(f: KripkeFrame, subset: int) -> int:
    """Points with an R-predecessor in ``subset``."""
    out = 0
    for y in members(subset):
        out |= f.rel[y]
    return out


def nabla_space_check(p: FinitePoset, relation) -> tuple[KripkeFrame, Report]:
    """Check the four ∇-space clauses with every subset clopen.

    The report records each clause and confirms that validity coincides with
    compatibility.  Raises NotCompatible when the relation is not compatible.
    """
    n = p.size
    if n and not isinstance(relation[0], int):
        rel = tuple(mask_of(j for j in range(n) if relation[i][j]) for i in range(n))
    else:
        rel = tuple(relation)
    raw = KripkeFrame(p, rel)
    compatible = is_compatible(p, rel)
    everything = range(1 << n)
    # discrete topology: every subset is open, closed and clopen
    successors_closed = all(0 <= rel[x] <= full_mask(n) for x in range(n))
    diamond_clopen = all(0 <= diamond(raw, u) <= full_mask(n) for u in everything)
    nabla_clopen_upset = all(p.is_upset(nabla_image(raw, v)) for v in p.upsets)
    valid = compatible and successors_closed and diamond_clopen and nabla_clopen_upset
    clauses = {
        "compatible": compatible,
        "successors_closed": successors_closed,
        "diamond_clopen": diamond_clopen,
        "nabla_clopen_upset": nabla_clopen_upset,
    }
    report = Report(valid, None, {"clauses": clauses, "reduces_to_compatibility": valid == compatible})
    if not compatible:
        w = _compatibility_failure(p, rel)
        raise NotCompatible("relation is not compatible with the order", witness=w)
    return raw, report


def A_functor(space: KripkeFrame) -> NablaAlgebra:
    """Clopen upsets with ∇_R and U →_R V = {x : R[x] ∩ U ⊆ V}."""
    lat, ups = upset_lattice(space.poset)
    index = {u: i for i, u in enumerate(ups)}
    nabla = tuple(index[nabla_image(space, u)] for u in ups)
    arrow = tuple(
        tuple(index[mask_of(x for x in range(space.size) if (space.rel[x] & u) & ~v == 0)] for v in ups)
        for u in ups
    )
    return NablaAlgebra(lat, nabla, arrow)


def S_functor(a: NablaAlgebra) -> KripkeFrame:
    """Prime filters under inclusion, P R Q iff ∇[P] ⊆ Q (topology discrete, not stored)."""
    return prime_frame(a)


def alpha_check(a: NablaAlgebra) -> Report:
    """α(x) = {P : x ∈ P} must be a bijective ∇-morphism into 𝔄(𝔖(a))."""
    space = S_functor(a)
    filters = prime_filters(a.lattice)
    target = A_functor(space)
    index = {u: i for i, u in enumerate(space.poset.upsets)}
    alpha = tuple(index[mask_of(i for i, fp in enumerate(filters) if fp >> x & 1)] for x in range(a.size))
    heyting = a.lattice.heyting is not None
    ok_m, w = check_morphism(NablaMorphism(a, target, alpha, heyting))
    bijective = sorted(alpha) == list(range(target.size))
    ok_t, _ = verify_nabla_algebra(target)
    data = {"alpha": alpha, "filters": filters, "target_size": target.size,
            "morphism": ok_m, "bijective": bijective, "heyting": heyting, "target_verified": ok_t}
    return Report(ok_m and bijective and ok_t, w if not ok_m else None, data)


def beta_map(space: KripkeFrame) -> tuple[int, ...]:
    """β(x) = {U clopen upset : x ∈ U}, each as a bitmask over upset indices."""
    ups = space.poset.upsets
    return tuple(mask_of(i for i, u in enumerate(ups) if u >> x & 1) for x in range(space.size))


def beta_order_part(p: FinitePoset) -> Report:
    """The relation-free half of the β check, shared by all frames on ``p``."""
    lat, ups = upset_lattice(p)
    beta = tuple(mask_of(i for i, u in enumerate(ups) if u >> x & 1) for x in range(p.size))
    filters = prime_filters(lat)
    onto = sorted(beta) == filters and len(set(beta)) == p.size
    order_iso = all(p.leq(x, y) == (beta[x] & ~beta[y] == 0) for x in range(p.size) for y in range(p.size))
    return Report(onto and order_iso, None, {"beta": beta, "onto_prime_filters": onto, "order_iso": order_iso})


def beta_check(space: KripkeFrame) -> Report:
    """β is an order isomorphism onto the prime filters of 𝔄(space) carrying R
    onto the filter relation, tested in both directions."""
    base = beta_order_part(space.poset)
    ups = space.poset.upsets
    n = space.size
    forward = backward = True
    witness = None
    for x in range(n):
        images = [nabla_image(space, u) for u in ups if u >> x & 1]
        for y in range(n):
            # ∇_R[β(x)] ⊆ β(y): every ∇_R(U) with x ∈ U contains y
            in_filter_rel = all(img >> y & 1 for img in images)
            if space.related(x, y) and not in_filter_rel:
                forward, witness = False, (x, y)
            if in_filter_rel and not space.related(x, y):
                backward, witness = False, (x, y)
    ok = base.ok and forward and backward
    data = dict(base.data, forward=forward, backward=backward)
    return Report(ok, witness, data)


def _compatible_codes(p: FinitePoset) -> np.ndarray:
    """All compatible relations on p, encoded with bit x*n+y for (x, y)."""
    n = p.size
    dtype = np.uint32 if n * n <= 32 else np.uint64
    positions = [(x, y) for x in range(n) for y in range(n)]

    def above(q):
        x, y = positions[q]
        return mask_of(x2 * n + y2 for x2 in members(p.down[x]) for y2 in members(p.up[y])) & ~(1 << q)

    order = sorted(range(n * n), key=lambda q: bin(above(q)).count("1"))
    codes = np.zeros(1, dtype=dtype)
    for q in order:
        need = dtype(above(q))
        ok = (codes & need) == need
        codes = np.concatenate([codes, codes[ok] | dtype(1 << q)])
    return codes


def relation_claim_holds(p: FinitePoset, codes: np.ndarray) -> np.ndarray:
    """Per encoded relation: x R y exactly when ∇_R[β(x)] ⊆ β(y), for all x, y."""
    n = p.size
    rowmask = full_mask(n)
    shift = codes.dtype.type
    rows = [((codes >> shift(x * n)) & shift(rowmask)).astype(np.uint8) for x in range(n)]
    image = {}
    for u in p.upsets:
        acc = np.zeros(len(codes), dtype=np.uint8)
        for y in members(u):
            acc |= rows[y]
        image[u] = acc
    holds = np.ones(len(codes), dtype=bool)
    for x in range(n):
        meet_all = np.full(len(codes), rowmask, dtype=np.uint8)
        for u in p.upsets:
            if u >> x & 1:
                meet_all &= image[u]
        holds &= meet_all == rows[x]
    return holds


def decode_relation(code: int, n: int) -> tuple[int, ...]:
    return tuple((code >> (x * n)) & full_mask(n) for x in range(n))


def beta_relation_sweep(p: FinitePoset, chunk: int = 1 << 22) -> Report:
    """beta_check for every compatible relation on p at once.

    The order half runs once through beta_order_part; the relation half is
    evaluated with array operations over every encoded relation.
    """
    base = beta_order_part(p)
    codes = _compatible_codes(p)
    for start in range(0, len(codes), chunk):
        block = codes[start:start + chunk]
        bad = np.nonzero(~relation_claim_holds(p, block))[0]
        if len(bad):
            rel = decode_relation(int(block[bad[0]]), p.size)
            return Report(False, rel, dict(base.data, checked=start + int(bad[0])))
    return Report(base.ok, None, dict(base.data, checked=len(codes)))


# generalized Esakia spaces -------------------------------------------------

@dataclass(frozen=True)
class GEsakiaSpace:
    poset: FinitePoset
    pi: tuple[int, ...]
    tags: frozenset


def gesakia_extract(space: KripkeFrame) -> GEsakiaSpace:
    """(X, ≤, π) from a normal ∇-space; rm iff π is an order embedding, e iff onto."""
    pi = normality_witness(space)
    if pi is None:
        raise NotNormal("frame has no normality witness", witness=None)
    p = space.poset
    n = p.size
    monotone = all(p.leq(pi[x], pi[y]) for x in range(n) for y in members(p.up[x]))
    if not monotone:
        raise NotNormal("normality witness is not order preserving", witness=None)
    # ↓π[U] clopen holds for every subset in the discrete topology
    assert all(p.downclosure(mask_of(pi[x] for x in members(u))) <= full_mask(n) for u in range(1 << n))
    embedding = all(p.leq(x, y) == p.leq(pi[x], pi[y]) for x in range(n) for y in range(n))
    onto = set(pi) == set(range(n))
    tags = frozenset(t for t, ok in (("rm", embedding), ("e", onto)) if ok)
    if embedding and onto:
        inv = [0] * n
        for x, y in enumerate(pi):
            inv[y] = x
        if not all(p.leq(inv[x], inv[y]) for x in range(n) for y in members(p.up[x])):
            raise NotNormal("π is bijective and reflects order but its inverse is not monotone", witness=None)
    return GEsakiaSpace(p, pi, tags)


# spectral spaces -----------------------------------------------------------

@dataclass(frozen=True)
class FiniteSpace:
    size: int
    opens: tuple[int, ...]

    def closure(self, subset: int) -> int:
        """Smallest closed superset: complement of the union of opens missing ``subset``."""
        out = 0
        for u in self.opens:
            if u & subset == 0:
                out |= u
        return full_mask(self.size) & ~out

    def saturation(self, subset: int) -> int:
        out = full_mask(self.size)
        for u in self.opens:
            if u & subset == subset:
                out &= u
        return out

    @property
    def closed_sets(self) -> tuple[int, ...]:
        return tuple(sorted(full_mask(self.size) & ~u for u in self.opens))


def make_space(n: int, opens) -> FiniteSpace:
    """Validate a family of open sets (bitmasks or 0/1 vectors)."""
    masks = set()
    for o in opens:
        masks.add(o if isinstance(o, int) else mask_of(i for i, b in enumerate(o) if b))
    if 0 not in masks or full_mask(n) not in masks:
        raise NotTopology("opens must contain the empty set and the whole space", witness=None)
    for u in masks:
        if u & ~full_mask(n):
            raise NotTopology("open set mentions a point out of range", witness=u)
        for v in masks:
            if u | v not in masks or u & v not in masks:
                raise NotTopology("opens not closed under union and intersection", witness=(u, v))
    return FiniteSpace(n, tuple(sorted(masks)))


def to_spectral(p: FinitePoset) -> FiniteSpace:
    return FiniteSpace(p.size, tuple(sorted(p.upsets)))


def _t0_failure(sp: FiniteSpace):
    for x in range(sp.size):
        for y in range(x + 1, sp.size):
            if all((u >> x & 1) == (u >> y & 1) for u in sp.opens):
                return (x, y)
    return None


def specialization_order(sp: FiniteSpace) -> list[list[bool]]:
    """x ≤ y iff x lies in the closure of {y}."""
    return [[bool(sp.closure(1 << y) >> x & 1) for y in range(sp.size)] for x in range(sp.size)]


def from_spectral(sp: FiniteSpace) -> FinitePoset:
    w = _t0_failure(sp)
    if w is not None:
        raise NotSpectral("space is not T0", witness=w)
    order = specialization_order(sp)
    return FinitePoset(tuple(mask_of(y for y in range(sp.size) if order[x][y]) for x in range(sp.size)))


def _is_compact(sp: FiniteSpace, subset: int) -> bool:
    # finitely many opens: any open cover is already a finite subcover
    cover = 0
    for u in sp.opens:
        cover |= u
    return subset & ~cover == 0


def _irreducible_closed(sp: FiniteSpace):
    closed = sp.closed_sets
    for c in closed:
        if c == 0:
            continue
        smaller = [d for d in closed if d != c and d & ~c == 0]
        if not any(d1 | d2 == c for d1 in smaller for d2 in smaller):
            yield c


def spectral_check(sp: FiniteSpace) -> Report:
    """T0, sober, compact, and compact opens forming a basis closed under ∩."""
    w = _t0_failure(sp)
    if w is not None:
        raise NotT0("points have identical neighbourhoods", witness=w)
    sober = True
    for c in _irreducible_closed(sp):
        gens = [x for x in range(sp.size) if sp.closure(1 << x) == c]
        if len(gens) != 1:
            sober = False
    compact = _is_compact(sp, full_mask(sp.size))
    compact_opens = [u for u in sp.opens if _is_compact(sp, u)]
    basis = all(
        u == _union(v for v in compact_opens if v & ~u == 0) for u in sp.opens
    ) and all(u & v in compact_opens for u in compact_opens for v in compact_opens)
    ok = sober and compact and basis
    return Report(ok, None, {"t0": True, "sober": sober, "compact": compact, "compact_open_basis": basis})


def _union(masks):
    out = 0
    for m in masks:
        out |= m
    return out


def _subspace(sp: FiniteSpace, subset: int) -> FiniteSpace:
    pts = members(subset)
    pos = {x: i for i, x in enumerate(pts)}
    opens = {mask_of(pos[x] for x in members(u & subset)) for u in sp.opens}
    return FiniteSpace(len(pts), tuple(sorted(opens)))


def is_spectral_subset(sp: FiniteSpace, subset: int) -> bool:
    """Spectral in the subspace topology, with a spectral inclusion map."""
    sub = _subspace(sp, subset)
    if _t0_failure(sub) is not None:
        return False
    if not spectral_check(sub).ok:
        return False
    return all(_is_compact(sp, u & subset) for u in sp.opens if _is_compact(sp, u))


def nabla_spectral_check(sp: FiniteSpace, relation) -> Report:
    """The four ∇-spectral clauses on a finite space, compared against
    nabla_space_check on the specialization order."""
    n = sp.size
    if n and not isinstance(relation[0], int):
        rel = tuple(mask_of(j for j in range(n) if relation[i][j]) for i in range(n))
    else:
        rel = tuple(relation)
    raw = KripkeFrame(FinitePoset(tuple(1 << i for i in range(n))), rel)
    pred = [mask_of(x for x in range(n) if rel[x] >> y & 1) for y in range(n)]
    witness = None
    c1 = True
    for x in range(n):
        if not (_is_compact(sp, rel[x]) and sp.saturation(rel[x]) == rel[x]):
            c1, witness = False, witness or ("successors", x)
    c2 = True
    for y in range(n):
        if _union(sp.closure(1 << x) for x in members(pred[y])) != pred[y]:
            c2, witness = False, witness or ("predecessors", y)
    doubly = [y for y in range(1 << n)
              if is_spectral_subset(sp, y) and is_spectral_subset(sp, full_mask(n) & ~y)]
    c3 = all(diamond(raw, y) in doubly for y in doubly)
    if not c3:
        witness = witness or ("diamond",)
    compact_opens = [u for u in sp.opens if _is_compact(sp, u)]
    c4 = True
    for v in compact_opens:
        img = nabla_image(raw, v)
        if img not in sp.opens:
            c4, witness = False, witness or ("nabla", v)
    ok = c1 and c2 and c3 and c4
    poset = from_spectral(sp)
    try:
        nabla_space_check(poset, rel)
        agrees = ok
    except NotCompatible:
        agrees = not ok
    data = {"clauses": {"successors_compact_saturated": c1, "predecessors_cosaturated": c2,
                        "diamond_doubly_spectral": c3, "nabla_compact_open": c4},
            "agrees_with_nabla_space": agrees, "doubly_spectral_count": len(doubly)}
    return Report(ok, witness, data)
