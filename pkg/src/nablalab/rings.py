"""Finite commutative unital rings: ideals, radicals, prime spectra and the
∇-algebras built from them.

Ideals and sets of primes are int bitmasks, as elsewhere in the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .algebra import NablaAlgebra
from .duality import FiniteSpace, spectral_check
from .errors import InternalInconsistency, NotHomeomorphism, NotHomomorphism, NotIdeal, RingAxiomError
from .order import FiniteLattice, FinitePoset, full_mask, lattice_from_poset, mask_of, members


@dataclass(frozen=True, eq=False)
class FiniteRing:
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    zero: int
    one: int
    name: str = ""

    @property
    def size(self) -> int:
        return len(self.add)

    def __repr__(self):
        return f"FiniteRing({self.name or self.size})"

    @cached_property
    def neg(self) -> tuple[int, ...]:
        return tuple(next(y for y in range(self.size) if self.add[x][y] == self.zero) for x in range(self.size))

    def sub(self, x: int, y: int) -> int:
        return self.add[x][self.neg[y]]

    def powers(self, x: int) -> list[int]:
        """x^0, x^1, ... up to the first repetition."""
        seen = []
        p = self.one
        while p not in seen:
            seen.append(p)
            p = self.mul[p][x]
        return seen

    def divides(self, s: int, t: int) -> bool:
        return any(self.mul[s][u] == t for u in range(self.size))

    @cached_property
    def full(self) -> int:
        return full_mask(self.size)

    @cached_property
    def ideals(self) -> tuple[int, ...]:
        return all_ideals(self)

    @cached_property
    def primes(self) -> tuple[int, ...]:
        return prime_ideals(self)

    @cached_property
    def radical_ideals(self) -> tuple[int, ...]:
        return tuple(i for i in self.ideals if radical(self, i) == i)


def make_ring(add, mul, name="") -> FiniteRing:
    """Validate tables of a commutative unital ring; identities are inferred."""
    a = np.asarray(add)
    m = np.asarray(mul)
    n = len(a)
    if a.shape != (n, n) or m.shape != (n, n) or n == 0:
        raise RingAxiomError("tables must be square and nonempty")
    if a.min() < 0 or a.max() >= n or m.min() < 0 or m.max() >= n:
        raise RingAxiomError("table entry out of range")
    idx = np.arange(n)
    zeros = [z for z in range(n) if (a[z] == idx).all()]
    ones = [u for u in range(n) if (m[u] == idx).all()]
    if not zeros:
        raise RingAxiomError("no additive identity")
    if not ones:
        raise RingAxiomError("no multiplicative identity")
    zero, one = zeros[0], ones[0]
    for name_, t in (("addition", a), ("multiplication", m)):
        if not (t == t.T).all():
            raise RingAxiomError(f"{name_} is not commutative", witness=tuple(np.argwhere(t != t.T)[0]))
        lhs = t[t[:, :, None], idx[None, None, :]]
        rhs = t[idx[:, None, None], t[None, :, :]]
        if not (lhs == rhs).all():
            raise RingAxiomError(f"{name_} is not associative", witness=tuple(np.argwhere(lhs != rhs)[0]))
    if not (a == zero).any(axis=1).all():
        raise RingAxiomError("some element has no additive inverse")
    left = m[idx[:, None, None], a[None, :, :]]
    right = a[m[:, :, None], m[:, None, :]]
    if not (left == right).all():
        raise RingAxiomError("multiplication does not distribute", witness=tuple(np.argwhere(left != right)[0]))
    return FiniteRing(tuple(map(tuple, a.tolist())), tuple(map(tuple, m.tolist())), zero, one, name)


def zmod(n: int) -> FiniteRing:
    if n < 1:
        raise ValueError("n must be positive")
    r = range(n)
    return make_ring([[(x + y) % n for y in r] for x in r], [[(x * y) % n for y in r] for x in r], f"Z/{n}")


def product_ring(r1: FiniteRing, r2: FiniteRing) -> FiniteRing:
    """Componentwise product; the pair (x, y) is element x * |r2| + y."""
    n2 = r2.size
    pairs = [(x, y) for x in range(r1.size) for y in range(n2)]

    def code(x, y):
        return x * n2 + y

    add = [[code(r1.add[a][c], r2.add[b][d]) for c, d in pairs] for a, b in pairs]
    mul = [[code(r1.mul[a][c], r2.mul[b][d]) for c, d in pairs] for a, b in pairs]
    return make_ring(add, mul, f"{r1.name}x{r2.name}")


def ring_catalog() -> list[FiniteRing]:
    """Z/n for n ≤ 16 and products Z/a × Z/b of prime powers a ≤ b ≤ 9."""
    rings = [zmod(n) for n in range(1, 17)]
    prime_powers = [2, 3, 4, 5, 7, 8, 9]
    for i, a in enumerate(prime_powers):
        for b in prime_powers[i:]:
            rings.append(product_ring(zmod(a), zmod(b)))
    return rings


# ideals --------------------------------------------------------------------

def _additive_closure(ring: FiniteRing, gens: Iterable[int]) -> int:
    gens = list(set(gens))
    span = {ring.zero}
    frontier = [ring.zero]
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                t = ring.add[s][g]
                if t not in span:
                    span.add(t)
                    nxt.append(t)
        frontier = nxt
    return mask_of(span)


def ideal_generated(ring: FiniteRing, subset) -> int:
    """Least ideal containing ``subset`` (a bitmask or an iterable of elements)."""
    elems = members(subset) if isinstance(subset, int) else list(subset)
    multiples = {ring.mul[r][a] for r in range(ring.size) for a in elems}
    return _additive_closure(ring, multiples)


def is_ideal(ring: FiniteRing, mask: int) -> bool:
    if not mask >> ring.zero & 1:
        return False
    elems = members(mask)
    return all(mask >> ring.sub(x, y) & 1 for x in elems for y in elems) and \
        all(mask >> ring.mul[r][x] & 1 for r in range(ring.size) for x in elems)


def all_ideals(ring: FiniteRing) -> tuple[int, ...]:
    """Every ideal, from principal ideals closed under sums; sorted by bitmask."""
    found = {ideal_generated(ring, [a]) for a in range(ring.size)}
    frontier = list(found)
    while frontier:
        nxt = []
        for i in frontier:
            for j in list(found):
                s = ideal_generated(ring, members(i | j))
                if s not in found:
                    found.add(s)
                    nxt.append(s)
        frontier = nxt
    return tuple(sorted(found))


def is_prime(ring: FiniteRing, mask: int) -> bool:
    if mask == ring.full:
        return False
    n = ring.size
    return all(mask >> x & 1 or mask >> y & 1
               for x in range(n) for y in range(n) if mask >> ring.mul[x][y] & 1)


def prime_ideals(ring: FiniteRing) -> tuple[int, ...]:
    return tuple(i for i in ring.ideals if is_prime(ring, i))


def radical(ring: FiniteRing, ideal: int) -> int:
    """{x : some power of x lies in the ideal}, checked against ∩ of primes above it."""
    direct = mask_of(x for x in range(ring.size) if any(ideal >> p & 1 for p in ring.powers(x)))
    via_primes = ring.full
    for p in ring.primes:
        if ideal & ~p == 0:
            via_primes &= p
    if direct != via_primes:
        raise InternalInconsistency("radical differs from the intersection of primes", witness=ideal)
    return direct


def quotient_ideal(ring: FiniteRing, j: int, i: int) -> int:
    """[J : I] = {x : x·y ∈ J for all y ∈ I}."""
    ys = members(i)
    return mask_of(x for x in range(ring.size) if all(j >> ring.mul[x][y] & 1 for y in ys))


def spec_space(ring: FiniteRing) -> FiniteSpace:
    """Prime ideals with the topology generated by U_r = {P : r ∉ P}."""
    primes = ring.primes
    basic = {mask_of(k for k, p in enumerate(primes) if not p >> r & 1) for r in range(ring.size)}
    opens = set(basic) | {0}
    changed = True
    while changed:
        changed = False
        for u in list(opens):
            for v in list(opens):
                if u | v not in opens:
                    opens.add(u | v)
                    changed = True
    return FiniteSpace(len(primes), tuple(sorted(opens)))


@dataclass(frozen=True, eq=False)
class RadicalIdealLattice:
    ring: FiniteRing
    ideals: tuple[int, ...]
    lattice: FiniteLattice
    heyting: tuple[tuple[int, ...], ...]

    def index(self, ideal: int) -> int:
        return self.ideals.index(ideal)


def radical_ideal_lattice(ring: FiniteRing) -> RadicalIdealLattice:
    rad = ring.radical_ideals
    k = len(rad)
    up = tuple(mask_of(j for j in range(k) if rad[i] & ~rad[j] == 0) for i in range(k))
    labels = tuple("{" + ",".join(map(str, members(m))) + "}" for m in rad)
    lat = lattice_from_poset(FinitePoset(up), labels)
    index = {m: i for i, m in enumerate(rad)}
    for a in range(k):
        for b in range(k):
            if lat.meet[a][b] != index.get(rad[a] & rad[b]):
                raise InternalInconsistency("lattice meet is not intersection", witness=(a, b))
            joined = radical(ring, ideal_generated(ring, members(rad[a] | rad[b])))
            if lat.join[a][b] != index.get(joined):
                raise InternalInconsistency("lattice join is not the radical of the sum", witness=(a, b))
    quotient = tuple(tuple(index[quotient_ideal(ring, rad[b], rad[a])] for b in range(k)) for a in range(k))
    if lat.heyting != quotient:
        raise InternalInconsistency("Heyting implication differs from the ideal quotient", witness=None)
    return RadicalIdealLattice(ring, rad, lat, quotient)


@dataclass(frozen=True, eq=False)
class IUMaps:
    """Opens of Spec and radical ideals, with the two mutually inverse maps."""

    opens: tuple[int, ...]
    radicals: tuple[int, ...]
    ideal_of: dict = field(compare=False)
    open_of: dict = field(compare=False)


def ideal_of_open(ring: FiniteRing, u: int) -> int:
    """𝓘(U): elements lying in every prime outside U."""
    out = ring.full
    for k, p in enumerate(ring.primes):
        if not u >> k & 1:
            out &= p
    return out


def open_of_ideal(ring: FiniteRing, ideal: int) -> int:
    """𝓤(I): primes not containing I."""
    return mask_of(k for k, p in enumerate(ring.primes) if ideal & ~p)


def iu_maps(ring: FiniteRing) -> IUMaps:
    opens = spec_space(ring).opens
    rad = ring.radical_ideals
    i_map = {u: ideal_of_open(ring, u) for u in opens}
    u_map = {i: open_of_ideal(ring, i) for i in rad}
    for u in opens:
        if i_map[u] not in u_map or u_map[i_map[u]] != u:
            raise InternalInconsistency("𝓤𝓘 is not the identity", witness=u)
    for i in rad:
        if u_map[i] not in i_map or i_map[u_map[i]] != i:
            raise InternalInconsistency("𝓘𝓤 is not the identity", witness=i)
    for u in opens:
        for v in opens:
            if (u & ~v == 0) != (i_map[u] & ~i_map[v] == 0):
                raise InternalInconsistency("𝓘 is not an order isomorphism", witness=(u, v))
    return IUMaps(opens, rad, i_map, u_map)


# homomorphisms -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RingHom:
    source: FiniteRing
    target: FiniteRing
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def image(self, mask: int) -> int:
        return mask_of(self.map[x] for x in members(mask))

    def preimage(self, mask: int) -> int:
        return mask_of(x for x in range(self.source.size) if mask >> self.map[x] & 1)


def make_hom(source: FiniteRing, target: FiniteRing, fmap: Sequence[int]) -> RingHom:
    fmap = tuple(fmap)
    if len(fmap) != source.size or any(not 0 <= v < target.size for v in fmap):
        raise NotHomomorphism("map is not total", witness=None)
    if fmap[source.one] != target.one:
        raise NotHomomorphism("1 is not preserved", witness=(source.one,))
    n = source.size
    for x in range(n):
        for y in range(n):
            if fmap[source.add[x][y]] != target.add[fmap[x]][fmap[y]]:
                raise NotHomomorphism("addition is not preserved", witness=(x, y))
            if fmap[source.mul[x][y]] != target.mul[fmap[x]][fmap[y]]:
                raise NotHomomorphism("multiplication is not preserved", witness=(x, y))
    return RingHom(source, target, fmap)


def _additive_generators(ring: FiniteRing) -> list[int]:
    gens = []
    span = 1 << ring.zero
    for x in range(ring.size):
        if not span >> x & 1:
            gens.append(x)
            span = _additive_closure(ring, gens)
    return gens


def _additive_order(ring: FiniteRing, x: int) -> int:
    k, s = 1, x
    while s != ring.zero:
        s = ring.add[s][x]
        k += 1
    return k


def enumerate_homs(source: FiniteRing, target: FiniteRing) -> list[RingHom]:
    """All unital homomorphisms, found by choosing images of additive generators."""
    gens = _additive_generators(source)
    # coordinates of every element over the generators
    coords = {source.zero: (0,) * len(gens)}
    frontier = [source.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for k, g in enumerate(gens):
                y = source.add[x][g]
                if y not in coords:
                    c = list(coords[x])
                    c[k] += 1
                    coords[y] = tuple(c)
                    nxt.append(y)
        frontier = nxt
    choices = []
    for g in gens:
        order = _additive_order(source, g)
        idem = source.mul[g][g] == g
        choices.append([t for t in range(target.size)
                        if order % _additive_order(target, t) == 0
                        and (not idem or target.mul[t][t] == t)])
    out = []
    for images in product(*choices):
        fmap = []
        for x in range(source.size):
            acc = target.zero
            for k, c in enumerate(coords[x]):
                for _ in range(c):
                    acc = target.add[acc][images[k]]
            fmap.append(acc)
        try:
            out.append(make_hom(source, target, fmap))
        except NotHomomorphism:
            continue
    return out


def spec_map(f: RingHom) -> tuple[int, ...]:
    """Spec(f): prime Q of the target ↦ index of the prime f⁻¹(Q) of the source."""
    src_primes = f.source.primes
    return tuple(src_primes.index(f.preimage(q)) for q in f.target.primes)


def pushforward(f: RingHom) -> tuple[int, ...]:
    """f⁎(I) = Rad⟨f[I]⟩ on radical ideals, as indices into target.radical_ideals.

    Cross-checked against 𝓘 ∘ Spec(f)⁻¹ ∘ 𝓤.
    """
    s, t = f.source, f.target
    smap = spec_map(f)
    out = []
    for i in s.radical_ideals:
        direct = radical(t, ideal_generated(t, members(f.image(i))))
        u = open_of_ideal(s, i)
        pulled = mask_of(q for q in range(len(t.primes)) if u >> smap[q] & 1)
        if ideal_of_open(t, pulled) != direct:
            raise InternalInconsistency("push-forward disagrees with its spectral description", witness=i)
        out.append(t.radical_ideals.index(direct))
    return tuple(out)


def pullback(f: RingHom) -> tuple[int, ...]:
    """f⁻¹ on radical ideals, as indices into source.radical_ideals."""
    return tuple(f.source.radical_ideals.index(f.preimage(j)) for j in f.target.radical_ideals)


def check_push_pull_adjunction(f: RingHom):
    push, pull = pushforward(f), pullback(f)
    s_rad, t_rad = f.source.radical_ideals, f.target.radical_ideals
    for a, i in enumerate(s_rad):
        for b, j in enumerate(t_rad):
            if (t_rad[push[a]] & ~j == 0) != (i & ~s_rad[pull[b]] == 0):
                return False, (a, b)
    return True, None


@dataclass(frozen=True)
class HomCriteria:
    spec_surjective: bool
    spec_embedding: bool
    witnesses: dict = field(default_factory=dict, compare=False)


def _criterion_full(f: RingHom, subsets: Iterable[int]):
    """First (A, r) with f(r) ∈ ⟨f[A]⟩ but no power of r in ⟨A⟩, or None."""
    s, t = f.source, f.target
    for a in subsets:
        gen_a = ideal_generated(s, members(a))
        gen_fa = ideal_generated(t, members(f.image(a)))
        for r in range(s.size):
            if gen_fa >> f.map[r] & 1 and not any(gen_a >> p & 1 for p in s.powers(r)):
                return (a, r)
    return None


def _criterion_faithful(f: RingHom):
    """Per target element s: (m, [r_i]) with s | f(r_i) and s^m in their ideal, or None."""
    t = f.target
    found = {}
    for s in range(t.size):
        rs = [r for r in range(f.source.size) if t.divides(s, f.map[r])]
        gen = ideal_generated(t, {f.map[r] for r in rs})
        m = next((k for k, p in enumerate(t.powers(s)) if gen >> p & 1), None)
        if m is None:
            return False, s
        found[s] = (m, rs)
    return True, found


def hom_criteria(f: RingHom) -> HomCriteria:
    """Both ring-theoretic criteria, each checked against Spec(f) and f⁎."""
    s, t = f.source, f.target
    smap = spec_map(f)
    push = pushforward(f)
    witnesses = {}

    full_fail = _criterion_full(f, s.ideals)
    if s.size <= 8:
        raw_fail = _criterion_full(f, range(1 << s.size))
        if (raw_fail is None) != (full_fail is None):
            raise InternalInconsistency("ideal and raw-subset criteria disagree", witness=raw_fail)
    surj_alg = full_fail is None
    surj_top = set(smap) == set(range(len(s.primes)))
    push_inj = len(set(push)) == len(push)
    if not surj_alg == surj_top == push_inj:
        raise InternalInconsistency("surjectivity tests disagree", witness=(surj_alg, surj_top, push_inj))
    if full_fail is not None:
        witnesses["spec_surjective"] = full_fail

    emb_alg, data = _criterion_faithful(f)
    spec_s = spec_space(s)
    spec_t = spec_space(t)
    preimages = {mask_of(q for q in range(len(t.primes)) if u >> smap[q] & 1) for u in spec_s.opens}
    emb_top = preimages == set(spec_t.opens)
    push_onto = set(push) == set(range(len(t.radical_ideals)))
    if not emb_alg == emb_top == push_onto:
        raise InternalInconsistency("embedding tests disagree", witness=(emb_alg, emb_top, push_onto))
    witnesses["spec_embedding"] = data
    return HomCriteria(surj_alg, emb_alg, witnesses)


# semi-dynamic rings --------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SemiDynamicRing:
    source: FiniteRing
    target: FiniteRing
    pi: RingHom
    f: tuple[int, ...]


def make_semi_dynamic(source: FiniteRing, target: FiniteRing, pi: RingHom, f: Sequence[int]) -> SemiDynamicRing:
    """Validate that f (prime index of source ↦ prime index of target) is a homeomorphism."""
    f = tuple(f)
    n_s, n_t = len(source.primes), len(target.primes)
    if n_s != n_t or len(f) != n_s or sorted(f) != list(range(n_t)):
        raise NotHomeomorphism("f is not a bijection between the spectra", witness=(n_s, n_t))
    opens_s, opens_t = set(spec_space(source).opens), set(spec_space(target).opens)
    for u in opens_s:
        if mask_of(f[k] for k in members(u)) not in opens_t:
            raise NotHomeomorphism("f is not open", witness=u)
    for v in opens_t:
        if mask_of(k for k in range(n_s) if v >> f[k] & 1) not in opens_s:
            raise NotHomeomorphism("f is not continuous", witness=v)
    return SemiDynamicRing(source, target, pi, f)


def hat_map(domain: FiniteRing, codomain: FiniteRing, spec_fn: Sequence[int]) -> dict:
    """For F: Spec(domain) → Spec(codomain), the map 𝓘 ∘ F⁻¹ ∘ 𝓤 from radical
    ideals of ``codomain`` to radical ideals of ``domain``."""
    out = {}
    for j in codomain.radical_ideals:
        u = open_of_ideal(codomain, j)
        pulled = mask_of(k for k in range(len(domain.primes)) if u >> spec_fn[k] & 1)
        out[j] = ideal_of_open(domain, pulled)
    return out


def semi_dynamic_algebra(sdr: SemiDynamicRing) -> NablaAlgebra:
    """∇I = f̂(π⁎(I)) and I → J = π⁻¹(ĝ([J : I])) on the radical ideals of the source."""
    r, s, pi = sdr.source, sdr.target, sdr.pi
    rad_r, rad_s = r.radical_ideals, s.radical_ideals
    ril = radical_ideal_lattice(r)
    push = pushforward(pi)
    inverse = [0] * len(sdr.f)
    for k, v in enumerate(sdr.f):
        inverse[v] = k
    f_hat = hat_map(r, s, sdr.f)
    g_hat = hat_map(s, r, inverse)
    index = {m: i for i, m in enumerate(rad_r)}
    nabla = tuple(index[f_hat[rad_s[push[a]]]] for a in range(len(rad_r)))
    arrow = tuple(
        tuple(index[pi.preimage(g_hat[quotient_ideal(r, j, i)])] for j in rad_r)
        for i in rad_r
    )
    return NablaAlgebra(ril.lattice, nabla, arrow)
