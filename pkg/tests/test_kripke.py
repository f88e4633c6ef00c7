from itertools import product

import pytest
from hypothesis import given, strategies as st

from nablalab.algebra import NablaMorphism, check_morphism, classify, heyting_nabla_algebra, left_algebra
from nablalab.catalog import frames, monotone_maps, normal_frames, posets
from nablalab.errors import NotCompatible, NotDistributive
from nablalab.kripke import (KripkeFrame, canonical_embedding, check_kripke_morphism, frame_conditions,
                             inverse_image_morphism, is_compatible, normal_frame, normality_witness, prime_frame,
                             upset_algebra, validate_frame)
from nablalab.order import chain_lattice, chain_poset, diamond_m3, members


def _all_relations(n):
    for bits in range(1 << (n * n)):
        yield tuple((bits >> (x * n)) & ((1 << n) - 1) for x in range(n))


def _compatible_by_definition(p, rel):
    n = p.size
    return all(rel[k2] >> l2 & 1
               for k in range(n) for l in members(rel[k])
               for k2 in range(n) if p.leq(k2, k)
               for l2 in range(n) if p.leq(l, l2))


def test_compatibility_matches_definition():
    for n in range(4):
        for p in posets(n):
            for rel in _all_relations(n):
                assert is_compatible(p, rel) == _compatible_by_definition(p, rel)


def test_validate_frame_witness():
    p = chain_poset(2)
    with pytest.raises(NotCompatible) as e:
        validate_frame(p, [[0, 0], [1, 0]])
    k2, k, l, l2 = e.value.witness
    assert p.leq(k2, k) and p.leq(l, l2)


def test_catalog_frame_counts():
    assert [len(frames(n)) for n in range(5)] == [1, 2, 16, 292, 13586]


def test_normal_frames_have_their_witness():
    for n in range(4):
        for p in posets(n):
            for pi in monotone_maps(p):
                f = normal_frame(p, pi)
                w = normality_witness(f)
                assert w is not None and normal_frame(p, w) == f


def test_normality_matches_principal_predecessors():
    for n in range(4):
        for f in frames(n):
            p = f.poset
            principal = all(any(f.pred[y] == p.down[g] for g in range(n)) for y in range(n))
            assert (normality_witness(f) is not None) == principal
            assert ("N" in frame_conditions(f)) == principal


def test_reflexive_and_left_conditions_by_definition():
    for n in range(4):
        for f in frames(n):
            c = frame_conditions(f)
            p = f.poset
            assert ("R" in c) == all(f.rel[x] & p.up[x] == p.up[x] for x in range(n))
            assert ("L" in c) == all(f.rel[x] & ~p.up[x] == 0 for x in range(n))


def test_upset_algebra_of_empty_relation_is_left():
    f = KripkeFrame(chain_poset(2), (0, 0))
    a = upset_algebra(f)
    assert a.nabla == (0, 0, 0) and a.arrow == ((2, 2, 2),) * 3


def test_prime_frame_of_heyting_chain():
    f = prime_frame(heyting_nabla_algebra(chain_lattice(3)))
    assert f.size == 2 and f.rel == tuple(f.poset.up)


def test_prime_frame_needs_distributivity():
    with pytest.raises(NotDistributive):
        prime_frame(left_algebra(diamond_m3()))


def test_canonical_embedding_examples():
    for a in (heyting_nabla_algebra(chain_lattice(3)), left_algebra(chain_lattice(4))):
        j = canonical_embedding(a)
        assert check_morphism(j)[0] and sorted(j.map) == list(range(j.target.size))


def _small_frames():
    return [f for n in range(1, 3) for f in frames(n)] + list(frames(3))[::7]


@pytest.mark.parametrize("heyting", [False, True])
def test_kripke_morphisms_are_dual_to_algebra_morphisms(heyting):
    fs = _small_frames()
    checked = 0
    for f in fs:
        for g in fs:
            for fmap in product(range(g.size), repeat=f.size):
                ok, _ = check_kripke_morphism(fmap, f, g, heyting)
                monotone = all(g.poset.leq(fmap[x], fmap[y]) for x in range(f.size) for y in members(f.poset.up[x]))
                if not monotone:
                    assert not ok
                    continue
                m = inverse_image_morphism(fmap, f, g)
                assert ok == check_morphism(NablaMorphism(m.source, m.target, m.map, heyting))[0]
                checked += 1
    assert checked > 1000


@given(st.sampled_from(list(normal_frames(3)) + list(normal_frames(4))[::5]))
def test_upset_algebra_tags_contain_frame_conditions(f):
    tags = classify(upset_algebra(f)).tags
    assert {"D", "H"} <= tags
    assert frame_conditions(f).tags <= tags


def test_identity_is_a_kripke_morphism():
    for f in frames(3):
        assert check_kripke_morphism(tuple(range(3)), f, f, True) == (True, None)


def test_morphism_clause_names():
    p = chain_poset(2)
    f = KripkeFrame(p, (0b11, 0b10))
    g = KripkeFrame(p, (0, 0))
    ok, w = check_kripke_morphism((0, 1), f, g)
    assert not ok and w[0] == "forth"
    ok, w = check_kripke_morphism((1, 0), f, f)
    assert not ok and w[0] == "monotone"
