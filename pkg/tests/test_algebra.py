from itertools import permutations, product

import pytest
from hypothesis import given, strategies as st

from conftest import brute_residual
from nablalab.algebra import (NablaAlgebra, NablaMorphism, check_morphism, classify, dm_completion,
                              enumerate_nabla_algebras, find_isomorphism, heyting_nabla_algebra, left_algebra,
                              relabel, residual_from_nabla, verify_by_monotonicity, verify_nabla_algebra)
from nablalab.catalog import algebras, algebras_up_to, lattices, lattices_up_to
from nablalab.errors import NoResidual
from nablalab.order import chain_lattice, diamond_m3, lattice_from_relation

ALGEBRAS = algebras_up_to(4)


def test_enumeration_matches_brute_force_over_all_tables():
    for l in lattices_up_to(4):
        brute = []
        for nab in product(range(l.size), repeat=l.size):
            arrow = brute_residual(l, nab)
            if arrow is not None:
                brute.append((nab, arrow))
        assert [(a.nabla, a.arrow) for a in enumerate_nabla_algebras(l)] == sorted(brute)


def test_algebra_counts():
    assert [len(algebras(n)) for n in range(1, 6)] == [1, 2, 6, 36, 234]


def test_heyting_three_chain_has_every_tag():
    a = heyting_nabla_algebra(chain_lattice(3))
    assert classify(a).sorted() == ["D", "H", "N", "R", "L", "Fa", "Fu"]
    assert a.arrow == ((2, 2, 2), (0, 2, 2), (0, 1, 2))


def test_left_algebra_tags_and_witnesses():
    c = classify(left_algebra(chain_lattice(3)))
    assert c.sorted() == ["D", "H", "L"]
    assert c.witnesses["N"] == (2,) and c.witnesses["R"] == (1,)


def test_m3_left_algebra_is_not_distributive():
    a = left_algebra(diamond_m3())
    c = classify(a)
    assert "D" not in c and "H" not in c and c.witnesses["D"] is not None
    with pytest.raises(NoResidual):
        heyting_nabla_algebra(diamond_m3())


def test_broken_arrow_reports_triple():
    a = heyting_nabla_algebra(chain_lattice(3))
    bad = NablaAlgebra(a.lattice, a.nabla, ((2, 2, 2), (0, 2, 2), (0, 0, 2)))
    ok, (x, y, c) = verify_nabla_algebra(bad)
    l = a.lattice
    assert not ok
    assert l.leq(l.meet[bad.nabla[c]][x], y) != l.leq(c, bad.arrow[x][y])


def test_non_residuated_nabla_raises():
    with pytest.raises(NoResidual):
        residual_from_nabla(chain_lattice(2), (1, 1))


def _random_algebra_tables(draw):
    l = draw(st.sampled_from(lattices_up_to(4)))
    n = l.size
    nab = tuple(draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n)))
    arrow = tuple(tuple(draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))) for _ in range(n))
    return NablaAlgebra(l, nab, arrow)


@given(st.data())
def test_two_adjunction_tests_agree_on_random_tables(data):
    a = _random_algebra_tables(data.draw)
    assert verify_nabla_algebra(a)[0] == verify_by_monotonicity(a)[0]


@given(st.sampled_from(ALGEBRAS), st.data())
def test_two_adjunction_tests_agree_on_perturbed_algebras(a, data):
    n = a.size
    x, y, v = (data.draw(st.integers(0, n - 1)) for _ in range(3))
    rows = [list(r) for r in a.arrow]
    rows[x][y] = v
    b = NablaAlgebra(a.lattice, a.nabla, tuple(map(tuple, rows)))
    assert verify_nabla_algebra(b)[0] == verify_by_monotonicity(b)[0]


def test_nabla_preserves_finite_joins():
    for a in ALGEBRAS:
        l = a.lattice
        assert a.nabla[l.bot] == l.bot
        assert all(a.nabla[l.join[x][y]] == l.join[a.nabla[x]][a.nabla[y]]
                   for x in range(a.size) for y in range(a.size))


def test_faithful_and_full_match_box_equations():
    for a in ALGEBRAS:
        tags, box, nab = a.tags, a.box, a.nabla
        assert ("Fa" in tags) == all(nab[box[x]] == x for x in range(a.size))
        assert ("Fu" in tags) == all(box[nab[x]] == x for x in range(a.size))


@given(st.sampled_from(ALGEBRAS), st.randoms())
def test_classify_stable_under_isomorphism(a, rnd):
    perm = list(range(a.size))
    rnd.shuffle(perm)
    b = relabel(a, perm)
    assert classify(b).tags == classify(a).tags
    iso = find_isomorphism(a, b)
    assert iso is not None and check_morphism(NablaMorphism(a, b, iso))[0]


def test_isomorphism_search_respects_invariants():
    # the catalog lists every table on each lattice, so isomorphic pairs do occur
    alg = algebras(4)
    pairs = 0
    for i, a in enumerate(alg):
        for b in alg[i + 1:]:
            iso = find_isomorphism(a, b)
            if iso is not None:
                pairs += 1
                assert a.lattice == b.lattice and classify(a).tags == classify(b).tags
                assert all(b.nabla[iso[x]] == iso[a.nabla[x]] for x in range(4))
    assert pairs > 0


def test_completion_is_isomorphic_at_finite_scale():
    for a in ALGEBRAS:
        comp, j = dm_completion(a)
        assert check_morphism(j)[0]
        assert sorted(j.map) == list(range(comp.size))
        assert verify_nabla_algebra(comp)[0]
        assert find_isomorphism(a, comp) is not None
        assert classify(comp).tags == classify(a).tags


def test_completion_examples():
    comp, _ = dm_completion(left_algebra(chain_lattice(3)))
    assert set(comp.nabla) == {comp.lattice.bot}
    one, j = dm_completion(left_algebra(lattice_from_relation([[1]])))
    assert one.size == 1 and j.map == (0,)


def test_morphism_checker_names_the_clause():
    a = heyting_nabla_algebra(chain_lattice(2))
    b = left_algebra(chain_lattice(2))
    assert check_morphism(NablaMorphism(a, b, (0, 1)))[1][0] == "nabla"
    assert check_morphism(NablaMorphism(a, a, (0, 0)))[1][0] == "top"


def test_relabel_round_trip():
    for a in algebras(4):
        for perm in permutations(range(4)):
            inv = [perm.index(i) for i in range(4)]
            assert relabel(relabel(a, perm), inv) == a
