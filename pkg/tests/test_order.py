import pytest
from hypothesis import given, strategies as st

from conftest import brute_is_lattice, brute_posets, canonical_matrix
from nablalab.catalog import lattices, posets
from nablalab.errors import NoBot, NoJoin, NoMeet, NoTop, NotAntisymmetric, NotReflexive, NotTransitive
from nablalab.order import (FinitePoset, boolean_lattice, chain_lattice, check_lattice_morphism, diamond_m3,
                            export_hasse, heyting_implication, is_distributive, is_prime_filter, join_irreducibles,
                            lattice_from_relation, mask_of, members, pentagon_n5, prime_filters, upset_lattice,
                            validate_poset)


def test_members_and_masks_round_trip():
    assert members(0b1011) == [0, 1, 3]
    assert mask_of([3, 0, 1]) == 0b1011


@pytest.mark.parametrize("rel, err", [
    ([[0, 1], [0, 1]], NotReflexive),
    ([[1, 1], [1, 1]], NotAntisymmetric),
    ([[1, 1, 0], [0, 1, 1], [0, 0, 1]], NotTransitive),
])
def test_validate_poset_rejects_with_witness(rel, err):
    with pytest.raises(err) as e:
        validate_poset(rel)
    assert e.value.witness is not None


def test_lattice_errors():
    with pytest.raises(NoBot):
        lattice_from_relation([[1, 0], [0, 1]])
    with pytest.raises(NoTop):
        lattice_from_relation([[1, 1, 1], [0, 1, 0], [0, 0, 1]])
    # 0 below 1, 2; both below 3 and 4; those below 5
    bowtie = [[1, 1, 1, 1, 1, 1], [0, 1, 0, 1, 1, 1], [0, 0, 1, 1, 1, 1],
              [0, 0, 0, 1, 0, 1], [0, 0, 0, 0, 1, 1], [0, 0, 0, 0, 0, 1]]
    with pytest.raises(NoJoin):
        lattice_from_relation(bowtie)
    dual = [list(r) for r in zip(*bowtie)]
    with pytest.raises(NoMeet):
        lattice_from_relation(dual)


def test_degenerate_lattice_is_admitted():
    l = lattice_from_relation([[1]])
    assert l.is_degenerate and l.bot == l.top == 0
    assert prime_filters(l) == []


def test_m3_and_n5_are_not_distributive():
    for l in (diamond_m3(), pentagon_n5()):
        ok, (a, b, c) = is_distributive(l)
        assert not ok
        assert l.meet[a][l.join[b][c]] != l.join[l.meet[a][b]][l.meet[a][c]]
        assert l.heyting is None


def test_heyting_on_chain_and_boolean():
    h = heyting_implication(chain_lattice(3))
    assert h == ((2, 2, 2), (0, 2, 2), (0, 1, 2))
    b = boolean_lattice(2)
    hb = heyting_implication(b)
    assert all(hb[x][y] == (3 & ~x) | y for x in range(4) for y in range(4))


def test_prime_filters_match_definition():
    for size in range(1, 6):
        for l in lattices(size):
            brute = sorted(m for m in range(1 << l.size) if is_prime_filter(l, m))
            if l.distributive:
                assert prime_filters(l) == brute
                assert len(brute) == len(join_irreducibles(l))


def test_poset_and_lattice_counts_against_brute_force():
    for n in range(1, 5):
        classes = {canonical_matrix(r) for r in brute_posets(n)}
        assert len(posets(n)) == len(classes)
        assert len(lattices(n)) == sum(brute_is_lattice([list(r) for r in c]) for c in classes)


def test_known_counts_at_five_and_six():
    # unlabelled posets 1, 1, 2, 5, 16, 63 and lattices 1, 1, 1, 2, 5, 15
    assert [len(posets(n)) for n in range(6)] == [1, 1, 2, 5, 16, 63]
    assert [len(lattices(n)) for n in range(1, 7)] == [1, 1, 1, 2, 5, 15]


def test_upset_lattice_of_antichain_is_boolean():
    l, ups = upset_lattice(FinitePoset((0b01, 0b10)))
    assert ups == (0, 1, 2, 3) and l.size == 4 and l.distributive


def test_lattice_morphism_checker():
    c2, c3 = chain_lattice(2), chain_lattice(3)
    assert check_lattice_morphism(c2, c3, (0, 2)) == (True, None)
    assert check_lattice_morphism(c2, c3, (0, 1))[1] == ("top", 1)


def test_export_hasse_lists_covers():
    dot = export_hasse(chain_lattice(3).poset)
    assert "n0 -> n1;" in dot and "n1 -> n2;" in dot and "n0 -> n2;" not in dot


@given(st.sampled_from([l for s in range(1, 6) for l in lattices(s)]), st.data())
def test_lattice_laws(l, data):
    a, b, c = (data.draw(st.integers(0, l.size - 1)) for _ in range(3))
    m, j = l.meet, l.join
    assert m[a][b] == m[b][a] and j[a][b] == j[b][a]
    assert m[a][j[a][b]] == a and j[a][m[a][b]] == a
    assert m[a][m[b][c]] == m[m[a][b]][c]
    assert l.leq(a, b) == (m[a][b] == a)
    if l.distributive:
        assert m[a][j[b][c]] == j[m[a][b]][m[a][c]]
