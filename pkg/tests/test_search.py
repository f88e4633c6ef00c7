import pytest

from nablalab.logic.rules import check_proof
from nablalab.logic.search import BUDGET_EXCEEDED, NOT_FOUND, PROVED, cut_pool, prove_bounded
from nablalab.logic.semantics import countermodel_search
from nablalab.logic.syntax import BOT, TOP, And, Imp, Nabla, Or, parse_formula, parse_sequent, sequent


@pytest.mark.parametrize("goal, rs, height", [
    ("p => p", "STL", 1),
    ("=> p -> p", "STL", 2),
    ("p & q => q & p", "STL", 3),
    ("p | q => q | p", "STL", 3),
    ("na(p -> q), p => q", "STL", 3),
    ("p => q -> na p", "STL", 3),
    ("na F => F", "STL", 4),
    ("T => na T", "STL(N)", 3),
    ("na p & na q => na(p & q)", "STL(N)", 7),
    ("p => na p", "STL(R)", 2),
    ("na p => p", "STL(L)", 2),
])
def test_shortest_proofs(goal, rs, height):
    r = prove_bounded(goal, rs, depth=8)
    assert r.status == PROVED and r.depth == height
    assert check_proof(r.tree, rs).ok and r.tree.conclusion == parse_sequent(goal)


@pytest.mark.parametrize("goal, rs", [
    ("T => na T", "STL"),
    ("p, q => r", "STL"),
    ("na p & na q => na(p & q)", "STL"),
    ("p => na p", "STL(L)"),
])
def test_unprovable_goals_exhaust_the_bound(goal, rs):
    assert prove_bounded(goal, rs, depth=5).status == NOT_FOUND
    assert countermodel_search(goal, rs, max_size=4) is not None


def test_node_budget():
    r = prove_bounded("na(p | q) => na p | na q", "STL", depth=8, max_nodes=50)
    assert r.status == BUDGET_EXCEEDED and r.tree is None


def test_depth_must_be_positive():
    with pytest.raises(ValueError):
        prove_bounded("p => p", depth=0)


def test_cut_pool_contents():
    pool = cut_pool(parse_sequent("p => q"))
    p = parse_formula("p")
    assert {p, Nabla(p), Nabla(Nabla(p)), Imp(TOP, p), Nabla(Imp(TOP, p))} <= set(pool)
    assert pool == sorted(set(pool), key=pool.index)


def _one_formula(s):
    left = TOP
    for g in s.gamma:
        left = g if left is TOP else And(left, g)
    right = s.delta[0] if s.delta else BOT
    return sequent([], [Imp(left, right)])


@pytest.mark.parametrize("goal", ["p, q => p", "p, q => q & p", "p =>", "p, q => r", "na p, q => na p",
                                  "p | q, r => r", "p, F =>", "na p => p"])
def test_single_formula_form_agrees(goal):
    s = parse_sequent(goal)
    one = _one_formula(s)
    a = prove_bounded(s, "STL(N)", depth=6)
    b = prove_bounded(one, "STL(N)", depth=9)
    assert (a.status == PROVED) == (b.status == PROVED)
    if a.status != PROVED:
        assert countermodel_search(s, "STL(N)", max_size=4) is not None
        assert countermodel_search(one, "STL(N)", max_size=4) is not None
