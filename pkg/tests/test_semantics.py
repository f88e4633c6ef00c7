import pytest
from hypothesis import given, strategies as st

from conftest import formulas
from nablalab.catalog import algebras_up_to, frames, normal_frames
from nablalab.kripke import KripkeFrame, normality_witness, upset_algebra
from nablalab.order import chain_poset
from nablalab.logic import semantics
from nablalab.logic.semantics import (countermodel_search, eval_algebraic, eval_formula, eval_kripke,
                                      eval_topological, soundness_sweep, topological_algebra)
from nablalab.logic.syntax import parse_sequent, sequent
from nablalab.algebra import verify_nabla_algebra

NORMAL = list(normal_frames(2)) + list(normal_frames(3))
FRAMES = [f for n in range(1, 4) for f in frames(n)]


def _valuation(data, f):
    ups = f.poset.upsets
    return {n: data.draw(st.sampled_from(ups)) for n in "pqr"}


@given(st.sampled_from(FRAMES), formulas(sup=True), formulas(sup=True), st.data())
def test_forcing_matches_upset_algebra(f, g, h, data):
    v = _valuation(data, f)
    s = sequent([g], [h])
    a = upset_algebra(f)
    index = {u: i for i, u in enumerate(f.poset.upsets)}
    assert eval_kripke(f, v, s).holds == eval_algebraic(a, {n: index[u] for n, u in v.items()}, s)


@given(st.sampled_from(NORMAL), formulas(sup=True), formulas(sup=True), st.data())
def test_topological_matches_kripke(f, g, h, data):
    v = _valuation(data, f)
    s = sequent([g], [h])
    pi = normality_witness(f)
    assert eval_topological(f.poset, pi, v, s) == eval_kripke(f, v, s).holds


def test_topological_algebra_is_a_nabla_algebra():
    for f in NORMAL:
        assert verify_nabla_algebra(topological_algebra(f.poset, normality_witness(f)))[0]


def test_failing_world_is_reported():
    f = KripkeFrame(chain_poset(2), (0, 0))
    r = eval_kripke(f, {"p": 0}, "=> na T")
    assert not r.holds and r.failing_world == 0
    bad = next(m for m in range(4) if not f.poset.is_upset(m))
    with pytest.raises(ValueError):
        eval_kripke(f, {"p": bad}, "p => p")


def test_top_to_nabla_top_refuted_by_left_algebra():
    c = countermodel_search("T => na T")
    l = c.algebra.lattice
    assert set(c.algebra.nabla) == {l.bot} and l.size == 2
    assert countermodel_search("T => na T", "STL(N)") is None


def test_nabla_meet_countermodel():
    c = countermodel_search("na p & na q => na(p & q)")
    a = c.algebra
    assert "N" not in a.tags and not eval_algebraic(a, c.valuation, "na p & na q => na(p & q)")
    assert countermodel_search("na p & na q => na(p & q)", "STL(N)") is None


def test_eval_formula_values():
    a = algebras_up_to(2)[-1]
    assert eval_formula(a, {}, parse_sequent("=> T").delta[0]) == a.lattice.top


def test_soundness_sweep_has_no_violations():
    r = soundness_sweep(max_size=4)
    assert r.ok and set(r.checked) >= {"cut", "nabla", "N", "Fa", "Fu", "Lsup"}


def test_soundness_sweep_catches_rules_outside_their_variety(monkeypatch):
    # dropping the variety restriction must surface counterexamples
    for rule in ("N", "R", "L", "Fa", "Fu"):
        monkeypatch.setitem(semantics.RULE_TAG, rule, None)
    r = soundness_sweep(max_size=3, rules=("N", "R", "L", "Fa", "Fu"))
    assert {v[0] for v in r.violations} == {"N", "R", "L", "Fa", "Fu"}
