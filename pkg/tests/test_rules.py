import pytest

from nablalab.errors import LanguageModeError, RuleNotInSet, SchemaMismatch, UnknownRule
from nablalab.logic.rules import (AXIOM_SCHEMAS, BASE_RULES, EXTRA_RULES, HEYTING_RULES, RULE_PARAMS, STL, ProofTree,
                                  axiom_instances, build, check_proof, match_sequent, node, parse_ruleset,
                                  rule_instance_matches)
from nablalab.logic.syntax import Atom, parse_formula, parse_sequent

p, q, r = Atom("p"), Atom("q"), Atom("r")


def test_ruleset_parsing_and_printing():
    assert parse_ruleset("STL") == STL
    rs = parse_ruleset("STL(N, Fa_a, H)")
    assert str(rs) == "STL(N, Fa_a, H)" and rs.tags == {"N", "Fa", "H"}
    assert parse_ruleset("N,Fa,H") == parse_ruleset(["Fa", "N", "H"])
    with pytest.raises(UnknownRule):
        parse_ruleset("STL(Q)")


def test_ruleset_allows():
    rs = parse_ruleset("STL(N)")
    assert all(rs.allows(b) for b in BASE_RULES)
    assert rs.allows("N") and not rs.allows("R") and not rs.allows("Lsup") and not rs.allows("N_a")


@pytest.mark.parametrize("rule", BASE_RULES + EXTRA_RULES + HEYTING_RULES)
def test_built_instances_are_recognised(rule):
    letters = RULE_PARAMS[rule]
    args = {"G": [p], "P": [q], "A": p, "B": r, "D": [r]}
    prems, concl = build(rule, **{k: args[k] for k in letters})
    assert rule_instance_matches(rule, concl, prems)


def test_nabla_rule_shape():
    prems, concl = build("nabla", A=p, B=q)
    assert prems == [parse_sequent("p => q")]
    assert concl == parse_sequent("na p => na q")
    prems, concl = build("N", G=[p, q], D=[r])
    assert concl == parse_sequent("na p, na q => na r")


def test_axiom_matching():
    pattern = parse_sequent(AXIOM_SCHEMAS["R"][0], schema=True)
    assert match_sequent(pattern, parse_sequent("p & q => na(p & q)")) == {"A": parse_formula("p & q")}
    assert match_sequent(pattern, parse_sequent("p => na q")) is None
    assert axiom_instances("L", {"A": q}) == [parse_sequent("na q => q")]


def test_checker_accepts_small_proof():
    t = node("Land1", "p & q => p", node("Ax", "p => p"))
    assert check_proof(t).ok and t.height == 2 and t.size == 2


@pytest.mark.parametrize("tree, rs, err", [
    (node("Magic", "p => q"), "STL", UnknownRule),
    (node("R", "p => na p", node("Ax", "p => p")), "STL", RuleNotInSet),
    (node("Ax", "p => q"), "STL", SchemaMismatch),
    (node("R_a", "p => na q"), "STL(R_a)", SchemaMismatch),
    (node("hyp", "p => q"), "STL", SchemaMismatch),
    (node("Ax", "p > q => p > q"), "STL", LanguageModeError),
])
def test_checker_rejections(tree, rs, err):
    v = check_proof(tree, rs)
    assert not v.ok and isinstance(v.error, err) and v.path == ()


def test_first_bad_node_is_reported():
    t = node("Rand", "p => p & q", node("Ax", "p => p"), node("Ax", "p => q"))
    v = check_proof(t, "STL", hypotheses=["p => q"])
    assert v.path == (1,) and "SchemaMismatch" in v.describe()
    fixed = node("Rand", "p => p & q", node("Ax", "p => p"), node("hyp", "p => q"))
    assert check_proof(fixed, "STL", hypotheses=["p => q"]).ok


def test_aliases_and_json_round_trip():
    t = node("L∧1", "p & q => p", node("Ax", "p => p"))
    assert t.rule == "Land1"
    assert ProofTree.from_json(t.to_json()) == t
