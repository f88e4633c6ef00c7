import pytest
from hypothesis import given, strategies as st

from conftest import formulas
from nablalab.errors import FormulaSyntaxError, LanguageModeError
from nablalab.logic.syntax import (BOT, TOP, And, Atom, Imp, Meta, Nabla, Or, Sup, atoms, parse_formula,
                                   parse_sequent, render, sequent, size, subformulas, uses_sup)

p, q, r = Atom("p"), Atom("q"), Atom("r")


@pytest.mark.parametrize("text, tree", [
    ("p & q | r", Or(And(p, q), r)),
    ("p -> q -> r", Imp(p, Imp(q, r))),
    ("na p & q", And(Nabla(p), q)),
    ("na(p & q)", Nabla(And(p, q))),
    ("na na p", Nabla(Nabla(p))),
    ("T -> F", Imp(TOP, BOT)),
    ("p | q & r", Or(p, And(q, r))),
    ("(p -> q) -> r", Imp(Imp(p, q), r)),
    ("∇p ∧ ⊤ → ⊥", Imp(And(Nabla(p), TOP), BOT)),
])
def test_parse_precedence(text, tree):
    assert parse_formula(text) == tree


def test_render_examples():
    assert render(Nabla(Imp(p, q))) == "na(p -> q)"
    assert render(Imp(Imp(p, q), r)) == "(p -> q) -> r"
    assert render(Nabla(Imp(TOP, p)), unicode=True) == "∇(⊤ → p)"
    assert render(Nabla(p), unicode=True) == "∇p"


@given(formulas(sup=True))
def test_render_parse_round_trip(f):
    assert parse_formula(render(f), intuitionistic=True) == f
    assert parse_formula(render(f, unicode=True), intuitionistic=True) == f


def test_sup_needs_intuitionistic_mode():
    with pytest.raises(LanguageModeError):
        parse_formula("p > q")
    assert parse_formula("p ⊃ q", intuitionistic=True) == Sup(p, q)


@pytest.mark.parametrize("text, pos", [("p &", 3), ("(p", 2), ("p $ q", 2), ("p q", 2)])
def test_syntax_errors_report_position(text, pos):
    with pytest.raises(FormulaSyntaxError) as e:
        parse_formula(text)
    assert e.value.position == pos


def test_sequents():
    s = parse_sequent("q, p => r")
    assert s.gamma == (p, q) and s.delta == (r,)
    assert str(s) == "p, q => r"
    assert parse_sequent("=>") == sequent()
    assert parse_sequent("p, p =>").gamma == (p, p)
    with pytest.raises(FormulaSyntaxError):
        parse_sequent("p => q, r")


def test_schema_metavariables():
    assert parse_formula("A & p", schema=True) == And(Meta("A"), p)
    assert parse_formula("A & p") == And(Atom("A"), p)


def test_helpers():
    f = parse_formula("na(p -> q) & p")
    assert atoms(f) == {"p", "q"}
    assert size(f) == 6
    assert subformulas(f) == {f, Nabla(Imp(p, q)), Imp(p, q), p, q}
    assert not uses_sup(f)


@given(formulas())
def test_subformulas_bounded_by_size(f):
    assert len(subformulas(f)) <= size(f)
