"""Sequent calculus: syntax, rules, proof checking and search, semantics."""

from .rules import STL, ProofTree, RuleSet, check_proof, parse_ruleset
from .search import prove_bounded
from .semantics import countermodel_search, eval_algebraic, eval_kripke, eval_topological
from .syntax import Sequent, parse_formula, parse_sequent

__all__ = ["STL", "ProofTree", "RuleSet", "Sequent", "check_proof", "countermodel_search", "eval_algebraic",
           "eval_kripke", "eval_topological", "parse_formula", "parse_ruleset", "parse_sequent", "prove_bounded"]
