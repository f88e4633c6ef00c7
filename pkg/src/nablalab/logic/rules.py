"""Rule schemas, rule sets, proof trees and the proof checker.

Every rule is written once as a builder: parameters in, (premises,
conclusion) out.  The checker guesses parameters from a node and accepts
only when rebuilding gives back exactly the node's sequents (multisets
compared after sorting).
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..errors import LanguageModeError, NablaError, RuleNotInSet, SchemaMismatch, UnknownRule
from .syntax import (
    BOT,
    TOP,
    And,
    Atom,
    Bot,
    Formula,
    Imp,
    Meta,
    Nabla,
    Or,
    Sequent,
    Sup,
    Top,
    as_sequent,
    parse_sequent,
    sequent,
    uses_sup,
)

EXTRA_RULES = ("D", "N", "R", "L", "Fa", "Fu")
BASE_RULES = ("Ax", "Lbot", "Ltop", "Lw", "Rw", "Lc", "cut", "Land1", "Land2", "Rand",
              "Lor", "Ror1", "Ror2", "nabla", "Limp", "Rimp")
HEYTING_RULES = ("Lsup", "Rsup")
AXIOM_NAMES = tuple(f"{t}_a" for t in EXTRA_RULES)

ALIASES = {
    "L⊥": "Lbot", "L⊤": "Ltop", "L∧1": "Land1", "L∧2": "Land2", "R∧": "Rand", "L∨": "Lor",
    "R∨1": "Ror1", "R∨2": "Ror2", "∇": "nabla", "L→": "Limp", "R→": "Rimp",
    "L⊃": "Lsup", "R⊃": "Rsup", "(Fa_a)": "Fa_a", "(Fu_a)": "Fu_a",
}


@dataclass(frozen=True)
class RuleSet:
    rules: frozenset = frozenset()
    heyting: bool = False
    axioms: frozenset = frozenset()

    def __str__(self):
        parts = [t for t in EXTRA_RULES if t in self.rules]
        parts += [f"{t}_a" for t in EXTRA_RULES if t in self.axioms]
        if self.heyting:
            parts.append("H")
        return f"STL({', '.join(parts)})" if parts else "STL"

    @property
    def tags(self) -> frozenset:
        """Algebra tags of the matching variety."""
        out = set(self.rules) | set(self.axioms)
        if self.heyting:
            out.add("H")
        return frozenset(out)

    def allows(self, rule: str) -> bool:
        if rule in BASE_RULES:
            return True
        if rule in HEYTING_RULES:
            return self.heyting
        if rule in EXTRA_RULES:
            return rule in self.rules
        if rule in AXIOM_NAMES:
            return rule[:-2] in self.axioms
        return False


def parse_ruleset(text: str | RuleSet | Iterable[str] = "") -> RuleSet:
    """Accepts "STL", "STL(N, Fa)", "N,Fa,H", "STL(Fu_a)" or an iterable of names."""
    if isinstance(text, RuleSet):
        return text
    if isinstance(text, str):
        body = text.strip()
        m = re.fullmatch(r"STL\s*(?:\((.*)\))?", body)
        if m:
            body = m.group(1) or ""
        names = [n.strip() for n in body.split(",") if n.strip()]
    else:
        names = list(text)
    rules, axioms, heyting = set(), set(), False
    for n in names:
        if n == "H":
            heyting = True
        elif n in EXTRA_RULES:
            rules.add(n)
        elif n in AXIOM_NAMES:
            axioms.add(n[:-2])
        else:
            raise UnknownRule(f"unknown rule set member {n!r}", witness=n)
    return RuleSet(frozenset(rules), heyting, frozenset(axioms))


STL = RuleSet()


# builders ------------------------------------------------------------------

def _s(gamma, delta=()):
    return sequent(gamma, delta)


def _nab(fs):
    return [Nabla(f) for f in fs]


def build(rule: str, G=(), P=(), A=None, B=None, D=()):
    """(premises, conclusion) of ``rule`` for context G, second context P,
    principal parts A, B and succedent D."""
    G, P, D = list(G), list(P), list(D)
    if rule == "Ax":
        return [], _s([A], [A])
    if rule == "Lbot":
        return [], _s([BOT])
    if rule == "Ltop":
        return [], _s([], [TOP])
    if rule == "Lw":
        return [_s(G, D)], _s(G + [A], D)
    if rule == "Rw":
        return [_s(G)], _s(G, [A])
    if rule == "Lc":
        return [_s(G + [A, A], D)], _s(G + [A], D)
    if rule == "cut":
        return [_s(G, [A]), _s(P + [A], D)], _s(P + G, D)
    if rule == "Land1":
        return [_s(G + [A], D)], _s(G + [And(A, B)], D)
    if rule == "Land2":
        return [_s(G + [B], D)], _s(G + [And(A, B)], D)
    if rule == "Rand":
        return [_s(G, [A]), _s(G, [B])], _s(G, [And(A, B)])
    if rule == "Lor":
        return [_s([A], D), _s([B], D)], _s([Or(A, B)], D)
    if rule == "Ror1":
        return [_s(G, [A])], _s(G, [Or(A, B)])
    if rule == "Ror2":
        return [_s(G, [B])], _s(G, [Or(A, B)])
    if rule == "nabla":
        return [_s([A], [B])], _s([Nabla(A)], [Nabla(B)])
    if rule == "Limp":
        return [_s(G, [A]), _s(G + [B], D)], _s(G + [Nabla(Imp(A, B))], D)
    if rule == "Rimp":
        return [_s(_nab(G) + [A], [B])], _s(G, [Imp(A, B)])
    if rule == "R":
        return [_s(G, [A])], _s(G, [Nabla(A)])
    if rule == "L":
        return [_s(G + [A], D)], _s(G + [Nabla(A)], D)
    if rule == "D":
        return [_s(G + [A], D), _s(G + [B], D)], _s(G + [Or(A, B)], D)
    if rule == "N":
        return [_s(G, D)], _s(_nab(G), _nab(D))
    if rule == "Fa":
        return [_s(G + [A], [B])], _s(G, [Nabla(Imp(A, B))])
    if rule == "Fu":
        return [_s(_nab(G), [A]), _s(_nab(G) + [B], _nab(D))], _s(G + [Imp(A, B)], D)
    if rule == "Lsup":
        return [_s(G, [A]), _s(G + [B], D)], _s(G + [Sup(A, B)], D)
    if rule == "Rsup":
        return [_s(G + [A], [B])], _s(G, [Sup(A, B)])
    raise UnknownRule(f"unknown rule {rule!r}", witness=rule)


# parameters a builder needs, used by the soundness sweep
RULE_PARAMS = {
    "Ax": "A", "Lbot": "", "Ltop": "", "Lw": "GAD", "Rw": "GA", "Lc": "GAD", "cut": "GPAD",
    "Land1": "GABD", "Land2": "GABD", "Rand": "GAB", "Lor": "ABD", "Ror1": "GAB", "Ror2": "GAB",
    "nabla": "AB", "Limp": "GABD", "Rimp": "GAB", "R": "GA", "L": "GAD", "D": "GABD",
    "N": "GD", "Fa": "GAB", "Fu": "GABD", "Lsup": "GABD", "Rsup": "GAB",
}


def _minus(ms: Sequence[Formula], f: Formula):
    out = list(ms)
    try:
        out.remove(f)
    except ValueError:
        return None
    return out


def _diff(big: Sequence[Formula], small: Sequence[Formula]):
    c = Counter(big)
    c.subtract(Counter(small))
    if any(v < 0 for v in c.values()):
        return None
    return list(c.elements())


def _guesses(rule: str, c: Sequent, prems: list[Sequent]):
    """Candidate parameter dicts for a node; wrong guesses are filtered by rebuilding."""
    g, d = list(c.gamma), list(c.delta)
    one = d[0] if d else None
    if rule == "Ax" and len(g) == 1:
        yield dict(A=g[0])
    elif rule in ("Lbot", "Ltop"):
        yield {}
    elif rule == "Lw" and prems:
        extra = _diff(g, prems[0].gamma)
        if extra and len(extra) == 1:
            yield dict(G=prems[0].gamma, A=extra[0], D=d)
    elif rule == "Rw" and one is not None:
        yield dict(G=g, A=one)
    elif rule == "Lc":
        for a in set(g):
            yield dict(G=_minus(g, a), A=a, D=d)
    elif rule == "cut" and len(prems) == 2 and prems[0].delta:
        a = prems[0].delta[0]
        rest = _minus(prems[1].gamma, a)
        if rest is not None:
            yield dict(G=prems[0].gamma, P=rest, A=a, D=prems[1].delta)
    elif rule in ("Land1", "Land2", "Lor", "D", "Limp", "L", "Fu", "Lsup"):
        kind = {"Land1": And, "Land2": And, "Lor": Or, "D": Or, "Limp": Nabla, "L": Nabla,
                "Fu": Imp, "Lsup": Sup}[rule]
        for x in set(g):
            if not isinstance(x, kind):
                continue
            rest = _minus(g, x)
            if rule == "L":
                yield dict(G=rest, A=x.body, D=d)
            elif rule == "Limp":
                if isinstance(x.body, Imp):
                    yield dict(G=rest, A=x.body.left, B=x.body.right, D=d)
            else:
                yield dict(G=rest, A=x.left, B=x.right, D=d)
    elif rule in ("Rand", "Ror1", "Ror2", "Rimp", "Rsup") and one is not None:
        kind = {"Rand": And, "Ror1": Or, "Ror2": Or, "Rimp": Imp, "Rsup": Sup}[rule]
        if isinstance(one, kind):
            yield dict(G=g, A=one.left, B=one.right)
    elif rule == "nabla" and len(g) == 1 and isinstance(g[0], Nabla) and isinstance(one, Nabla):
        yield dict(A=g[0].body, B=one.body)
    elif rule == "R" and isinstance(one, Nabla):
        yield dict(G=g, A=one.body)
    elif rule == "N" and prems:
        yield dict(G=prems[0].gamma, D=prems[0].delta)
    elif rule == "Fa" and isinstance(one, Nabla) and isinstance(one.body, Imp):
        yield dict(G=g, A=one.body.left, B=one.body.right)


def rule_instance_matches(rule: str, conclusion: Sequent, premises: Sequence[Sequent]) -> bool:
    prems = list(premises)
    for params in _guesses(rule, conclusion, prems):
        built_prems, built_concl = build(rule, **params)
        if built_concl == conclusion and built_prems == prems:
            return True
    return False


# axiom schemas --------------------------------------------------------------

AXIOM_SCHEMAS = {
    "D": ["A & (B | C) => (A & B) | (A & C)", "(A & B) | (A & C) => A & (B | C)"],
    "N": ["na(A & B) => na A & na B", "na A & na B => na(A & B)", "na T => T", "T => na T"],
    "R": ["A => na A"],
    "L": ["na A => A"],
    "Fa": ["A => na(T -> A)", "na(T -> A) => A"],
    "Fu": ["A => T -> na A", "T -> na A => A"],
}


def axiom_patterns(tag: str) -> list[Sequent]:
    return [parse_sequent(t, schema=True) for t in AXIOM_SCHEMAS[tag]]


def match(pattern: Formula, f: Formula, binding: dict) -> bool:
    if isinstance(pattern, Meta):
        if pattern.name in binding:
            return binding[pattern.name] == f
        binding[pattern.name] = f
        return True
    if type(pattern) is not type(f):
        return False
    if isinstance(pattern, (Atom, Top, Bot)):
        return pattern == f
    if isinstance(pattern, Nabla):
        return match(pattern.body, f.body, binding)
    return match(pattern.left, f.left, binding) and match(pattern.right, f.right, binding)


def match_sequent(pattern: Sequent, s: Sequent):
    """Binding for a one-formula-per-side pattern, or None."""
    if len(pattern.gamma) != len(s.gamma) or len(pattern.delta) != len(s.delta):
        return None
    binding: dict = {}
    for p, f in zip(pattern.gamma + pattern.delta, s.gamma + s.delta):
        if not match(p, f, binding):
            return None
    return binding


def instantiate(pattern: Formula, binding: dict) -> Formula:
    if isinstance(pattern, Meta):
        return binding[pattern.name]
    if isinstance(pattern, Nabla):
        return Nabla(instantiate(pattern.body, binding))
    if isinstance(pattern, (And, Or, Imp, Sup)):
        return type(pattern)(instantiate(pattern.left, binding), instantiate(pattern.right, binding))
    return pattern


def axiom_instances(tag: str, binding: dict) -> list[Sequent]:
    return [sequent([instantiate(f, binding) for f in p.gamma], [instantiate(f, binding) for f in p.delta])
            for p in axiom_patterns(tag)]


# proof trees ----------------------------------------------------------------

@dataclass(frozen=True)
class ProofTree:
    rule: str
    conclusion: Sequent
    premises: tuple = ()
    principal: tuple = field(default=(), compare=False)

    @property
    def height(self) -> int:
        return 1 + max((p.height for p in self.premises), default=0)

    @property
    def size(self) -> int:
        return 1 + sum(p.size for p in self.premises)

    def nodes(self, path=()):
        yield path, self
        for i, p in enumerate(self.premises):
            yield from p.nodes(path + (i,))

    def to_json(self) -> dict:
        return {"rule": self.rule, "sequent": str(self.conclusion),
                "premises": [p.to_json() for p in self.premises]}

    @classmethod
    def from_json(cls, doc: dict) -> "ProofTree":
        return cls(ALIASES.get(doc["rule"], doc["rule"]), as_sequent(doc["sequent"]),
                   tuple(cls.from_json(p) for p in doc.get("premises", [])))


def node(rule: str, s, *premises: ProofTree) -> ProofTree:
    return ProofTree(ALIASES.get(rule, rule), as_sequent(s), tuple(premises))


@dataclass(frozen=True)
class ProofVerdict:
    ok: bool
    path: tuple | None = None
    error: NablaError | None = None

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "accepted"
        return f"{type(self.error).__name__} at node {list(self.path)}: {self.error}"


def check_node(t: ProofTree, rs: RuleSet, hypotheses=()) -> NablaError | None:
    rule = t.rule
    prems = [p.conclusion for p in t.premises]
    if not rs.heyting and uses_sup(t.conclusion):
        return LanguageModeError("⊃ needs the intuitionistic rules")
    if rule == "hyp":
        if t.premises or t.conclusion not in hypotheses:
            return SchemaMismatch(f"{t.conclusion} is not a given hypothesis")
        return None
    known = rule in BASE_RULES or rule in HEYTING_RULES or rule in EXTRA_RULES or rule in AXIOM_NAMES
    if not known:
        return UnknownRule(f"unknown rule {rule!r}")
    if not rs.allows(rule):
        return RuleNotInSet(f"rule {rule} is not available in {rs}")
    if rule in AXIOM_NAMES:
        if t.premises:
            return SchemaMismatch(f"axiom {rule} takes no premises")
        if not any(match_sequent(p, t.conclusion) is not None for p in axiom_patterns(rule[:-2])):
            return SchemaMismatch(f"{t.conclusion} is not an instance of {rule}")
        return None
    if not rule_instance_matches(rule, t.conclusion, prems):
        shown = "; ".join(map(str, prems)) or "no premises"
        return SchemaMismatch(f"{shown} / {t.conclusion} is not an instance of {rule}")
    return None


def check_proof(t: ProofTree, rs=STL, hypotheses: Iterable = ()) -> ProofVerdict:
    """Accept iff every node instantiates an available rule; report the first bad node
    in pre-order."""
    rs = parse_ruleset(rs)
    hyps = {as_sequent(h) for h in hypotheses}
    for path, n in t.nodes():
        err = check_node(n, rs, hyps)
        if err is not None:
            err.witness = path
            return ProofVerdict(False, path, err)
    return ProofVerdict(True)
