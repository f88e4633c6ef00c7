"""Formulas, sequents, a printer and a parser.

ASCII grammar (Unicode symbols in brackets are accepted too):

    T [⊤]   F [⊥]   &  [∧]   |  [∨]   -> [→]   > [⊃]   na [∇]   => [⇒]

``na`` binds tightest, then ``&``, then ``|``, then ``->`` and ``>``, which
share a level and associate to the right.  ``&`` and ``|`` associate to the
left.  Upper-case identifiers other than T and F parse as schema
metavariables when ``schema=True``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable

from ..errors import FormulaSyntaxError, LanguageModeError


class Formula:
    __slots__ = ()

    def __str__(self):
        return render(self)

    @property
    def pretty(self) -> str:
        return render(self, unicode=True)


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    name: str

    def __repr__(self):
        return self.name


@dataclass(frozen=True, repr=False)
class Meta(Formula):
    name: str

    def __repr__(self):
        return self.name


@dataclass(frozen=True, repr=False)
class Top(Formula):
    def __repr__(self):
        return "T"


@dataclass(frozen=True, repr=False)
class Bot(Formula):
    def __repr__(self):
        return "F"


@dataclass(frozen=True, repr=False)
class Nabla(Formula):
    body: Formula

    def __repr__(self):
        return render(self)


@dataclass(frozen=True, repr=False)
class And(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return render(self)


@dataclass(frozen=True, repr=False)
class Or(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return render(self)


@dataclass(frozen=True, repr=False)
class Imp(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return render(self)


@dataclass(frozen=True, repr=False)
class Sup(Formula):
    """Intuitionistic implication ⊃."""

    left: Formula
    right: Formula

    def __repr__(self):
        return render(self)


TOP = Top()
BOT = Bot()
BINARY = (And, Or, Imp, Sup)

_PREC = {Imp: 1, Sup: 1, Or: 2, And: 3, Nabla: 4}
_ASCII = {And: " & ", Or: " | ", Imp: " -> ", Sup: " > "}
_UNICODE = {And: " ∧ ", Or: " ∨ ", Imp: " → ", Sup: " ⊃ "}


def _prec(f: Formula) -> int:
    return _PREC.get(type(f), 5)


def render(f: Formula, unicode=False) -> str:
    def wrap(g, ok):
        s = go(g)
        return s if ok else f"({s})"

    def go(g):
        if isinstance(g, (Atom, Meta)):
            return g.name
        if isinstance(g, Top):
            return "⊤" if unicode else "T"
        if isinstance(g, Bot):
            return "⊥" if unicode else "F"
        if isinstance(g, Nabla):
            inner = go(g.body)
            head = "∇" if unicode else "na"
            if _prec(g.body) >= 4:
                return f"{head}{inner}" if unicode else f"{head} {inner}"
            return f"{head}({inner})"
        p = _prec(g)
        op = (_UNICODE if unicode else _ASCII)[type(g)]
        if p == 1:  # right associative
            return wrap(g.left, _prec(g.left) > 1) + op + wrap(g.right, _prec(g.right) >= 1)
        return wrap(g.left, _prec(g.left) >= p) + op + wrap(g.right, _prec(g.right) > p)

    return go(f)


@lru_cache(maxsize=1 << 18)
def sort_key(f: Formula) -> str:
    return render(f)


@dataclass(frozen=True)
class Sequent:
    """Antecedent multiset (kept sorted) and a succedent of at most one formula."""

    gamma: tuple[Formula, ...]
    delta: tuple[Formula, ...]

    def __post_init__(self):
        if len(self.delta) > 1:
            raise ValueError("succedent holds at most one formula")

    def __str__(self):
        return render_sequent(self)

    @property
    def pretty(self) -> str:
        return render_sequent(self, unicode=True)

    @cached_property
    def formulas(self) -> tuple[Formula, ...]:
        return self.gamma + self.delta


def sequent(gamma: Iterable[Formula] = (), delta: Iterable[Formula] = ()) -> Sequent:
    return Sequent(tuple(sorted(gamma, key=sort_key)), tuple(delta))


def render_sequent(s: Sequent, unicode=False) -> str:
    arrow = "⇒" if unicode else "=>"
    left = ", ".join(render(f, unicode) for f in s.gamma)
    right = ", ".join(render(f, unicode) for f in s.delta)
    return f"{left} {arrow} {right}".strip()


# helpers -------------------------------------------------------------------

def big_and(fs: Iterable[Formula]) -> Formula:
    fs = list(fs)
    if not fs:
        return TOP
    out = fs[0]
    for f in fs[1:]:
        out = And(out, f)
    return out


def big_or(fs: Iterable[Formula]) -> Formula:
    fs = list(fs)
    if not fs:
        return BOT
    out = fs[0]
    for f in fs[1:]:
        out = Or(out, f)
    return out


def subformulas(f: Formula) -> set[Formula]:
    out = {f}
    if isinstance(f, Nabla):
        out |= subformulas(f.body)
    elif isinstance(f, BINARY):
        out |= subformulas(f.left) | subformulas(f.right)
    return out


def atoms(f) -> set[str]:
    if isinstance(f, Sequent):
        return set().union(*(atoms(g) for g in f.formulas)) if f.formulas else set()
    if isinstance(f, Atom):
        return {f.name}
    if isinstance(f, Nabla):
        return atoms(f.body)
    if isinstance(f, BINARY):
        return atoms(f.left) | atoms(f.right)
    return set()


def uses_sup(f) -> bool:
    if isinstance(f, Sequent):
        return any(uses_sup(g) for g in f.formulas)
    if isinstance(f, Sup):
        return True
    if isinstance(f, Nabla):
        return uses_sup(f.body)
    if isinstance(f, BINARY):
        return uses_sup(f.left) or uses_sup(f.right)
    return False


def size(f: Formula) -> int:
    if isinstance(f, Nabla):
        return 1 + size(f.body)
    if isinstance(f, BINARY):
        return 1 + size(f.left) + size(f.right)
    return 1


# parser --------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(=>|⇒)|(->|→)|(>|⊃)|(&|∧)|(\||∨)|(∇)|(⊤)|(⊥)|(\()|(\))|(,)|([A-Za-z_][A-Za-z0-9_]*))")
_KINDS = ["SEQ", "IMP", "SUP", "AND", "OR", "NA", "TOP", "BOT", "LP", "RP", "COMMA", "ID"]


def _tokenize(text: str):
    pos = 0
    out = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        kind = _KINDS[m.lastindex - 1]
        value = m.group(m.lastindex)
        if kind == "ID":
            kind = {"na": "NA", "T": "TOP", "F": "BOT"}.get(value, "ID")
        out.append((kind, value, start))
        pos = m.end()
    out.append(("END", "", len(text)))
    return out


class _Parser:
    def __init__(self, text, intuitionistic, schema):
        self.toks = _tokenize(text)
        self.i = 0
        self.intuitionistic = intuitionistic
        self.schema = schema

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind and tok[0] != kind:
            raise FormulaSyntaxError(f"expected {kind}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def arrow(self):
        left = self.disj()
        kind = self.peek()[0]
        if kind == "IMP":
            self.take()
            return Imp(left, self.arrow())
        if kind == "SUP":
            tok = self.take()
            if not self.intuitionistic:
                raise LanguageModeError(f"⊃ at position {tok[2]} needs the intuitionistic language", witness=tok[2])
            return Sup(left, self.arrow())
        return left

    def disj(self):
        out = self.conj()
        while self.peek()[0] == "OR":
            self.take()
            out = Or(out, self.conj())
        return out

    def conj(self):
        out = self.unary()
        while self.peek()[0] == "AND":
            self.take()
            out = And(out, self.unary())
        return out

    def unary(self):
        kind, value, pos = self.peek()
        if kind == "NA":
            self.take()
            return Nabla(self.unary())
        if kind == "TOP":
            self.take()
            return TOP
        if kind == "BOT":
            self.take()
            return BOT
        if kind == "ID":
            self.take()
            if self.schema and value[0].isupper():
                return Meta(value)
            return Atom(value)
        if kind == "LP":
            self.take()
            inner = self.arrow()
            self.take("RP")
            return inner
        raise FormulaSyntaxError(f"expected a formula, found {value or 'end of input'!r}", pos)

    def formula_list(self, stop):
        out = []
        if self.peek()[0] in stop:
            return out
        out.append(self.arrow())
        while self.peek()[0] == "COMMA":
            self.take()
            out.append(self.arrow())
        return out


def parse_formula(text: str, intuitionistic=False, schema=False) -> Formula:
    p = _Parser(text, intuitionistic, schema)
    f = p.arrow()
    p.take("END")
    return f


def parse_sequent(text: str, intuitionistic=False, schema=False) -> Sequent:
    p = _Parser(text, intuitionistic, schema)
    gamma = p.formula_list({"SEQ"})
    p.take("SEQ")
    start = p.peek()[2]
    delta = p.formula_list({"END"})
    if len(delta) > 1:
        raise FormulaSyntaxError("succedent holds at most one formula", start)
    p.take("END")
    return sequent(gamma, delta)


def as_sequent(s, intuitionistic=True) -> Sequent:
    return s if isinstance(s, Sequent) else parse_sequent(s, intuitionistic=intuitionistic)
