"""Algebraic, Kripke and topological evaluation of sequents, countermodel
search and the rule-by-rule soundness sweep."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product

import numpy as np

from ..algebra import NablaAlgebra
from ..catalog import algebras_up_to
from ..errors import InternalInconsistency, LanguageModeError, MissingAtom
from ..kripke import KripkeFrame, normal_frame, upset_algebra
from ..order import FinitePoset, full_mask, mask_of, members
from .rules import BASE_RULES, EXTRA_RULES, HEYTING_RULES, RULE_PARAMS, STL, build, parse_ruleset
from .syntax import And, Atom, Bot, Formula, Imp, Meta, Nabla, Or, Sequent, Sup, Top, as_sequent, atoms, uses_sup


class Evaluator:
    """Formula values in one algebra; atoms may map to ints or to numpy arrays
    of element indices (one entry per valuation)."""

    def __init__(self, a: NablaAlgebra):
        l = a.lattice
        self.algebra = a
        self.meet = np.array(l.meet)
        self.join = np.array(l.join)
        self.nabla = np.array(a.nabla)
        self.arrow = np.array(a.arrow)
        self.sup = None if l.heyting is None else np.array(l.heyting)
        self.leq = np.array([[l.leq(x, y) for y in range(l.size)] for x in range(l.size)])
        self.top, self.bot = l.top, l.bot

    def value(self, f: Formula, env: dict, memo=None):
        if memo is not None and f in memo:
            return memo[f]
        if isinstance(f, Atom):
            if f.name not in env:
                raise MissingAtom(f"no value for atom {f.name}", witness=f.name)
            out = env[f.name]
        elif isinstance(f, Top):
            out = self.top
        elif isinstance(f, Bot):
            out = self.bot
        elif isinstance(f, Nabla):
            out = self.nabla[self.value(f.body, env, memo)]
        elif isinstance(f, Meta):
            raise MissingAtom(f"schema variable {f.name} has no value", witness=f.name)
        else:
            x = self.value(f.left, env, memo)
            y = self.value(f.right, env, memo)
            if isinstance(f, And):
                out = self.meet[x, y]
            elif isinstance(f, Or):
                out = self.join[x, y]
            elif isinstance(f, Imp):
                out = self.arrow[x, y]
            else:
                if self.sup is None:
                    raise LanguageModeError("⊃ needs a Heyting algebra")
                out = self.sup[x, y]
        if memo is not None:
            memo[f] = out
        return out

    def holds(self, s: Sequent, env: dict, memo=None):
        left = self.top
        for g in s.gamma:
            left = self.meet[left, self.value(g, env, memo)]
        right = self.value(s.delta[0], env, memo) if s.delta else self.bot
        return self.leq[left, right]


_EVALUATORS: dict = {}


def evaluator(a: NablaAlgebra) -> Evaluator:
    ev = _EVALUATORS.get(id(a))
    if ev is None or ev.algebra is not a:
        ev = _EVALUATORS[id(a)] = Evaluator(a)
    return ev


def eval_formula(a: NablaAlgebra, v: dict, f: Formula) -> int:
    return int(evaluator(a).value(f, v))


def eval_algebraic(a: NablaAlgebra, v: dict, s) -> bool:
    """⋀Γ ≤ ⋁Δ under v, empty Γ read as 1 and empty Δ as 0."""
    s = as_sequent(s)
    if uses_sup(s) and a.lattice.heyting is None:
        raise LanguageModeError("⊃ needs a Heyting algebra")
    return bool(evaluator(a).holds(s, v))


# Kripke ---------------------------------------------------------------------

@dataclass(frozen=True)
class KripkeVerdict:
    holds: bool
    forcing: dict = field(compare=False)
    failing_world: int | None = None

    def __bool__(self):
        return self.holds


def _force(f: KripkeFrame, v: dict, formula: Formula, table: dict) -> int:
    if formula in table:
        return table[formula]
    n = f.size
    p = f.poset
    if isinstance(formula, Atom):
        if formula.name not in v:
            raise MissingAtom(f"no upset for atom {formula.name}", witness=formula.name)
        out = v[formula.name]
    elif isinstance(formula, Top):
        out = full_mask(n)
    elif isinstance(formula, Bot):
        out = 0
    elif isinstance(formula, Nabla):
        inner = _force(f, v, formula.body, table)
        # w forces ∇A iff some u with u R w forces A
        out = mask_of(w for w in range(n) if any(f.rel[u] >> w & 1 for u in members(inner)))
    else:
        x = _force(f, v, formula.left, table)
        y = _force(f, v, formula.right, table)
        if isinstance(formula, And):
            out = x & y
        elif isinstance(formula, Or):
            out = x | y
        elif isinstance(formula, Imp):
            out = mask_of(w for w in range(n) if all(not x >> u & 1 or y >> u & 1 for u in members(f.rel[w])))
        elif isinstance(formula, Sup):
            out = mask_of(w for w in range(n) if all(not x >> u & 1 or y >> u & 1 for u in members(p.up[w])))
        else:
            raise MissingAtom(f"cannot evaluate {formula}")
    table[formula] = out
    return out


def eval_kripke(f: KripkeFrame, v: dict, s) -> KripkeVerdict:
    """Pointwise forcing; the answer and every forced set are compared with the
    upset algebra evaluated under the same valuation."""
    s = as_sequent(s)
    for name, u in v.items():
        if not f.poset.is_upset(u):
            raise ValueError(f"valuation of {name} is not an upset")
    table: dict = {}
    left = full_mask(f.size)
    for g in s.gamma:
        left &= _force(f, v, g, table)
    right = _force(f, v, s.delta[0], table) if s.delta else 0
    bad = left & ~right
    holds = bad == 0

    alg = upset_algebra(f)
    index = {u: i for i, u in enumerate(f.poset.upsets)}
    env = {name: index[u] for name, u in v.items()}
    ev = evaluator(alg)
    for formula, mask in table.items():
        if f.poset.upsets[int(ev.value(formula, env))] != mask:
            raise InternalInconsistency(f"forcing and upset algebra disagree on {formula}", witness=str(formula))
    if bool(ev.holds(s, env)) != holds:
        raise InternalInconsistency("forcing and upset algebra disagree on the sequent", witness=str(s))
    return KripkeVerdict(holds, {str(k): m for k, m in table.items()},
                         None if holds else min(members(bad)))


# topology -------------------------------------------------------------------

def topological_algebra(p: FinitePoset, pi) -> NablaAlgebra:
    """Opens of the upset topology with ∇ = π⁻¹ and U → V = π⁎(U ⊃ V), where π⁎ is
    found by brute force as the largest open whose preimage lies inside."""
    opens = p.upsets
    index = {u: i for i, u in enumerate(opens)}
    n = p.size

    def preimage(u):
        return mask_of(x for x in range(n) if u >> pi[x] & 1)

    def interior(m):
        out = 0
        for o in opens:
            if o & ~m == 0:
                out |= o
        return out

    def push(w):
        out = 0
        for o in opens:
            if preimage(o) & ~w == 0:
                out |= o
        return out

    for o in opens:
        if preimage(o) not in index:
            raise ValueError("pi is not continuous for the upset topology")
    from ..order import upset_lattice
    lat, _ = upset_lattice(p)
    nabla = tuple(index[preimage(o)] for o in opens)
    full = full_mask(n)
    arrow = tuple(tuple(index[push(interior((full & ~u) | w))] for w in opens) for u in opens)
    return NablaAlgebra(lat, nabla, arrow)


def eval_topological(p: FinitePoset, pi, v: dict, s) -> bool:
    """Evaluate in the algebra of opens; checked against Kripke forcing on the frame
    x R y ⟺ x ≤ π(y)."""
    s = as_sequent(s)
    alg = topological_algebra(p, pi)
    index = {u: i for i, u in enumerate(p.upsets)}
    for name, u in v.items():
        if u not in index:
            raise ValueError(f"valuation of {name} is not open")
    env = {name: index[u] for name, u in v.items()}
    answer = bool(evaluator(alg).holds(s, env))
    if eval_kripke(normal_frame(p, pi), v, s).holds != answer:
        raise InternalInconsistency("topological and Kripke evaluation disagree", witness=str(s))
    return answer


# countermodels ----------------------------------------------------------------

def valuation_grid(names, size: int) -> dict:
    """Every valuation of ``names`` into ``size`` elements, in lexicographic order."""
    if not names:
        return {}
    grids = np.indices((size,) * len(names)).reshape(len(names), -1)
    return {name: grids[i] for i, name in enumerate(names)}


@dataclass(frozen=True)
class Countermodel:
    algebra: NablaAlgebra
    valuation: dict
    index: int


def in_variety(a: NablaAlgebra, tags) -> bool:
    return set(tags) <= a.tags


def countermodel_search(s, rs=STL, catalog=None, max_size: int = 5) -> Countermodel | None:
    """First catalog algebra of the matching variety, and first valuation, falsifying s.

    None means only that the catalog holds no countermodel."""
    s = as_sequent(s)
    rs = parse_ruleset(rs)
    need = set(rs.tags) | ({"H"} if uses_sup(s) else set())
    names = sorted(atoms(s))
    models = algebras_up_to(max_size) if catalog is None else catalog
    for i, a in enumerate(models):
        if not in_variety(a, need):
            continue
        env = valuation_grid(names, a.size)
        ok = np.broadcast_to(evaluator(a).holds(s, env), (a.size ** len(names),))
        if not ok.all():
            k = int(np.argmin(ok))
            return Countermodel(a, {n: int(env[n][k]) for n in names}, i)
    return None


# soundness ------------------------------------------------------------------

RULE_TAG = {r: None for r in BASE_RULES} | {r: r for r in EXTRA_RULES} | {r: "H" for r in HEYTING_RULES}


def rule_instances(rule: str, names=("p", "q", "r"), max_context: int = 2):
    """Every instance of a rule whose slots are filled with the given atoms."""
    letters = RULE_PARAMS[rule]
    atoms_ = [Atom(n) for n in names]
    contexts = [list(c) for k in range(max_context + 1) for c in combinations_with_replacement(atoms_, k)]
    choices = []
    for ch in letters:
        if ch in "GP":
            choices.append(contexts)
        elif ch == "D":
            choices.append([[]] + [[x] for x in atoms_])
        else:
            choices.append(atoms_)
    for combo in product(*choices):
        yield build(rule, **dict(zip(letters, combo)))


@dataclass
class SoundnessReport:
    checked: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def soundness_sweep(max_size: int = 4, names=("p", "q", "r"), max_context: int = 2, rules=None) -> SoundnessReport:
    """For each rule and each catalog algebra of its variety, every valuation
    that validates the premises must validate the conclusion."""
    report = SoundnessReport()
    models = algebras_up_to(max_size)
    rules = rules or (BASE_RULES + EXTRA_RULES + HEYTING_RULES)
    for rule in rules:
        tag = RULE_TAG[rule]
        family = [a for a in models if tag is None or tag in a.tags]
        instances = list(rule_instances(rule, names, max_context))
        count = 0
        for a in family:
            ev = evaluator(a)
            env = valuation_grid(list(names), a.size)
            memo: dict = {}
            shape = (a.size ** len(names),)
            for prems, concl in instances:
                ok = np.ones(shape, dtype=bool)
                for pr in prems:
                    ok &= np.broadcast_to(ev.holds(pr, env, memo), shape)
                bad = ok & ~np.broadcast_to(ev.holds(concl, env, memo), shape)
                count += 1
                if bad.any():
                    k = int(np.argmax(bad))
                    report.violations.append((rule, str(concl), a, {n: int(env[n][k]) for n in names}))
        report.checked[rule] = (len(instances), len(family), count)
    return report
