"""Depth-bounded backward proof search.

Iterative deepening on tree height.  Cut is tried last, on formulas from a
finite pool, and at most ``cut_budget`` times along a branch.  Contraction
only duplicates compound formulas that occur once.  Failures are memoised
per (sequent, cuts left) with the largest height already refuted.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from ..errors import InternalInconsistency
from .rules import STL, ProofTree, RuleSet, axiom_patterns, build, check_proof, match_sequent, parse_ruleset
from .syntax import TOP, And, Atom, Bot, Formula, Imp, Nabla, Or, Sequent, Sup, Top, as_sequent, size, sort_key, subformulas

PROVED = "PROVED"
NOT_FOUND = "NOT_FOUND"
BUDGET_EXCEEDED = "BUDGET_EXCEEDED"


@dataclass(frozen=True)
class SearchResult:
    status: str
    tree: ProofTree | None
    depth: int
    nodes: int

    def __bool__(self):
        return self.tree is not None


class _Budget(Exception):
    pass


def cut_pool(s: Sequent, extra=()) -> list[Formula]:
    """Subformulas X of the goal with ∇X, ∇∇X, ⊤→X and ∇(⊤→X)."""
    base = set()
    for f in list(s.formulas) + list(extra):
        base |= subformulas(f)
    pool = set(base)
    for x in base:
        pool |= {Nabla(x), Nabla(Nabla(x)), Imp(TOP, x), Nabla(Imp(TOP, x))}
    return sorted(pool, key=lambda f: (size(f), sort_key(f)))


def _sub_multisets(gamma: tuple):
    seen = set()
    n = len(gamma)
    for mask in range(1 << n):
        left = tuple(gamma[i] for i in range(n) if mask >> i & 1)
        if left in seen:
            continue
        seen.add(left)
        yield list(left), [gamma[i] for i in range(n) if not mask >> i & 1]


def _compound(f: Formula) -> bool:
    return not isinstance(f, (Atom, Top, Bot))


class Prover:
    def __init__(self, rs: RuleSet, pool, cut_budget: int, max_nodes: int):
        self.rs = rs
        self.pool = pool
        self.cut_budget = cut_budget
        self.max_nodes = max_nodes
        self.nodes = 0
        self.failed: dict = {}
        self.proved: dict = {}

    def steps(self, s: Sequent, cuts: int):
        """Backward rule applications as (rule, builder parameters) in try order."""
        g, d = list(s.gamma), list(s.delta)
        one = d[0] if d else None
        rs = self.rs
        distinct = sorted(set(g), key=sort_key)
        # leaves
        if len(g) == 1 and d == g:
            yield "Ax", dict(A=g[0])
        if g == [Bot()] and not d:
            yield "Lbot", {}
        if not g and isinstance(one, Top):
            yield "Ltop", {}
        for tag in sorted(rs.axioms):
            yield f"{tag}_a", None
        # single-premise decompositions
        for x in distinct:
            rest = list(g)
            rest.remove(x)
            if isinstance(x, And):
                yield "Land1", dict(G=rest, A=x.left, B=x.right, D=d)
                yield "Land2", dict(G=rest, A=x.left, B=x.right, D=d)
        if isinstance(one, Or):
            yield "Ror1", dict(G=g, A=one.left, B=one.right)
            yield "Ror2", dict(G=g, A=one.left, B=one.right)
        if isinstance(one, Imp):
            yield "Rimp", dict(G=g, A=one.left, B=one.right)
        if rs.heyting and isinstance(one, Sup):
            yield "Rsup", dict(G=g, A=one.left, B=one.right)
        if len(g) == 1 and isinstance(g[0], Nabla) and isinstance(one, Nabla):
            yield "nabla", dict(A=g[0].body, B=one.body)
        if "N" in rs.rules and all(isinstance(x, Nabla) for x in g) and (not d or isinstance(one, Nabla)):
            yield "N", dict(G=[x.body for x in g], D=[one.body] if d else [])
        if "R" in rs.rules and isinstance(one, Nabla):
            yield "R", dict(G=g, A=one.body)
        if "Fa" in rs.rules and isinstance(one, Nabla) and isinstance(one.body, Imp):
            yield "Fa", dict(G=g, A=one.body.left, B=one.body.right)
        for x in distinct:
            rest = list(g)
            rest.remove(x)
            if "L" in rs.rules and isinstance(x, Nabla):
                yield "L", dict(G=rest, A=x.body, D=d)
        # branching rules
        if isinstance(one, And):
            yield "Rand", dict(G=g, A=one.left, B=one.right)
        if len(g) == 1 and isinstance(g[0], Or):
            yield "Lor", dict(A=g[0].left, B=g[0].right, D=d)
        for x in distinct:
            rest = list(g)
            rest.remove(x)
            if isinstance(x, Nabla) and isinstance(x.body, Imp):
                yield "Limp", dict(G=rest, A=x.body.left, B=x.body.right, D=d)
            if "D" in rs.rules and isinstance(x, Or):
                yield "D", dict(G=rest, A=x.left, B=x.right, D=d)
            if "Fu" in rs.rules and isinstance(x, Imp):
                yield "Fu", dict(G=rest, A=x.left, B=x.right, D=d)
            if rs.heyting and isinstance(x, Sup):
                yield "Lsup", dict(G=rest, A=x.left, B=x.right, D=d)
        counts = Counter(g)
        for x in distinct:
            if _compound(x) and counts[x] == 1:
                rest = list(g)
                rest.remove(x)
                yield "Lc", dict(G=rest, A=x, D=d)
        # weakening last
        for x in distinct:
            rest = list(g)
            rest.remove(x)
            yield "Lw", dict(G=rest, A=x, D=d)
        if one is not None:
            yield "Rw", dict(G=g, A=one)
        if cuts > 0:
            for c in self.pool:
                for left, right in _sub_multisets(tuple(g)):
                    yield "cut", dict(G=left, P=right, A=c, D=d)

    def search(self, s: Sequent, height: int, cuts: int):
        if height < 1:
            return None
        hit = self.proved.get(s)
        if hit is not None and hit.height <= height:
            return hit
        key = (s, cuts)
        if self.failed.get(key, 0) >= height:
            return None
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise _Budget()
        for rule, params in self.steps(s, cuts):
            if params is None:
                if self._axiom_matches(rule, s):
                    return self._remember(s, ProofTree(rule, s))
                continue
            prems, concl = build(rule, **params)
            if concl != s:
                continue
            if height == 1 and prems:
                continue
            left = cuts - (rule == "cut")
            subtrees = []
            for p in prems:
                sub = self.search(p, height - 1, left)
                if sub is None:
                    break
                subtrees.append(sub)
            else:
                return self._remember(s, ProofTree(rule, s, tuple(subtrees)))
        self.failed[key] = max(self.failed.get(key, 0), height)
        return None

    def _axiom_matches(self, rule, s):
        return any(match_sequent(p, s) is not None for p in axiom_patterns(rule[:-2]))

    def _remember(self, s, tree):
        old = self.proved.get(s)
        if old is None or tree.height < old.height:
            self.proved[s] = tree
        return tree


def prove_bounded(s, rs=STL, depth: int = 8, cut_budget: int = 1, max_nodes: int = 2_000_000,
                  pool=None) -> SearchResult:
    """Shortest proof of height ≤ depth, or NOT_FOUND when the bounded space is exhausted,
    or BUDGET_EXCEEDED when ``max_nodes`` expansions were spent first."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    s = as_sequent(s)
    rs = parse_ruleset(rs)
    prover = Prover(rs, cut_pool(s) if pool is None else list(pool), cut_budget, max_nodes)
    try:
        for h in range(1, depth + 1):
            tree = prover.search(s, h, cut_budget)
            if tree is not None:
                verdict = check_proof(tree, rs)
                if not verdict:
                    raise InternalInconsistency(f"search produced an invalid tree: {verdict.describe()}")
                return SearchResult(PROVED, tree, tree.height, prover.nodes)
    except _Budget:
        return SearchResult(BUDGET_EXCEEDED, None, depth, prover.nodes)
    return SearchResult(NOT_FOUND, None, depth, prover.nodes)
