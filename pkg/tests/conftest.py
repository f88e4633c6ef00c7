import os
from itertools import permutations, product

from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def brute_posets(n):
    """Every partial order on n labelled points, as 0/1 matrices."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for bits in product((0, 1), repeat=len(pairs)):
        rel = [[int(i == j) for j in range(n)] for i in range(n)]
        for (i, j), b in zip(pairs, bits):
            rel[i][j] = b
        if any(rel[i][j] and rel[j][i] for i, j in pairs):
            continue
        if any(rel[i][j] and rel[j][k] and not rel[i][k] for i in range(n) for j in range(n) for k in range(n)):
            continue
        yield rel


def canonical_matrix(rel):
    n = len(rel)
    return min(tuple(tuple(rel[p.index(i)][p.index(j)] for j in range(n)) for i in range(n))
               for p in map(list, permutations(range(n))))


def brute_is_lattice(rel):
    n = len(rel)
    if n == 0:
        return False

    def bound(cands, below):
        best = [c for c in cands if all(rel[d][c] if below else rel[c][d] for d in cands)]
        return len(best) == 1

    for a in range(n):
        for b in range(n):
            lower = [c for c in range(n) if rel[c][a] and rel[c][b]]
            upper = [c for c in range(n) if rel[a][c] and rel[b][c]]
            if not lower or not upper or not bound(lower, False) or not bound(upper, True):
                return False
    return True


def brute_residual(l, nabla):
    """arrow[a][b] by scanning every c, or None when {c : ∇c ∧ a ≤ b} is not a principal downset."""
    n = l.size
    table = []
    for a in range(n):
        row = []
        for b in range(n):
            cands = [c for c in range(n) if l.leq(l.meet[nabla[c]][a], b)]
            top = [c for c in cands if all(l.leq(d, c) for d in cands)]
            if not top or cands != [c for c in range(n) if l.leq(c, top[0])]:
                return None
            row.append(top[0])
        table.append(tuple(row))
    return tuple(table)


def formulas(names=("p", "q", "r"), sup=False, max_leaves=8):
    from hypothesis import strategies as st
    from nablalab.logic.syntax import BOT, TOP, And, Atom, Imp, Nabla, Or, Sup

    leaves = st.sampled_from([Atom(n) for n in names] + [TOP, BOT])
    binary = [And, Or, Imp] + ([Sup] if sup else [])

    def extend(inner):
        return st.one_of(inner.map(Nabla),
                         st.tuples(st.sampled_from(binary), inner, inner).map(lambda t: t[0](t[1], t[2])))

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
