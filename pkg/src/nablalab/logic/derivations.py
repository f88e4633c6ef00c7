"""Hand-written derivations, instantiated with atoms.

Each entry is (rule set, hypotheses, rule it derives or None, tree).  A tree
that derives a rule concludes exactly an instance of that rule whose
premises are the hypotheses, so replaying it shows the rule is admissible
in the rule set.
"""

from __future__ import annotations

from .rules import node as n


def _nabla_bot():
    return n("cut", "na F => F",
             n("nabla", "na F => na(T -> F)",
               n("Rw", "F => T -> F", n("Lbot", "F =>"))),
             n("Limp", "na(T -> F) => F", n("Ltop", "=> T"), n("Ax", "F => F")))


def _nabla_join(left, right):
    return n("cut", "na(p | q) => r",
             n("nabla", "na(p | q) => na(T -> r)",
               n("Lor", "p | q => T -> r",
                 n("Rimp", "p => T -> r", n("Lw", "na p, T => r", left)),
                 n("Rimp", "q => T -> r", n("Lw", "na q, T => r", right)))),
             n("Limp", "na(T -> r) => r", n("Ltop", "=> T"), n("Ax", "r => r")))


def _nabla_join_closed():
    c = "na p | na q"

    def half(a, b):
        return n("Rimp", f"{a} => T -> {c}",
                 n("Lw", f"na {a}, T => {c}",
                   n("Ror1" if a == "p" else "Ror2", f"na {a} => {c}", n("Ax", f"na {a} => na {a}"))))

    return n("cut", f"na(p | q) => {c}",
             n("nabla", f"na(p | q) => na(T -> {c})",
               n("Lor", f"p | q => T -> {c}", half("p", "q"), half("q", "p"))),
             n("Limp", f"na(T -> {c}) => {c}", n("Ltop", "=> T"), n("Ax", f"{c} => {c}")))


def _conj_intro():
    """p, q => p & q"""
    return n("Rand", "p, q => p & q",
             n("Lw", "p, q => p", n("Ax", "p => p")),
             n("Lw", "p, q => q", n("Ax", "q => q")))


def _one_formula():
    return n("cut", "p, q => r",
             n("N", "=> na(p & q -> r)", n("hyp", "=> p & q -> r")),
             n("Limp", "p, q, na(p & q -> r) => r",
               _conj_intro(),
               n("Lw", "p, q, r => r", n("Lw", "q, r => r", n("Ax", "r => r")))))


def _one_formula_empty():
    return n("cut", "p, q =>",
             n("N", "=> na(p & q -> F)", n("hyp", "=> p & q -> F")),
             n("Limp", "p, q, na(p & q -> F) =>",
               _conj_intro(),
               n("Lw", "p, q, F =>", n("Lw", "q, F =>", n("Lbot", "F =>")))))


def _squash(g, rest, concl):
    """From g[0], g[1], rest => concl to g[0] & g[1], rest => concl."""
    a, b = g
    both = f"{a} & {b}"
    tail = "".join(f", {x}" for x in rest)
    return n("Lc", f"{both}{tail} => {concl}",
             n("Land2", f"{both}, {both}{tail} => {concl}",
               n("Land1", f"{both}, {b}{tail} => {concl}",
                 n("hyp", f"{a}, {b}{tail} => {concl}"))))


def _fa_from_axiom():
    return n("cut", "p, q => na(r -> s)",
             _conj_intro(),
             n("cut", "p & q => na(r -> s)",
               n("Fa_a", "p & q => na(T -> p & q)"),
               n("nabla", "na(T -> p & q) => na(r -> s)",
                 n("Rimp", "T -> p & q => r -> s",
                   n("cut", "na(T -> p & q), r => s",
                     n("Limp", "na(T -> p & q) => p & q", n("Ltop", "=> T"), n("Ax", "p & q => p & q")),
                     _squash(("p", "q"), ["r"], "s"))))))


def _fu_from_axiom():
    step = n("Limp", "na p, na(q -> r) => na s", n("hyp", "na p => q"), n("hyp", "na p, r => na s"))
    lifted = n("cut", "na p, na(q -> r) => na s", step, n("Ax", "na s => na s"))
    once = n("Limp", "na(q -> r), na(T -> na p) => na s",
             n("Lw", "na(q -> r) => T", n("Ltop", "=> T")), lifted)
    twice = n("Limp", "na(T -> na p), na(T -> na(q -> r)) => na s",
              n("Lw", "na(T -> na p) => T", n("Ltop", "=> T")), once)
    boxed = n("Rimp", "T -> na p, T -> na(q -> r) => T -> na s",
              n("Lw", "T, na(T -> na p), na(T -> na(q -> r)) => na s", twice))
    first = n("cut", "p, T -> na(q -> r) => T -> na s", n("Fu_a", "p => T -> na p"), boxed)
    second = n("cut", "p, q -> r => T -> na s", n("Fu_a", "q -> r => T -> na(q -> r)"), first)
    return n("cut", "p, q -> r => s", second, n("Fu_a", "T -> na s => s"))


def _d_from_axiom():
    return n("cut", "p, q | r => s",
             n("Rand", "p, q | r => p & (q | r)",
               n("Lw", "p, q | r => p", n("Ax", "p => p")),
               n("Lw", "p, q | r => q | r", n("Ax", "q | r => q | r"))),
             n("cut", "p & (q | r) => s",
               n("D_a", "p & (q | r) => p & q | p & r"),
               n("Lor", "p & q | p & r => s", _squash(("p", "q"), [], "s"), _squash(("p", "r"), [], "s"))))


def _n_from_axiom():
    return n("cut", "na p, na q => na r",
             n("Rand", "na p, na q => na p & na q",
               n("Lw", "na p, na q => na p", n("Ax", "na p => na p")),
               n("Lw", "na p, na q => na q", n("Ax", "na q => na q"))),
             n("cut", "na p & na q => na r",
               n("N_a", "na p & na q => na(p & q)"),
               n("nabla", "na(p & q) => na r", _squash(("p", "q"), [], "r"))))


def _n_from_axiom_empty_left():
    return n("cut", "=> na r",
             n("cut", "=> na T", n("Ltop", "=> T"), n("N_a", "T => na T")),
             n("nabla", "na T => na r", n("Lw", "T => r", n("hyp", "=> r"))))


def _n_from_axiom_empty_right():
    return n("cut", "na p =>",
             n("cut", "na p => F",
               n("nabla", "na p => na F", n("Rw", "p => F", n("hyp", "p =>"))),
               _nabla_bot()),
             n("Lbot", "F =>"))


DERIVATIONS = {
    "nabla_bot": ("STL", [], None, _nabla_bot),
    "nabla_join": ("STL", ["na p => r", "na q => r"], None,
                   lambda: _nabla_join(n("hyp", "na p => r"), n("hyp", "na q => r"))),
    "nabla_join_closed": ("STL", [], None, _nabla_join_closed),
    "one_formula": ("STL(N)", ["=> p & q -> r"], None, _one_formula),
    "one_formula_empty": ("STL(N)", ["=> p & q -> F"], None, _one_formula_empty),
    "fa_axiom_left": ("STL", [], None,
                      lambda: n("Limp", "na(T -> p) => p", n("Ltop", "=> T"), n("Ax", "p => p"))),
    "fa_axiom_right": ("STL(Fa)", [], None,
                       lambda: n("Fa", "p => na(T -> p)", n("Lw", "p, T => p", n("Ax", "p => p")))),
    "fa_from_axiom": ("STL(Fa_a)", ["p, q, r => s"], "Fa", _fa_from_axiom),
    "fu_axiom_left": ("STL", [], None,
                      lambda: n("Rimp", "p => T -> na p", n("Lw", "na p, T => na p", n("Ax", "na p => na p")))),
    "fu_axiom_right": ("STL(Fu)", [], None,
                       lambda: n("Fu", "T -> na p => p", n("Ltop", "=> T"), n("Ax", "na p => na p"))),
    "fu_from_axiom": ("STL(Fu_a)", ["na p => q", "na p, r => na s"], "Fu", _fu_from_axiom),
    "d_from_axiom": ("STL(D_a)", ["p, q => s", "p, r => s"], "D", _d_from_axiom),
    "n_from_axiom": ("STL(N_a)", ["p, q => r"], "N", _n_from_axiom),
    "n_from_axiom_empty_left": ("STL(N_a)", ["=> r"], "N", _n_from_axiom_empty_left),
    "n_from_axiom_empty_right": ("STL(N_a)", ["p =>"], "N", _n_from_axiom_empty_right),
    "r_from_axiom": ("STL(R_a)", ["p => q"], "R",
                     lambda: n("cut", "p => na q", n("hyp", "p => q"), n("R_a", "q => na q"))),
    "l_from_axiom": ("STL(L_a)", ["p, q => r"], "L",
                     lambda: n("cut", "p, na q => r", n("L_a", "na q => q"), n("hyp", "p, q => r"))),
}

# (derivation, path to node, change, argument); each must make the checker reject
MUTATIONS = [
    ("nabla_bot", (1,), "rule", "Rimp"),
    ("nabla_bot", (0, 0, 0), "sequent", "F => F"),
    ("nabla_bot", (), "swap", None),
    ("nabla_bot", (0,), "rule", "N"),
    ("nabla_join", (0, 0), "rule", "D"),
    ("nabla_join", (0, 0, 0, 0), "sequent", "p, T => r"),
    ("one_formula", (0,), "rule", "nabla"),
    ("one_formula", (1, 0, 0), "sequent", "p, q, q => p"),
    ("fa_from_axiom", (1, 0), "rule", "Fu_a"),
    ("fa_from_axiom", (1, 1, 0, 0, 1, 0), "rule", "Land1"),
    ("fu_from_axiom", (0, 1, 1, 0, 0, 0), "sequent", "na(T -> na p) =>"),
    ("fu_from_axiom", (1,), "sequent", "T -> na s => na s"),
    ("d_from_axiom", (1, 1, 0), "rule", "Lw"),
    ("n_from_axiom", (1, 1, 0, 0, 0, 0), "sequent", "p, r => r"),
    ("fa_axiom_right", (), "sequent", "p => na(T -> q)"),
    ("r_from_axiom", (1,), "rule", "L_a"),
]
