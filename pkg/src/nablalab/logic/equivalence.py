"""Fixture trees on disk, mutation replay and the rule/axiom equivalence suite."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

from .derivations import DERIVATIONS, MUTATIONS
from .rules import ProofTree, ProofVerdict, check_proof, parse_ruleset, rule_instance_matches
from .search import PROVED, prove_bounded
from .syntax import as_sequent

FIXTURE_DIR = Path(__file__).parent / "fixtures"

# axioms derived from each rule by search
AXIOM_GOALS = {
    "D": ["p & (q | r) => (p & q) | (p & r)", "(p & q) | (p & r) => p & (q | r)"],
    "N": ["na(p & q) => na p & na q", "na p & na q => na(p & q)", "na T => T", "T => na T", "=> na T"],
    "R": ["p => na p"],
    "L": ["na p => p"],
    "Fa": ["p => na(T -> p)", "na(T -> p) => p"],
    "Fu": ["p => T -> na p", "T -> na p => p"],
}


@dataclass(frozen=True)
class Fixture:
    name: str
    ruleset: str
    hypotheses: tuple
    derives: str | None
    tree: ProofTree

    def to_json(self) -> dict:
        return {"name": self.name, "ruleset": self.ruleset, "hypotheses": list(self.hypotheses),
                "derives_rule": self.derives, "tree": self.tree.to_json()}

    @classmethod
    def from_json(cls, doc: dict) -> "Fixture":
        return cls(doc["name"], doc["ruleset"], tuple(doc.get("hypotheses", [])), doc.get("derives_rule"),
                   ProofTree.from_json(doc["tree"]))

    def check(self) -> ProofVerdict:
        return check_proof(self.tree, self.ruleset, self.hypotheses)

    def derives_rule_instance(self) -> bool:
        """The root is an instance of ``derives`` whose premises are the hypotheses."""
        prems = [as_sequent(h) for h in self.hypotheses]
        return rule_instance_matches(self.derives, self.tree.conclusion, prems)


def built_fixtures() -> dict[str, Fixture]:
    return {name: Fixture(name, rs, tuple(hyps), derives, make())
            for name, (rs, hyps, derives, make) in DERIVATIONS.items()}


def write_fixtures(directory: Path = FIXTURE_DIR) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for name, fx in built_fixtures().items():
        path = directory / f"{name}.json"
        path.write_text(json.dumps(fx.to_json(), indent=1, ensure_ascii=False) + "\n")
        out.append(path)
    return out


def load_fixtures(directory: Path = FIXTURE_DIR) -> dict[str, Fixture]:
    return {p.stem: Fixture.from_json(json.loads(p.read_text())) for p in sorted(Path(directory).glob("*.json"))}


def _replace_at(t: ProofTree, path: tuple, change) -> ProofTree:
    if not path:
        return change(t)
    i = path[0]
    prems = list(t.premises)
    prems[i] = _replace_at(prems[i], path[1:], change)
    return replace(t, premises=tuple(prems))


def mutate(t: ProofTree, path: tuple, kind: str, arg) -> ProofTree:
    if kind == "rule":
        return _replace_at(t, path, lambda x: replace(x, rule=arg))
    if kind == "sequent":
        return _replace_at(t, path, lambda x: replace(x, conclusion=as_sequent(arg)))
    if kind == "swap":
        return _replace_at(t, path, lambda x: replace(x, premises=tuple(reversed(x.premises))))
    raise ValueError(f"unknown mutation {kind!r}")


def mutation_results(fixtures=None) -> list[tuple]:
    """(fixture, path, kind, arg, verdict) for every listed single-node mutation."""
    fixtures = fixtures or load_fixtures()
    out = []
    for name, path, kind, arg in MUTATIONS:
        fx = fixtures[name]
        bad = mutate(fx.tree, path, kind, arg)
        out.append((name, path, kind, arg, check_proof(bad, fx.ruleset, fx.hypotheses)))
    return out


@dataclass
class EquivalenceReport:
    rule_to_axiom: dict = field(default_factory=dict)
    axiom_to_rule: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        forward = all(r.status == PROVED for rows in self.rule_to_axiom.values() for _, r in rows)
        backward = all(bool(v) and inst for rows in self.axiom_to_rule.values() for _, v, inst in rows)
        return forward and backward and all(self.axiom_to_rule.get(t) for t in self.rule_to_axiom)

    def summary(self) -> list[str]:
        lines = []
        for tag, rows in self.rule_to_axiom.items():
            for goal, r in rows:
                lines.append(f"{tag}: STL({tag}) |- {goal}: {r.status} (height {r.depth})")
        for tag, rows in self.axiom_to_rule.items():
            for name, v, inst in rows:
                lines.append(f"{tag}: {name}: {v.describe()}, rule instance {'yes' if inst else 'no'}")
        return lines


def axiom_rule_equivalence_suite(tags=("D", "N", "R", "L", "Fa", "Fu"), depth: int = 10, fixtures=None) -> EquivalenceReport:
    """Rule to axioms by bounded search; axioms to rule by replaying fixture trees."""
    tags = sorted(parse_ruleset(list(tags)).rules, key=list(AXIOM_GOALS).index)
    fixtures = fixtures or load_fixtures()
    report = EquivalenceReport()
    for tag in tags:
        report.rule_to_axiom[tag] = [(g, prove_bounded(g, f"STL({tag})", depth)) for g in AXIOM_GOALS[tag]]
        report.axiom_to_rule[tag] = [(fx.name, fx.check(), fx.derives_rule_instance())
                                     for fx in fixtures.values() if fx.derives == tag]
    return report
