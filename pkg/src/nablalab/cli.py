"""Command-line front end.

Every command writes one JSON document to stdout, headed by the package
version, and a short human summary to stderr.  Exit codes: 0 pass, 2 the
input violates a law or the sequent is refuted, 3 undecided within bounds,
1 unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .algebra import NablaAlgebra, classify, dm_completion, find_isomorphism, verify_by_monotonicity, verify_nabla_algebra
from .catalog import algebras, check_cap, frames, lattices
from .duality import A_functor, S_functor, alpha_check, beta_check, from_spectral, nabla_space_check, nabla_spectral_check, spectral_check
from .errors import CapExceeded, FormulaSyntaxError, LanguageModeError, NablaError, SchemaError, UnknownRule
from .jsonio import (KINDS, algebra_from_json, algebra_to_json, detect_kind, dumps, frame_from_json, frame_to_json,
                     hom_from_json, lattice_from_json, lattice_to_json, read_json, ring_from_json, ring_to_json,
                     space_from_json, space_to_json)
from .kripke import KripkeFrame, frame_conditions, normality_witness, upset_algebra, validate_frame
from .logic.rules import ProofTree, check_proof, parse_ruleset
from .logic.search import PROVED, prove_bounded
from .logic.semantics import countermodel_search
from .logic.syntax import parse_sequent
from .order import export_hasse, is_distributive, join_irreducibles, members, prime_filters
from .rings import (iu_maps, make_semi_dynamic, radical_ideal_lattice, ring_catalog, semi_dynamic_algebra,
                    spec_space)

PASS, VIOLATION, ERROR, UNKNOWN = 0, 2, 1, 3
_INPUT_ERRORS = (OSError, json.JSONDecodeError, SchemaError, FormulaSyntaxError, LanguageModeError,
                 UnknownRule, CapExceeded, ValueError)


class Outcome:
    def __init__(self, code: int, doc: dict, summary: str):
        self.code, self.doc, self.summary = code, doc, summary


def _plain(x):
    """JSON-friendly copy: tuples to lists, sets sorted, other objects as strings."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_plain(v) for v in x)
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if hasattr(x, "item"):
        return x.item()
    return str(x)


def _tags(c) -> dict:
    return {"tags": c.sorted(), "witnesses": _plain(c.witnesses)}


def _report(r) -> dict:
    return {"ok": r.ok, "witness": _plain(r.witness), **_plain(r.data)}


def _status(ok: bool) -> str:
    return "pass" if ok else "violation"


# check ------------------------------------------------------------------------

def _check_lattice(doc):
    l = lattice_from_json(doc)
    dist, w = is_distributive(l)
    out = {"size": l.size, "degenerate": l.is_degenerate, "distributive": dist, "distributivity_witness": w,
           "heyting": l.heyting is not None, "join_irreducibles": join_irreducibles(l)}
    if dist:
        out["prime_filters"] = [members(f) for f in prime_filters(l)]
    return Outcome(PASS, out, f"lattice of size {l.size}, distributive={dist}, heyting={l.heyting is not None}")


def _check_algebra(doc):
    a = algebra_from_json(doc)
    ok, w = verify_nabla_algebra(a)
    ok2, _ = verify_by_monotonicity(a)
    if ok != ok2:
        raise NablaError("the two adjunction tests disagree", witness=w)
    if not ok:
        if len(w) == 3:
            x, y, c = w
            text = f"nabla({c}) & {x} <= {y} disagrees with {c} <= arrow({x},{y})"
            return Outcome(VIOLATION, {"violation": {"x": x, "y": y, "c": c}, "reason": text}, text)
        return Outcome(VIOLATION, {"violation": list(w)}, "table shapes do not match")
    c = classify(a)
    return Outcome(PASS, {"size": a.size, **_tags(c)}, "nabla-algebra with tags " + ",".join(c.sorted()))


def _check_frame(doc):
    f = frame_from_json(doc)
    _, space = nabla_space_check(f.poset, f.rel)
    c = frame_conditions(f)
    pi = normality_witness(f)
    out = {"size": f.size, **_tags(c), "normality_witness": _plain(pi), "nabla_space": _report(space),
           "dual_tags": classify(upset_algebra(f)).sorted()}
    return Outcome(PASS, out, "frame with conditions " + ",".join(c.sorted()))


def _check_space(doc):
    sp = space_from_json(doc)
    r = spectral_check(sp)
    out = {"size": sp.size, "spectral": _report(r), "specialization": from_spectral(sp).matrix()}
    ok = r.ok
    if "R" in doc:
        nr = nabla_spectral_check(sp, doc["R"])
        out["nabla_spectral"] = _report(nr)
        ok = ok and nr.ok
    return Outcome(PASS if ok else VIOLATION, out, f"space on {sp.size} points, spectral={r.ok}")


def _check_ring(doc):
    r = ring_from_json(doc)
    ril = radical_ideal_lattice(r)
    iu_maps(r)
    out = {"size": r.size, "ideals": [members(i) for i in r.ideals], "primes": [members(p) for p in r.primes],
           "radical_ideals": [members(i) for i in ril.ideals], "radical_lattice_size": ril.lattice.size}
    return Outcome(PASS, out, f"ring of order {r.size} with {len(r.primes)} primes")


_CHECKERS = {"lattice": _check_lattice, "algebra": _check_algebra, "frame": _check_frame,
             "space": _check_space, "ring": _check_ring}


def cmd_check(path, kind=None) -> Outcome:
    doc = read_json(path)
    kind = kind or detect_kind(doc)
    if kind not in _CHECKERS:
        raise SchemaError(f"check does not handle kind {kind!r}")
    out = _CHECKERS[kind](doc)
    out.doc = {"kind": kind, "status": _status(out.code == PASS), **out.doc}
    return out


# dualize / complete / spec ----------------------------------------------------------

def _frame_of(doc) -> KripkeFrame:
    if detect_kind(doc) == "space":
        sp = space_from_json(doc)
        if "R" not in doc:
            raise SchemaError("space needs a relation R to carry nabla")
        return validate_frame(from_spectral(sp), doc["R"])
    return frame_from_json(doc)


def cmd_dualize(path, direction) -> Outcome:
    doc = read_json(path)
    if direction == "to-space":
        a = algebra_from_json(doc)
        ok, w = verify_nabla_algebra(a)
        if not ok:
            return Outcome(VIOLATION, {"status": "violation", "violation": list(w)}, "input is not a nabla-algebra")
        frame = S_functor(a)
        alpha = alpha_check(a)
        out = {"status": _status(alpha.ok), "dual": frame_to_json(frame),
               "points": [members(f) for f in prime_filters(a.lattice)], "alpha": _report(alpha),
               "isomorphism": list(alpha.data["alpha"]), "source": algebra_to_json(a)}
        return Outcome(PASS if alpha.ok else VIOLATION, out,
                       f"dual frame on {frame.size} points, alpha {'passes' if alpha.ok else 'fails'}")
    if direction == "to-algebra":
        source = None
        if "dual" in doc:
            source = algebra_from_json(doc["source"]) if "source" in doc else None
            doc = doc["dual"]
        f = _frame_of(doc)
        a = A_functor(f)
        beta = beta_check(f)
        out = {"status": _status(beta.ok), "dual": algebra_to_json(a),
               "elements": [members(u) for u in f.poset.upsets], "beta": _report(beta),
               "tags": classify(a).sorted()}
        ok = beta.ok
        if source is not None:
            iso = find_isomorphism(source, a)
            out["round_trip"] = {"isomorphic": iso is not None, "isomorphism": _plain(iso)}
            ok = ok and iso is not None
            out["status"] = _status(ok)
        return Outcome(PASS if ok else VIOLATION, out,
                       f"dual algebra of size {a.size}, beta {'passes' if beta.ok else 'fails'}")
    raise SchemaError(f"unknown direction {direction!r}")


def cmd_complete(path) -> Outcome:
    a = algebra_from_json(read_json(path))
    ok, w = verify_nabla_algebra(a)
    if not ok:
        return Outcome(VIOLATION, {"status": "violation", "violation": list(w)}, "input is not a nabla-algebra")
    comp, j = dm_completion(a)
    before, after = classify(a), classify(comp)
    out = {"status": "pass", "completion": algebra_to_json(comp), "embedding": list(j.map),
           "bijective": sorted(j.map) == list(range(comp.size)),
           "tags_before": before.sorted(), "tags_after": after.sorted()}
    return Outcome(PASS, out, f"completion of size {comp.size}, tags {','.join(after.sorted())}")


def cmd_spec(path) -> Outcome:
    doc = read_json(path)
    r = ring_from_json(doc)
    ril = radical_ideal_lattice(r)
    iu = iu_maps(r)
    sp = spec_space(r)
    out = {"status": "pass", "ring": r.name, "primes": [members(p) for p in r.primes],
           "spectrum": space_to_json(sp), "spectral": _report(spectral_check(sp)),
           "radical_ideals": [members(i) for i in ril.ideals], "lattice": lattice_to_json(ril.lattice),
           "heyting": [list(row) for row in ril.heyting],
           "open_to_ideal": [[members(u), members(iu.ideal_of[u])] for u in iu.opens]}
    if "semi_dynamic" in doc:
        sd = doc["semi_dynamic"]
        target = ring_from_json(sd["target"])
        sdr = make_semi_dynamic(r, target, hom_from_json(r, target, sd["pi"]), sd["f"])
        a = semi_dynamic_algebra(sdr)
        out["algebra"] = algebra_to_json(a)
        out["tags"] = classify(a).sorted()
    return Outcome(PASS, out, f"Spec has {len(r.primes)} points, {len(ril.ideals)} radical ideals")


# logic --------------------------------------------------------------------------------

def _countermodel_doc(cm) -> dict:
    return {"algebra": algebra_to_json(cm.algebra), "catalog_index": cm.index,
            "valuation": cm.valuation, "tags": classify(cm.algebra).sorted()}


def cmd_prove(text, rules="STL", depth=6, cut_budget=1, max_size=4, max_nodes=2_000_000) -> Outcome:
    """A catalog countermodel is looked for first; it rules out any proof."""
    rs = parse_ruleset(rules)
    s = parse_sequent(text, intuitionistic=True)
    check_cap(max_size)
    cm = countermodel_search(s, rs, max_size=max_size)
    base = {"sequent": str(s), "ruleset": str(rs)}
    if cm is not None:
        return Outcome(VIOLATION, {"status": "refuted", **base, "countermodel": _countermodel_doc(cm)},
                       f"refuted by catalog algebra #{cm.index}")
    res = prove_bounded(s, rs, depth, cut_budget, max_nodes)
    if res.status == PROVED:
        return Outcome(PASS, {"status": "proved", **base, "height": res.depth, "proof": res.tree.to_json()},
                       f"proved with a tree of height {res.depth}")
    return Outcome(UNKNOWN, {"status": "unknown", **base, "search": res.status, "depth": depth},
                   f"neither proof nor countermodel found ({res.status})")


def cmd_countermodel(text, rules="STL", max_size=4) -> Outcome:
    rs = parse_ruleset(rules)
    s = parse_sequent(text, intuitionistic=True)
    check_cap(max_size)
    cm = countermodel_search(s, rs, max_size=max_size)
    base = {"sequent": str(s), "ruleset": str(rs), "max_size": max_size}
    if cm is None:
        return Outcome(UNKNOWN, {"status": "unknown", **base}, "no countermodel in the catalog")
    return Outcome(VIOLATION, {"status": "refuted", **base, "countermodel": _countermodel_doc(cm)},
                   f"refuted by catalog algebra #{cm.index}")


def cmd_check_proof(path, rules=None) -> Outcome:
    doc = read_json(path)
    hyps = ()
    if "tree" in doc:
        rules = rules or doc.get("ruleset", "STL")
        hyps = tuple(doc.get("hypotheses", ()))
        doc = doc["tree"]
    tree = ProofTree.from_json(doc)
    verdict = check_proof(tree, rules or "STL", hyps)
    out = {"status": _status(verdict.ok), "conclusion": str(tree.conclusion), "height": tree.height,
           "nodes": tree.size}
    if not verdict.ok:
        out["path"] = list(verdict.path)
        out["error"] = type(verdict.error).__name__
        out["reason"] = str(verdict.error)
    return Outcome(PASS if verdict.ok else VIOLATION, out, verdict.describe())


# catalog / export -------------------------------------------------------------------

def cmd_catalog(max_size, out_dir, max_points=None) -> Outcome:
    check_cap(max_size)
    points = min(max_size, 4) if max_points is None else max_points
    check_cap(points, "point bound")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    sizes = range(1, max_size + 1)
    lat = {n: [lattice_to_json(l) for l in lattices(n)] for n in sizes}
    alg = {n: [algebra_to_json(a) for a in algebras(n)] for n in sizes}
    frm = {n: [frame_to_json(f) for f in frames(n)] for n in range(1, points + 1)}
    rng = [ring_to_json(r) for r in ring_catalog() if r.size <= max_size]
    files = {"lattices.json": [d for n in sizes for d in lat[n]],
             "algebras.json": [d for n in sizes for d in alg[n]],
             "frames.json": [d for n in frm for d in frm[n]],
             "rings.json": rng}
    for name, docs in files.items():
        (out_dir / name).write_text(dumps(docs))
    manifest = {"max_size": max_size, "max_points": points,
                "counts": {"lattices": {str(n): len(v) for n, v in lat.items()},
                           "algebras": {str(n): len(v) for n, v in alg.items()},
                           "frames": {str(n): len(v) for n, v in frm.items()},
                           "rings": len(rng)},
                "files": sorted(files)}
    (out_dir / "manifest.json").write_text(dumps(manifest))
    total = sum(len(v) for v in files.values())
    return Outcome(PASS, {"status": "pass", "directory": str(out_dir), "manifest": manifest},
                   f"wrote {total} structures to {out_dir}")


def export_dot(doc) -> str:
    kind = detect_kind(doc)
    if kind in ("lattice", "algebra"):
        l = lattice_from_json({k: v for k, v in doc.items() if k in ("n", "leq", "labels")})
        text = export_hasse(l.poset, l.labels)
        extra = []
        if kind == "algebra":
            a = algebra_from_json(doc)
            extra = [f"  n{x} -> n{y} [style=dashed, color=blue, constraint=false];"
                     for x, y in enumerate(a.nabla)]
    elif kind == "frame":
        f = frame_from_json(doc)
        text = export_hasse(f.poset)
        extra = [f"  n{x} -> n{y} [style=dashed, color=red, constraint=false];"
                 for x in range(f.size) for y in members(f.rel[x])]
    else:
        raise SchemaError(f"export-dot does not handle kind {kind!r}")
    return text[: text.rindex("}")] + "".join(e + "\n" for e in extra) + "}\n"


# entry point -----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nablalab", description="Finite nabla-algebras, their duals and the sequent calculus.")
    p.add_argument("--version", action="version", version=f"nablalab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="validate and classify a structure")
    c.add_argument("path")
    c.add_argument("--kind", choices=KINDS)

    c = sub.add_parser("dualize", help="algebra to frame or frame/space to algebra")
    c.add_argument("path")
    c.add_argument("--direction", choices=("to-space", "to-algebra"), required=True)

    c = sub.add_parser("complete", help="normal-ideal completion of an algebra")
    c.add_argument("path")

    c = sub.add_parser("spec", help="ring spectrum, radical ideals and optional semi-dynamic algebra")
    c.add_argument("path")

    for name in ("prove", "countermodel"):
        c = sub.add_parser(name, help="search for a proof" if name == "prove" else "search the catalog for a countermodel")
        c.add_argument("sequent")
        c.add_argument("--rules", default="STL")
        c.add_argument("--max-size", type=int, default=4)
        if name == "prove":
            c.add_argument("--depth", type=int, default=6)
            c.add_argument("--cut-budget", type=int, default=1)
            c.add_argument("--max-nodes", type=int, default=2_000_000)

    c = sub.add_parser("check-proof", help="check a proof tree or fixture")
    c.add_argument("path")
    c.add_argument("--rules")

    c = sub.add_parser("catalog", help="write enumerated structures and a manifest")
    c.add_argument("--max-size", type=int, required=True)
    c.add_argument("--max-points", type=int)
    c.add_argument("--out", required=True)

    c = sub.add_parser("export-dot", help="Graphviz text for a lattice, algebra or frame")
    c.add_argument("path")
    return p


def run(args) -> Outcome:
    cmd = args.command
    if cmd == "check":
        return cmd_check(args.path, args.kind)
    if cmd == "dualize":
        return cmd_dualize(args.path, args.direction)
    if cmd == "complete":
        return cmd_complete(args.path)
    if cmd == "spec":
        return cmd_spec(args.path)
    if cmd == "prove":
        return cmd_prove(args.sequent, args.rules, args.depth, args.cut_budget, args.max_size, args.max_nodes)
    if cmd == "countermodel":
        return cmd_countermodel(args.sequent, args.rules, args.max_size)
    if cmd == "check-proof":
        return cmd_check_proof(args.path, args.rules)
    if cmd == "catalog":
        return cmd_catalog(args.max_size, args.out, args.max_points)
    raise SchemaError(f"unknown command {cmd!r}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    header = {"nablalab": __version__, "command": args.command}
    if args.command == "export-dot":
        try:
            text = export_dot(read_json(args.path))
        except _INPUT_ERRORS as e:
            print(f"error: {e}", file=sys.stderr)
            return ERROR
        except NablaError as e:
            print(f"violation: {type(e).__name__}: {e}", file=sys.stderr)
            return VIOLATION
        sys.stdout.write(f"// nablalab {__version__}\n" + text)
        return PASS
    try:
        out = run(args)
    except _INPUT_ERRORS as e:
        out = Outcome(ERROR, {"status": "error", "error": type(e).__name__, "message": str(e)}, f"error: {e}")
    except NablaError as e:
        out = Outcome(VIOLATION, {"status": "violation", "error": type(e).__name__, "message": str(e),
                                  "witness": _plain(e.witness)}, f"violation: {type(e).__name__}: {e}")
    sys.stdout.write(dumps(header | _plain(out.doc)))
    print(out.summary, file=sys.stderr)
    return out.code


if __name__ == "__main__":
    sys.exit(main())
