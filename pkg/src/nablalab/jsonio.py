"""JSON documents for every structure: schemas, loaders and dumpers.

Orders and relations are 0/1 matrices, ``leq[i][j] = 1`` meaning i ≤ j.
Opens, ideals and valuations are written as sorted element lists.
"""

from __future__ import annotations

import json
from pathlib import Path

import jsonschema

from .algebra import NablaAlgebra, residual_from_nabla
from .duality import FiniteSpace, make_space
from .errors import SchemaError
from .kripke import KripkeFrame, validate_frame
from .order import FiniteLattice, FinitePoset, lattice_from_poset, mask_of, members, validate_poset
from .rings import FiniteRing, RingHom, make_hom, make_ring

_BIT = {"type": "integer", "minimum": 0, "maximum": 1}
_MATRIX = {"type": "array", "items": {"type": "array", "items": _BIT}}
_TABLE = {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}}
_INDEX_LIST = {"type": "array", "items": {"type": "integer", "minimum": 0}}
_SIZE = {"type": "integer", "minimum": 0}


def _object(required, props, title):
    return {"$schema": "https://json-schema.org/draft/2020-12/schema", "title": title,
            "type": "object", "required": required, "properties": props}


_ORDER = {"kind": {"type": "string"}, "n": _SIZE, "leq": _MATRIX,
          "labels": {"type": "array", "items": {"type": "string"}}}

_RING_PROPS = {"kind": {"type": "string"}, "n": {"type": "integer", "minimum": 1},
               "add": _TABLE, "mul": _TABLE, "name": {"type": "string"}}

_PROOF = {
    "$defs": {"node": {"type": "object", "required": ["rule", "sequent"],
                       "properties": {"rule": {"type": "string"}, "sequent": {"type": "string"},
                                      "premises": {"type": "array", "items": {"$ref": "#/$defs/node"}}}}},
}

SCHEMAS = {
    "lattice": _object(["n", "leq"], _ORDER, "bounded lattice given by its order"),
    "algebra": _object(["n", "leq", "nabla"], _ORDER | {"nabla": _INDEX_LIST, "arrow": _TABLE},
                       "nabla-algebra; arrow is computed as the residual when omitted"),
    "frame": _object(["n", "leq", "R"], _ORDER | {"R": _MATRIX}, "Kripke frame: poset plus compatible relation"),
    "space": _object(["n", "opens"], {"kind": {"type": "string"}, "n": _SIZE,
                                      "opens": {"type": "array", "items": _INDEX_LIST}, "R": _MATRIX},
                     "finite topological space; opens as point lists, optional relation"),
    "ring": _object(["n", "add", "mul"], _RING_PROPS | {
        "semi_dynamic": {"type": "object", "required": ["target", "pi", "f"],
                         "properties": {"target": {"type": "object", "required": ["n", "add", "mul"],
                                                   "properties": _RING_PROPS},
                                        "pi": _INDEX_LIST, "f": _INDEX_LIST}}},
        "finite commutative ring by Cayley tables; optional semi-dynamic data"),
    "proof": {"$schema": "https://json-schema.org/draft/2020-12/schema", "title": "proof tree or fixture",
              "oneOf": [{"$ref": "#/$defs/node"},
                        {"type": "object", "required": ["tree"],
                         "properties": {"name": {"type": "string"}, "ruleset": {"type": "string"},
                                        "hypotheses": {"type": "array", "items": {"type": "string"}},
                                        "derives_rule": {"type": ["string", "null"]},
                                        "tree": {"$ref": "#/$defs/node"}}}]} | _PROOF,
}

KINDS = ("lattice", "algebra", "frame", "space", "ring")


def validate(doc, kind: str):
    try:
        jsonschema.validate(doc, SCHEMAS[kind])
    except jsonschema.ValidationError as e:
        path = "/".join(map(str, e.absolute_path))
        raise SchemaError(f"{kind} document: {e.message} at /{path}", witness=path) from None


def write_schemas(directory) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for kind, schema in SCHEMAS.items():
        path = directory / f"{kind}.schema.json"
        path.write_text(json.dumps(schema, indent=2, sort_keys=True) + "\n")
        out.append(path)
    return out


def read_json(path):
    """Parsed document; OSError and JSONDecodeError propagate to the caller."""
    return json.loads(Path(path).read_text())


def dumps(doc) -> str:
    return json.dumps(doc, indent=1, ensure_ascii=False) + "\n"


def detect_kind(doc) -> str:
    if isinstance(doc, dict):
        if doc.get("kind") in KINDS or doc.get("kind") == "proof":
            return doc["kind"]
        if "add" in doc:
            return "ring"
        if "opens" in doc:
            return "space"
        if "R" in doc:
            return "frame"
        if "nabla" in doc:
            return "algebra"
        if "leq" in doc:
            return "lattice"
        if "rule" in doc or "tree" in doc:
            return "proof"
    raise SchemaError("cannot tell the document kind; pass --kind")


def _square(doc, key, n):
    rows = doc[key]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise SchemaError(f"{key} must be {n}x{n}", witness=key)
    return rows


def _indices(values, n, key):
    if any(v >= n for v in values):
        raise SchemaError(f"{key} mentions an element outside 0..{n - 1}", witness=key)
    return tuple(values)


# orders -----------------------------------------------------------------------

def poset_from_json(doc) -> FinitePoset:
    return validate_poset(_square(doc, "leq", doc["n"]))


def lattice_from_json(doc) -> FiniteLattice:
    validate(doc, "lattice")
    labels = doc.get("labels")
    if labels is not None and len(labels) != doc["n"]:
        raise SchemaError("labels must name every element", witness="labels")
    return lattice_from_poset(poset_from_json(doc), labels)


def _order_json(p: FinitePoset, labels=None, kind="lattice") -> dict:
    doc = {"kind": kind, "n": p.size, "leq": p.matrix()}
    if labels:
        doc["labels"] = list(labels)
    return doc


def lattice_to_json(l: FiniteLattice) -> dict:
    return _order_json(l.poset, l.labels)


def algebra_from_json(doc) -> NablaAlgebra:
    """The arrow table is taken as given when present, so it can be checked;
    otherwise it is the residual of ∇ (NoResidual when none exists)."""
    validate(doc, "algebra")
    l = lattice_from_json({k: v for k, v in doc.items() if k in ("n", "leq", "labels")})
    n = l.size
    if len(doc["nabla"]) != n:
        raise SchemaError(f"nabla must have {n} entries", witness="nabla")
    nabla = _indices(doc["nabla"], n, "nabla")
    if "arrow" in doc:
        rows = _square(doc, "arrow", n)
        arrow = tuple(_indices(r, n, "arrow") for r in rows)
    else:
        arrow = residual_from_nabla(l, nabla)
    return NablaAlgebra(l, nabla, arrow)


def algebra_to_json(a: NablaAlgebra) -> dict:
    doc = lattice_to_json(a.lattice)
    doc["kind"] = "algebra"
    doc["nabla"] = list(a.nabla)
    doc["arrow"] = [list(r) for r in a.arrow]
    return doc


def frame_from_json(doc) -> KripkeFrame:
    validate(doc, "frame")
    p = poset_from_json(doc)
    return validate_frame(p, _square(doc, "R", p.size))


def frame_to_json(f: KripkeFrame) -> dict:
    doc = _order_json(f.poset, kind="frame")
    doc["R"] = f.matrix()
    return doc


def space_from_json(doc) -> FiniteSpace:
    validate(doc, "space")
    n = doc["n"]
    return make_space(n, [mask_of(_indices(o, n, "opens")) for o in doc["opens"]])


def space_to_json(sp: FiniteSpace) -> dict:
    return {"kind": "space", "n": sp.size, "opens": [members(u) for u in sp.opens]}


# rings ------------------------------------------------------------------------

def ring_from_json(doc) -> FiniteRing:
    validate(doc, "ring")
    n = doc["n"]
    add = tuple(_indices(r, n, "add") for r in _square(doc, "add", n))
    mul = tuple(_indices(r, n, "mul") for r in _square(doc, "mul", n))
    return make_ring(add, mul, doc.get("name", ""))


def ring_to_json(r: FiniteRing) -> dict:
    return {"kind": "ring", "name": r.name, "n": r.size,
            "add": [list(x) for x in r.add], "mul": [list(x) for x in r.mul]}


def hom_from_json(source: FiniteRing, target: FiniteRing, fmap) -> RingHom:
    if len(fmap) != source.size:
        raise SchemaError(f"homomorphism needs {source.size} entries", witness="pi")
    return make_hom(source, target, _indices(fmap, target.size, "pi"))


def ideal_to_json(mask: int) -> list[int]:
    return members(mask)
