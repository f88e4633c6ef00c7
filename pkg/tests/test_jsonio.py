import json
from pathlib import Path

import pytest

from nablalab.algebra import heyting_nabla_algebra, left_algebra
from nablalab.catalog import algebras_up_to, frames
from nablalab.duality import to_spectral
from nablalab.errors import SchemaError
from nablalab.jsonio import (SCHEMAS, algebra_from_json, algebra_to_json, detect_kind, frame_from_json,
                             frame_to_json, lattice_from_json, lattice_to_json, ring_from_json, ring_to_json,
                             space_from_json, space_to_json, validate)
from nablalab.order import chain_lattice, diamond_m3
from nablalab.rings import ring_catalog

SCHEMA_DIR = Path(__file__).resolve().parents[1] / "docs" / "schemas"


def test_published_schemas_are_current():
    for kind, schema in SCHEMAS.items():
        assert json.loads((SCHEMA_DIR / f"{kind}.schema.json").read_text()) == schema


def test_round_trips():
    for a in algebras_up_to(4):
        doc = algebra_to_json(a)
        validate(doc, "algebra")
        assert algebra_from_json(doc) == a
        assert lattice_from_json(lattice_to_json(a.lattice)) == a.lattice
    for f in frames(3):
        assert frame_from_json(frame_to_json(f)) == f
        sp = to_spectral(f.poset)
        assert space_from_json(space_to_json(sp)) == sp
    for r in ring_catalog()[:12]:
        back = ring_from_json(ring_to_json(r))
        assert back.add == r.add and back.mul == r.mul


def test_arrow_is_filled_in_when_missing():
    a = heyting_nabla_algebra(chain_lattice(3))
    doc = algebra_to_json(a)
    del doc["arrow"]
    b = algebra_from_json(doc)
    assert (b.lattice, b.nabla, b.arrow) == (a.lattice, a.nabla, a.arrow)


def test_detect_kind():
    assert detect_kind(algebra_to_json(left_algebra(diamond_m3()))) == "algebra"
    assert detect_kind({"n": 1, "leq": [[1]]}) == "lattice"
    assert detect_kind({"n": 1, "add": [[0]], "mul": [[0]]}) == "ring"
    with pytest.raises(SchemaError):
        detect_kind({"foo": 1})


@pytest.mark.parametrize("doc, kind", [
    ({"n": 2, "leq": [[1, 0]]}, "lattice"),
    ({"n": 2, "leq": [[1, 2], [0, 1]]}, "lattice"),
    ({"n": 2, "leq": [[1, 1], [0, 1]], "nabla": [0, 5]}, "algebra"),
    ({"leq": [[1]]}, "lattice"),
    ({"n": 1, "opens": [[3]]}, "space"),
])
def test_schema_errors(doc, kind):
    loader = {"lattice": lattice_from_json, "algebra": algebra_from_json, "space": space_from_json}[kind]
    with pytest.raises(SchemaError):
        validate(doc, kind)
        loader(doc)
