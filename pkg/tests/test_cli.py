import json

import pytest

from nablalab import __version__
from nablalab.algebra import NablaAlgebra, heyting_nabla_algebra, left_algebra
from nablalab.cli import main
from nablalab.jsonio import algebra_to_json, frame_to_json, ring_to_json
from nablalab.kripke import KripkeFrame
from nablalab.order import chain_lattice, chain_poset, diamond_m3
from nablalab.rings import zmod

H3 = algebra_to_json(heyting_nabla_algebra(chain_lattice(3)))


def _write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    doc = json.loads(out.out) if out.out.startswith("{") else out.out
    return code, doc, out.err


def test_check_algebra(tmp_path, capsys):
    code, doc, err = _run(capsys, "check", _write(tmp_path, "a.json", H3))
    assert code == 0 and doc["tags"] == ["D", "H", "N", "R", "L", "Fa", "Fu"]
    assert doc["nablalab"] == __version__ and doc["command"] == "check"
    assert "D,H,N,R,L,Fa,Fu" in err


def test_check_reports_violating_triple(tmp_path, capsys):
    bad = dict(H3, arrow=[[2, 2, 2], [0, 2, 2], [0, 0, 2]])
    code, doc, _ = _run(capsys, "check", _write(tmp_path, "a.json", bad))
    assert code == 2 and doc["status"] == "violation"
    a = heyting_nabla_algebra(chain_lattice(3))
    broken = NablaAlgebra(a.lattice, a.nabla, tuple(map(tuple, bad["arrow"])))
    v = doc["violation"]
    l = a.lattice
    assert l.leq(l.meet[broken.nabla[v["c"]]][v["x"]], v["y"]) != l.leq(v["c"], broken.arrow[v["x"]][v["y"]])


def test_check_other_kinds(tmp_path, capsys):
    f = frame_to_json(KripkeFrame(chain_poset(2), (0b11, 0b10)))
    assert _run(capsys, "check", _write(tmp_path, "f.json", f))[0] == 0
    assert _run(capsys, "check", _write(tmp_path, "r.json", ring_to_json(zmod(6))))[0] == 0
    lat = {"n": 2, "leq": [[1, 0], [0, 1]]}
    assert _run(capsys, "check", _write(tmp_path, "l.json", lat), "--kind", "lattice")[0] == 2


def test_input_errors_exit_one(tmp_path, capsys):
    assert _run(capsys, "check", str(tmp_path / "missing.json"))[0] == 1
    (tmp_path / "x.json").write_text("{not json")
    assert _run(capsys, "check", str(tmp_path / "x.json"))[0] == 1
    assert _run(capsys, "check", _write(tmp_path, "s.json", {"n": 2, "leq": [[1]]}))[0] == 1
    assert _run(capsys, "prove", "p &")[0] == 1


def test_dualize_round_trip(tmp_path, capsys):
    code, doc, _ = _run(capsys, "dualize", _write(tmp_path, "a.json", H3), "--direction", "to-space")
    assert code == 0 and doc["dual"]["n"] == 2 and doc["alpha"]["ok"]
    bundle = _write(tmp_path, "b.json", doc)
    code, back, _ = _run(capsys, "dualize", bundle, "--direction", "to-algebra")
    assert code == 0 and back["round_trip"]["isomorphic"]


def test_dualize_frame_with_empty_relation(tmp_path, capsys):
    f = frame_to_json(KripkeFrame(chain_poset(2), (0, 0)))
    code, doc, _ = _run(capsys, "dualize", _write(tmp_path, "f.json", f), "--direction", "to-algebra")
    assert code == 0 and set(doc["dual"]["nabla"]) == {0} and doc["beta"]["ok"]


@pytest.mark.parametrize("algebra, error", [
    (left_algebra(diamond_m3()), "NotDistributive"),
])
def test_dualize_non_distributive(tmp_path, capsys, algebra, error):
    code, doc, _ = _run(capsys, "dualize", _write(tmp_path, "m.json", algebra_to_json(algebra)),
                        "--direction", "to-space")
    assert code == 2 and doc["error"] == error


def test_complete(tmp_path, capsys):
    code, doc, _ = _run(capsys, "complete", _write(tmp_path, "a.json", H3))
    assert code == 0 and doc["bijective"] and doc["tags_before"] == doc["tags_after"]


def test_spec_z12(tmp_path, capsys):
    code, doc, _ = _run(capsys, "spec", _write(tmp_path, "z.json", ring_to_json(zmod(12))))
    assert code == 0 and len(doc["radical_ideals"]) == 4


def test_prove_and_countermodel(capsys):
    code, doc, _ = _run(capsys, "prove", "T => na T", "--rules", "STL(N)")
    assert code == 0 and doc["status"] == "proved" and doc["height"] == 3
    code, doc, _ = _run(capsys, "prove", "T => na T")
    assert code == 2 and doc["status"] == "refuted"
    code, doc, _ = _run(capsys, "countermodel", "na p & na q => na(p & q)", "--rules", "STL(N)")
    assert code == 3
    code, doc, _ = _run(capsys, "prove", "na(p | q) => na p | na q", "--depth", "8", "--max-nodes", "20",
                        "--max-size", "0")
    assert code == 3


def test_check_proof(tmp_path, capsys):
    _, doc, _ = _run(capsys, "prove", "p & q => q & p")
    path = _write(tmp_path, "t.json", doc["proof"])
    assert _run(capsys, "check-proof", path)[0] == 0
    doc["proof"]["rule"] = "Rimp"
    path = _write(tmp_path, "t.json", doc["proof"])
    code, out, _ = _run(capsys, "check-proof", path)
    assert code == 2 and out["status"] == "violation"


def test_catalog(tmp_path, capsys, monkeypatch):
    out = tmp_path / "cat"
    code, doc, _ = _run(capsys, "catalog", "--max-size", "3", "--out", str(out))
    assert code == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["counts"]["lattices"] == {"1": 1, "2": 1, "3": 1}
    assert {p.name for p in out.iterdir()} >= {"lattices.json", "algebras.json", "frames.json", "rings.json"}
    monkeypatch.setenv("NABLA_MAX_SIZE", "3")
    assert _run(capsys, "catalog", "--max-size", "4", "--out", str(tmp_path / "c2"))[0] == 1


def test_export_dot(tmp_path, capsys):
    code, text, _ = _run(capsys, "export-dot", _write(tmp_path, "a.json", H3))
    assert code == 0 and text.startswith(f"// nablalab {__version__}\n") and "digraph" in text


def test_output_is_deterministic(tmp_path, capsys):
    path = _write(tmp_path, "a.json", H3)
    runs = []
    for _ in range(2):
        main(["dualize", path, "--direction", "to-space"])
        runs.append(capsys.readouterr().out)
    assert runs[0] == runs[1]
