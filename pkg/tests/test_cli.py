import io
import json
from pathlib import Path

from kmgrad.cadmissible import build_AJ
from kmgrad.cli import SCHEMA, file_name, run
from kmgrad.gcm import GCM, classify
from kmgrad.gradation import RestrictionSpec, analyze
from kmgrad.named import e10, fold_example
from kmgrad.quotient import build_Abar, check_quotient

SPEC = Path(__file__).resolve().parents[1] / "docs" / "fold_example_spec.json"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, _ = call(*argv)
    return code, json.loads(out)


def test_classify_e10():
    code, data = call_json("classify", "E10")
    assert code == 0 and data["schema"] == SCHEMA and data["verb"] == "classify"
    assert data["kind"] == "Indefinite" and data["hyperbolic"]


def test_classify_det_signature():
    code, data = call_json("classify", "paper-s5", "--det", "--signature")
    assert code == 0 and data["det"] == 275 and data["signature"] == [4, 0, 2]


def test_matrix_file(tmp_path):
    path = tmp_path / "b2.json"
    path.write_text(json.dumps({"labels": ["x", "y"], "matrix": [[2, -2], [-1, 2]]}))
    code, data = call_json("classify", str(path))
    assert code == 0 and data["kind"] == "Finite"
    code, data = call_json("roots", str(path), "--normalize", "short=1,long=2")
    assert code == 0 and data["count"] == 4
    assert sorted(r["norm"] for r in data["roots"]) == ["1", "1", "2", "2"]


def test_build_aj_e10_matches_library():
    code, data = call_json("build-aj", "E10", "--j", "2,3,4,5")
    assert code == 0
    alg = build_AJ(e10(), ["2", "3", "4", "5"])
    assert data["matrix"] == [list(r) for r in alg.aj.entries]
    assert len(data["matrix"]) == 6
    assert data["classify"] == classify(alg.aj).to_dict()
    assert "nodes:" in data["diagram"] and "○2" in data["source_diagram"]


def test_fold_matches_library():
    code, data = call_json("fold", "paper-s5", "--fibers", "1,5|2,6|3|4", "--height", "6")
    q = check_quotient(fold_example(), [["1", "5"], ["2", "6"], ["3"], ["4"]])
    assert code == 0 and data["matrix"] == [list(r) for r in build_Abar(q).abar.entries]
    assert data["maximal"]["passed"]


def test_fiber_and_pairs():
    code, data = call_json("fiber", "A3", "--j", "1,3", "--gamma", "1")
    assert code == 0 and data["size"] == 4
    code, data = call_json("pairs", "A3")
    assert code == 0 and ["1", "3"] in data["pairs"]
    code, data = call_json("quotients", "A3")
    assert code == 0 and len(data["quotients"]) == 2


def test_analyze_matches_library():
    code, data = call_json("analyze", str(SPEC), "--height", "6")
    assert code == 0
    spec = RestrictionSpec.from_json(json.loads(SPEC.read_text()))
    expected = analyze(spec, 6).to_dict()
    for key in ("J", "I_im_prime", "I_re", "Gamma", "J_circ", "classification", "verdicts"):
        assert data[key] == expected[key]
    assert data["constraints"]["solution_dim"] == 2


def test_exit_codes():
    code, data = call_json("build-aj", "paper-s5", "--j", "4")
    assert code == 1 and data["error"] == "NotCAdmissible" and data["exit_code"] == 1
    code, data = call_json("classify", "Q9")
    assert code == 2 and data["error"] == "AxisMismatch"
    code, _, err = call("fold", "A2", "--fibers", "1,2")
    assert code == 1 and "MG1Violation" in err
    code, _, _ = call("analyze", "/nonexistent/spec.json")
    assert code == 2
    code, _, _ = call("roots", "B2", "--normalize", "tiny=3")
    assert code == 2
    code, _, _ = call("frobnicate")
    assert code == 2


def test_text_format_is_deterministic():
    first = call("classify", "E10", "--format", "text")
    second = call("classify", "E10", "--format", "text")
    assert first == second and first[1].startswith("schema: kmgrad/1")


def test_json_round_trip_of_matrix():
    code, data = call_json("classify", "E10")
    assert GCM.from_json(data["matrix"]) == e10()


def test_diagrams():
    _, data = call_json("diagram", "A2")
    assert data["text"].splitlines()[0] == "nodes: ○1 ○2"
    _, data = call_json("diagram", "H3,3")
    assert "(3,3)" in data["text"]
    _, data = call_json("diagram", "E10", "--j", "2,3,4,5")
    assert "○2" in data["text"] and "●6" in data["text"]
    code, out, _ = call("diagram", "G2", "--dot")
    assert code == 0 and out.startswith("graph dynkin {")
    # triple bond with the arrowhead on the short root 1
    assert '"1" -- "2" [color="black:black:black", dir=back, arrowtail=normal];' in out


def test_catalog(tmp_path):
    out = tmp_path / "cat"
    code, data = call_json("catalog", "A2..A5", "--out", str(out))
    assert code == 0 and len(data["written"]) == 4
    before = {p.name: p.read_bytes() for p in out.iterdir()}
    assert set(before) == {"A2.json", "A3.json", "A4.json", "A5.json"}
    call("catalog", "A2..A5", "--out", str(out))
    assert {p.name: p.read_bytes() for p in out.iterdir()} == before
    a3 = json.loads(before["A3.json"])
    assert a3["schema"] == SCHEMA and {"J": ["1", "3"], "A_J": [[2]]} in a3["c_admissible_pairs"]


def test_catalog_empty_family(tmp_path):
    out = tmp_path / "none"
    code, data = call_json("catalog", "", "--out", str(out))
    assert code == 0 and data["written"] == [] and not out.exists()


def test_catalog_e10(tmp_path):
    code, data = call_json("catalog", "E10", "--out", str(tmp_path))
    assert code == 0
    entry = json.loads((tmp_path / "E10.json").read_text())
    js = [p["J"] for p in entry["c_admissible_pairs"]]
    assert ["2", "3", "4", "5"] in js and ["1", "2", "3", "4", "5", "6"] in js


def test_file_name():
    assert file_name("H3,3") == "H3_3.json"
    assert file_name("A3(1)") == "A3_1_.json"
