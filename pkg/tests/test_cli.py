import io
import json
import subprocess
import sys

import pytest

from centstab.cli import SCHEMA, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--format", "json")
    return code, json.loads(text), text


def test_specht_text():
    code, text = run("specht", "2,1", "--field", "Q")
    assert code == 0
    assert "dim 2" in text.splitlines()[0]


@pytest.mark.parametrize("mu,field,dim", [("2,1", "Q", 2), ("4", "Fp:7", 1), ("1,1,1", "Q", 1)])
def test_specht_json(mu, field, dim):
    code, doc, _ = run_json("specht", mu, "--field", field)
    assert code == 0
    assert doc["schema"] == SCHEMA
    assert doc["rep"]["dim"] == dim
    assert doc["rep"]["field"] == field


@pytest.mark.parametrize("argv", [
    ("specht", "1,2"),
    ("specht", "x"),
    ("specht", "2,1", "--field", "Fp:6"),
    ("verify", "nonsense"),
    ("stabilize", "bogus"),
    ("stabilize", "perm", "--steps", "0"),
    (),
])
def test_usage_errors_exit_2(argv, capsys):
    code, _ = run(*argv)
    assert code == 2


def test_stabilize_perm():
    code, doc, _ = run_json("stabilize", "perm", "--steps", "4")
    assert code == 0
    assert [t["dim"] for t in doc["terms"]] == [1, 2, 3, 4, 5]
    assert doc["dimension_polynomial"]["polynomial"] == ["0", "1"]


def test_stabilize_trivial():
    code, doc, _ = run_json("stabilize", "trivial", "--steps", "4")
    assert [t["dim"] for t in doc["terms"]] == [1] * 5


def test_stabilize_specht_seed():
    code, doc, _ = run_json("stabilize", "--seed-spec", "specht:1,1", "--steps", "3", "--field", "Q")
    assert code == 0
    assert [t["dim"] for t in doc["terms"]] == [1, 2, 3, 4]
    for k, t in enumerate(doc["terms"]):
        assert t["constituents"] == {str(k + 1): [[f"{k + 1},1", 1]]}


def test_stabilize_outside_semisimple_range():
    code, doc, _ = run_json("stabilize", "trivial", "--steps", "4", "--field", "Fp:3")
    assert code == 0 and "constituents" not in doc["terms"][0]
    code, _ = run("stabilize", "trivial", "--steps", "4", "--field", "Fp:3", "--decompose")
    assert code == 3


def test_verify_refuses_small_characteristic():
    code, _ = run("verify", "restriction", "--field", "Fp:3")
    assert code == 3


def test_verify_vacuous():
    code, doc, _ = run_json("verify", "chain", "--max-n", "0")
    assert code == 0 and doc["total"] == 0 and doc["pass"]


def test_verify_resolution_small():
    code, doc, _ = run_json("verify", "resolution", "--max-n", "3", "--max-k", "3", "--filter", "resolution/exact/*")
    assert code == 0
    # six partitions of n <= 3, three values of k each
    assert doc["total"] == 18
    for case in doc["cases"]:
        assert case["paper_statement"] == "Prop. 6.2"
        assert all(h == 0 for h in case["homology"][1:])


def test_verify_dimpoly():
    code, doc, _ = run_json("verify", "dimpoly", "--max-n", "5", "--max-k", "5", "--filter", "dimpoly/count/*")
    assert code == 0
    # 18 partitions of 1..5, k = 0..5
    assert doc["total"] == 18 * 6


def test_verify_failure_exit_code(monkeypatch):
    import centstab.suites as suites

    def broken(F, b):
        yield suites.Case("chain/broken", "chain", "none", lambda: {"passed": False})

    monkeypatch.setitem(suites._BUILDERS, "chain", broken)
    code, doc, _ = run_json("verify", "chain")
    assert code == 4 and doc["failed"] == 1


def test_crashing_case_is_reported():
    from centstab.suites import Case, run_case

    r = run_case(Case("x", "chain", "none", lambda: 1 / 0))
    assert not r.passed and "ZeroDivisionError" in r.detail


def test_json_round_trip_and_determinism():
    _, doc1, text1 = run_json("verify", "duality", "--max-n", "3")
    _, doc2, text2 = run_json("verify", "duality", "--max-n", "3")
    assert text1 == text2
    assert json.loads(json.dumps(doc1, sort_keys=True, indent=2)) == doc1
    assert json.dumps(doc1, sort_keys=True, indent=2) + "\n" == text1


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "centstab.cli", "specht", "3,1"], capture_output=True, text=True)
    assert proc.returncode == 0 and "dim 3" in proc.stdout
