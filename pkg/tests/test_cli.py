import io
import json
import subprocess
import sys

import pytest

from mixmult.cli import main
from mixmult.corpus import example_document


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("t,text,code", [("1,0", "1", 0), ("0,1", "1", 0), ("1,1", "0", 0), ("0,0", "undefined", 1)])
def test_mixedmult_text(capsys, t, text, code):
    rc, out, _ = run(capsys, "mixedmult", "--example", "E1", "--type", t, "--format", "text")
    assert rc == code and out.strip() == text


def test_envelope_fields(capsys):
    rc, out, _ = run(capsys, "mixedmult", "--example", "E1", "--type", "1,0")
    doc = json.loads(out)
    assert rc == 0
    assert set(doc) == {"command", "schema_version", "input_sha256", "seed", "window",
                        "reduction_window", "truncation", "field", "result"}
    assert doc["result"] == {"type": [1, 0], "value": 1}
    assert doc["field"] == {"prime": 32003}


def test_output_is_deterministic(capsys):
    argv = ["jointred", "find", "--example", "E4", "--type", "1,0"]
    first = run(capsys, *argv)
    assert first == run(capsys, *argv)
    assert json.loads(first[1])["result"]["found"]


def test_hilbert_annihilated(capsys):
    rc, out, _ = run(capsys, "hilbert", "--example", "E2", "--window", "0,1:2,3")
    values = json.loads(out)["result"]["values"]
    assert rc == 0 and all(v == 0 for row in values for v in row)


def test_fit_certificate(capsys):
    rc, out, _ = run(capsys, "fit", "--example", "E1")
    res = json.loads(out)["result"]
    assert rc == 0 and res["certificate"]["stable"]
    assert {(tuple(c["type"]), c["value"]) for c in res["coeffs"]} == {((0, 0), -1), ((0, 1), 1), ((1, 0), 1)}


def test_chi_with_koszul(capsys):
    rc, out, _ = run(capsys, "chi", "--example", "E1", "--type", "1,0", "--koszul-validate",
                     "--deg", "2,2", "--deg", "3,2")
    res = json.loads(out)["result"]
    assert rc == 0 and res["chi"] == 1 and len(res["homology"]) == 2


def test_koszul_command(capsys):
    rc, out, _ = run(capsys, "koszul", "--example", "E3", "--type", "0,0", "--deg", "2,2")
    assert rc == 0 and json.loads(out)["result"]["lengths"] == [1, 0]


@pytest.mark.parametrize("which", ["main", "positivity", "addred", "exact"])
def test_verify_E4(capsys, which):
    rc, out, _ = run(capsys, "verify", which, "--example", "E4", "--type", "0,0")
    assert rc == 0 and json.loads(out)["result"]["verdict"] == "pass"


def test_verify_rank(capsys):
    rc, out, _ = run(capsys, "verify", "rank", "--example", "E1", "--type", "1,0", "--rank", "3",
                     "--format", "text")
    assert rc == 0 and out.strip() == "pass"


def test_stdin_matches_file(capsys, monkeypatch, tmp_path):
    doc = json.dumps(example_document("E1"))
    path = tmp_path / "e1.json"
    path.write_text(doc)
    rc, from_file, _ = run(capsys, "mixedmult", str(path), "--type", "0,1")
    monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(doc.encode())))
    rc2, from_stdin, _ = run(capsys, "mixedmult", "-", "--type", "0,1")
    assert rc == rc2 == 0 and from_file == from_stdin


@pytest.mark.parametrize("patch,kind", [
    ({"schema_version": 2}, "input"),
    ({"ideals": [[[1]]]}, "input"),
    ({"ring": {"variables": ["x", "y"], "field": {"prime": 32004}}}, "input"),
])
def test_bad_input(capsys, tmp_path, patch, kind):
    doc = example_document("E1")
    doc.update(patch)
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    rc, out, err = run(capsys, "mixedmult", str(path), "--type", "1,0")
    assert rc == 2 and not out
    assert json.loads(err)["error"] == kind


def test_wrong_type_length(capsys):
    rc, _, err = run(capsys, "mixedmult", "--example", "E1", "--type", "1,0,0")
    assert rc == 2 and "entries" in err


def test_window_too_small(capsys):
    rc, _, err = run(capsys, "mixedmult", "--example", "E1", "--type", "4,0", "--window", "2,2:3,3")
    assert "deficit" in err
    assert rc == 2


def test_missing_input(capsys):
    rc, _, err = run(capsys, "mixedmult", "--type", "1,0")
    assert rc == 2


def test_corpus_list(capsys):
    rc, out, _ = run(capsys, "corpus", "list")
    assert json.loads(out)["result"]["examples"][:3] == ["E1", "E2", "E3"]


def test_corpus_run_subset(capsys):
    rc, out, _ = run(capsys, "corpus", "run", "--names", "E1,E3")
    assert rc == 0 and json.loads(out)["result"]["all_pass"]


def test_console_script_module():
    proc = subprocess.run([sys.executable, "-m", "mixmult.cli", "mixedmult", "--example", "E1",
                           "--type", "1,0", "--format", "text"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "1"


def test_action_then_stdin(capsys, monkeypatch):
    doc = example_document("E4")
    monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(json.dumps(doc).encode())))
    rc, out, _ = run(capsys, "verify", "main", "-", "--type", "0,0", "--format", "text")
    assert rc == 0 and out.strip() == "pass"
