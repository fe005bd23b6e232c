import json
import subprocess
import sys

import pytest

from ks8.cli import main
from ks8.exact_linalg import parse_vectors
from ks8.ks_engine import parse_hypergraph
from ks8.state_specific import parse_proof, verify_proof


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_generate_three_qubits(tmp_path, capsys):
    code, out, _ = run(capsys, "generate", "--qubits", "3", "--out", str(tmp_path))
    assert code == 0
    vs = parse_vectors((tmp_path / "vectors.txt").read_text())
    assert len(vs) == len(set(vs)) == 40
    rows = (tmp_path / "octads.txt").read_text().split("\n")
    assert rows[0] == "bases 5"


def test_generate_two_qubits(capsys):
    code, out, _ = run(capsys, "generate", "--qubits", "2")
    assert code == 0
    assert "bases 3" in out


def test_generate_one_qubit_is_usage_error(capsys):
    code, _, err = run(capsys, "generate", "--qubits", "1")
    assert code == 2
    assert "at least 2" in err


def test_generate_unwritable(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("")
    code, _, err = run(capsys, "generate", "--out", str(blocker / "sub"))
    assert code == 2 and "cannot write" in err


def test_unknown_subcommand(capsys):
    assert run(capsys, "frobnicate")[0] == 2


def test_verify_all_exit_matches_report(capsys):
    code, out, _ = run(capsys, "verify-all", "--format", "json")
    doc = json.loads(out)
    assert code == (0 if doc["passed"] else 1)
    assert doc["passed"] == all(c["passed"] for c in doc["claims"])
    ids = [c["id"] for c in doc["claims"]]
    assert len(ids) == len(set(ids))
    assert {c["criterion"] for c in doc["claims"]} == set(range(1, 11))


def test_verify_all_text_and_json_agree(capsys):
    _, text, _ = run(capsys, "verify-all")
    _, js, _ = run(capsys, "verify-all", "--format", "json")
    verdicts = {c["id"]: c["passed"] for c in json.loads(js)["claims"]}
    for cid, ok in verdicts.items():
        line = next(ln for ln in text.splitlines() if ln.startswith(cid + " "))
        assert line.endswith("PASS" if ok else "FAIL")


def test_drop_octad_breaks_certificate(capsys):
    code, out, _ = run(capsys, "verify-all", "--drop-octad", "3", "--format", "json")
    assert code == 1
    claims = {c["id"]: c["passed"] for c in json.loads(out)["claims"]}
    assert not claims["parity.certificate"]
    assert not claims["parity.search_11"]
    assert not claims["merge.certificate"]


def test_drop_octad_out_of_range(capsys):
    assert run(capsys, "verify-all", "--drop-octad", "11")[0] == 2


def test_state_proof_reference(capsys):
    code, out, _ = run(capsys, "state-proof", "1 0 0 -1 0 -1 -1 0")
    assert code == 0
    p = parse_proof(out)
    assert (len(p.contexts), len(p.vectors)) == (7, 13)
    assert verify_proof(p)
    assert out.rstrip().endswith("verdict ok")


def test_state_proof_other_state(capsys):
    code, out, _ = run(capsys, "state-proof", "2 0 0 0 0 0 0 0", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert len(doc["contexts"]) == 7 and doc["verdict"] == "ok"


def test_state_proof_unknown_state(capsys):
    code, _, err = run(capsys, "state-proof", "1 1 1 1 1 1 1 1")
    assert code == 2
    assert "1 0 0 -1 0 -1 -1 0" in err


def test_merge_output_parses(capsys):
    code, out, _ = run(capsys, "merge")
    assert code == 0
    h = parse_hypergraph(out)
    assert len(h.projectors) == 30


@pytest.mark.parametrize("octads, found", [("defining", True), ("parity", False), ("all", False)])
def test_search(capsys, octads, found):
    code, out, _ = run(capsys, "search", "--octads", octads, "--format", "json")
    assert code == 0
    assert (json.loads(out)["assignment"] is not None) == found


def test_search_from_file(tmp_path, capsys):
    run(capsys, "merge", "--out", str(tmp_path / "m.txt"))
    code, out, _ = run(capsys, "search", "--hypergraph", str(tmp_path / "m.txt"))
    assert code == 0 and out.startswith("no noncontextual assignment")


def test_octads_and_quadruples(capsys):
    code, out, _ = run(capsys, "octads", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and len(doc["octads"]) == 25
    code, out, _ = run(capsys, "quadruples", "--format", "json")
    doc = json.loads(out)
    assert doc["condition_counts"]["orthogonal+retained"] == 1280
    assert doc["count"] == len(doc["selections"])


def test_reports_byte_identical():
    cmd = [sys.executable, "-m", "ks8", "verify-all", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    assert a.stdout == b.stdout and a.stdout
