import json
import os

import pytest

from repbench.cli import main
from repbench.manifest import default_manifest, load_manifest


def run(argv):
    return main(argv)


def test_mullineux_command(capsys):
    assert run(["mullineux", "--n", "10", "--p", "3", "--lambda", "6,3,1"]) == 0
    out = capsys.readouterr().out
    assert "symbol" in out and "image" in out and "fixed" in out


def test_mullineux_rejects_irregular(capsys):
    assert run(["mullineux", "--p", "2", "--lambda", "2,2"]) == 2


def test_partitions_command(capsys):
    assert run(["partitions", "--n", "6", "--p", "2"]) == 0
    out = capsys.readouterr().out
    assert "count: 4" in out


def test_wilson_rank_command(capsys):
    assert run(["wilson-rank", "--n", "8", "--r", "2", "--s", "3"]) == 0
    assert "MATCH" in capsys.readouterr().out


def test_specht_command(capsys):
    assert run(["specht", "--shape", "3,2,1"]) == 0
    assert "16" in capsys.readouterr().out


def test_socle_command(capsys):
    assert run(["socle", "--n", "8", "--module", "m1"]) == 0
    out = capsys.readouterr().out
    assert "layer 1: triv" in out and "layer 3: triv" in out


def test_dr_command(capsys):
    assert run(["dr", "--shape", "7,1", "--r", "1"]) == 0
    assert "= 1" in capsys.readouterr().out


def test_orbits_command_json_roundtrip(tmp_path, capsys):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    assert run(["orbits", "--spec", "blocks:a=2,b=3,group=alt", "--json", str(out1)]) == 0
    assert run(["orbits", "--spec", "blocks:a=2,b=3,group=alt", "--json", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    data = json.loads(out1.read_text())
    assert data["schema"] == 1
    assert data["f2"] == 2  # e2 = 1 for this shape, so f2 = 2


def test_e32_command(capsys):
    assert run(["e32", "--a", "3", "--s", "3"]) == 0
    assert "35" in capsys.readouterr().out


def test_h_bound_command(capsys):
    assert run(["h-bound", "--spec", "blocks:a=4,b=2,group=alt", "--cross-check"]) == 0
    out = capsys.readouterr().out
    assert "h_max = 3" in out and "MATCH" in out


def test_reduce_cert_command(capsys):
    assert run(["reduce-cert", "--spec", "ksubsets:m=12,k=3,group=alt"]) == 0
    assert "SATISFIED" in capsys.readouterr().out


def test_classical_command(capsys):
    assert run(["classical", "--case", "sl:d=4,q=2"]) == 0
    out = capsys.readouterr().out
    assert "n=35" in out and "f3=6" in out


def test_usage_error_exit_code(capsys):
    assert run(["orbits", "--spec", "nonsense:a=1"]) == 2
    assert run(["no-such-command"]) == 2


def test_verify_paper_single_group(tmp_path, capsys):
    out = tmp_path / "verify.json"
    assert run(["verify-paper", "--only", "wilson", "--json", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["pass"] is True
    ids = {r["id"] for r in data["results"]}
    assert "wilson.eta13.n8" in ids


def test_verify_paper_reports_known_defect(capsys):
    # The orbits group contains the one source value that does not verify.
    code = run(["verify-paper", "--only", "orbits"])
    out = capsys.readouterr().out
    assert code == 1
    assert "blocks_4_2.sym.f3: expected 6, observed 5 [FAIL]" in out


def test_verify_paper_record_roundtrip(tmp_path):
    rec = tmp_path / "recorded.json"
    assert run(["verify-paper", "--only", "wilson", "--record", str(rec)]) == 0
    data = load_manifest(str(rec))
    assert data["claims"]["wilson.eta13.n8"] == 8
    # A recorded manifest replays cleanly.
    assert run(["verify-paper", "--only", "wilson", "--manifest", str(rec)]) == 0


def test_manifest_rejects_unknown_ids(tmp_path):
    path = tmp_path / "bad.json"
    man = default_manifest()
    man["claims"]["no.such.claim"] = 1
    path.write_text(json.dumps(man))
    with pytest.raises(ValueError):
        load_manifest(str(path))


def test_env_cap_respected(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("WORKBENCH_CAP_TRIPLES", "10")
    assert run(["orbits", "--spec", "blocks:a=2,b=3,group=alt"]) == 0
    out = capsys.readouterr().out
    # Triple enumeration is skipped under the tiny cap; class sums remain.
    assert "burnside" in out
