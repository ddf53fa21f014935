import json
from pathlib import Path

import pytest

from monores.cli import EXIT, main
from monores.corpus import random_corpus, tight_seeds
from monores.driver import Status, run
from monores.io import save_json, state_out
from monores.state import make_state
from monores.field import GF

HAND = json.loads((Path(__file__).parent / "fixtures" / "hand_trace.json").read_text())["instance"]


def write(tmp_path, obj, name="inst.json"):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def test_validate(tmp_path, capsys):
    assert main(["validate", write(tmp_path, HAND)]) == 0
    assert "FAIL" not in capsys.readouterr().out
    bad = make_state(GF(2, 1), 1, [[], [(1, 1, 1)]], 2, [("x", 0, 5)], 64)
    assert main(["validate", write(tmp_path, state_out(bad))]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_schema_and_missing_files(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    assert main(["validate", str(p)]) == 2
    assert main(["validate", write(tmp_path, {"p": 2})]) == 2
    assert main(["validate", str(tmp_path / "absent.json")]) == 1


def test_exit_codes_are_distinct():
    assert sorted(EXIT.values()) == [0, 10, 11, 12, 13, 14]
    assert set(EXIT) == set(Status)


def test_run_hand_instance(tmp_path, capsys):
    out = tmp_path / "t.json"
    assert main(["run", write(tmp_path, HAND), "--trace-out", str(out)]) == 11
    text = capsys.readouterr().out
    assert "curve" in text and "status SigmaDrop" in text
    assert main(["verify", str(out)]) == 0
    assert main(["run", write(tmp_path, HAND), "--max-steps", "1"]) == 12


def test_run_statuses_match_exit_codes(tmp_path):
    seen = set()
    for st in random_corpus(seed=0, count=25) + tight_seeds(seed=0, count=2):
        status = run(st).status
        if status in seen:
            continue
        seen.add(status)
        assert main(["run", write(tmp_path, state_out(st))]) == EXIT[status]
    assert {Status.RESOLVED, Status.TIGHT_RESOLVED, Status.SIGMA_DROP} <= seen


def test_outside_setting_exit(tmp_path):
    st = make_state(GF(3, 1), 1, [[(1, 2, 1)], [], [(3, 3, 1), (1, 5, 1)]], 2, [("y", 0, 4)], 32)
    assert main(["run", write(tmp_path, state_out(st))]) == 14


def test_exhaustive_and_scripted(tmp_path, capsys):
    st = make_state(GF(2, 1), 1, [[], [(3, 1, 1), (1, 3, 1)]], 1, [("x", 0, 1), ("y", 1, 2)], 64)
    path = write(tmp_path, state_out(st))
    main(["run", path, "--devil", "exhaustive"])
    assert "path 2:" in capsys.readouterr().out
    main(["run", path, "--script", "X(1)"])
    assert "X(1)" in capsys.readouterr().out.splitlines()[0]
    scripted = dict(state_out(st), script=["Y0"])
    main(["run", write(tmp_path, scripted, "s.json")])
    assert "Y0" in capsys.readouterr().out.splitlines()[0]


def test_forge(tmp_path, capsys):
    out = tmp_path / "f.json"
    assert main(["forge", "--p", "2", "--r", "1", "--s", "1", "--t", "2", "--verify", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "x^1*y^3 + 1*x^3*y^1" in text and "verify: ok" in text
    assert main(["validate", str(out)]) == 0
    assert main(["forge", "--p", "2", "--r", "1", "--s", "1", "--gamma", "0", "--verify"]) == 0
    assert main(["forge", "--p", "2", "--r", "1", "--s", "1", "--gamma", "1"]) == 1
    assert "SpecViolation" in capsys.readouterr().err


def test_verify_flags_tampering(tmp_path, capsys):
    out = tmp_path / "t.json"
    main(["forge", "--p", "2", "--r", "1", "--s", "1", "--gamma", "0", "--boost", "4",
          "--out", str(tmp_path / "f.json")])
    main(["run", str(tmp_path / "f.json"), "--trace-out", str(out)])
    capsys.readouterr()
    data = json.loads(out.read_text())
    data["paths"][0]["steps"][0]["post"]["spade"] = "lex{(0), (0)}"
    out.write_text(json.dumps(data))
    assert main(["verify", str(out)]) == 1
    assert "report.spade-text" in capsys.readouterr().out
    data["instance"]["a"] = 7
    out.write_text(json.dumps(data))
    assert main(["verify", str(out)]) == 2


def test_invariants_and_compare(tmp_path, capsys):
    path = write(tmp_path, HAND)
    assert main(["invariants", path]) == 0
    assert "lex{(1), (1)}" in capsys.readouterr().out
    assert main(["invariants", path, "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["H"] == "5/2" and rep["config"] == "3"
    assert main(["compare", path]) == 0
    assert "status SigmaDrop" in capsys.readouterr().out


def test_prec_environment(tmp_path, monkeypatch, capsys):
    d = json.loads(json.dumps(HAND))
    d.pop("prec", None)
    for c in d["coeffs"]:
        if isinstance(c, dict):
            c.pop("prec", None)
    monkeypatch.setenv("MONORES_PREC", "40")
    assert main(["invariants", write(tmp_path, d), "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["prec"] == 40


def test_suite_small(capsys):
    code = main(["suite", "--seed", "0", "--count", "5", "--node-budget", "200"])
    out = capsys.readouterr().out
    assert "instances" in out
    assert code == (1 if "FAIL" in out else 0)
