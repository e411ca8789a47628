import json

from qsaa.cli import run
from qsaa.rep import module_from_json, verify_relations


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_pideg_table(capsys):
    code, out, _ = invoke(capsys, "pideg", "--algebra", "qsaa", "--l", "5")
    assert code == 0
    payload = json.loads(out)
    assert payload["pideg"] == 25
    assert payload["factors"] == [1, 1, 2, 2]
    code, out, _ = invoke(capsys, "pideg", "--algebra", "smash", "--l", "6",
                          "--bruteforce")
    assert code == 0
    payload = json.loads(out)
    assert payload["pideg"] == 18 and payload["bruteforce_h"] == 324


def test_pideg_custom_matrix(capsys):
    code, out, _ = invoke(capsys, "pideg", "--matrix", "[[0,6],[-6,0]]",
                          "--m", "4", "--bruteforce")
    assert code == 0
    payload = json.loads(out)
    assert payload == {"factors": [6, 6], "kernel_dim": 0, "pideg": 2,
                       "bruteforce_h": 4, "consistent": True}


def test_pideg_guard_exit_code(capsys):
    code, _, err = invoke(capsys, "pideg", "--matrix",
                          json.dumps([[0] * 10 for _ in range(10)]),
                          "--m", "6", "--bruteforce")
    assert code == 3
    assert "resource-limit" in err


def test_build_verify_round_trip(tmp_path, capsys):
    path = tmp_path / "m1.json"
    code, _, _ = invoke(capsys, "build", "m1", "--l", "3", "--mu", "1,2,1,1",
                        "--out", str(path))
    assert code == 0
    data = json.loads(path.read_text())
    module = module_from_json(data)
    assert module.dim == 9 and verify_relations(module) == []
    code, out, _ = invoke(capsys, "verify", "--module", str(path))
    assert code == 0
    report = json.loads(out)
    assert all(r["status"] == "pass" for r in report["results"])


def test_build_stdout_and_classify(tmp_path, capsys):
    code, out, _ = invoke(capsys, "build", "m2", "--l", "3", "--mu", "1,1,1")
    assert code == 0
    path = tmp_path / "m2.json"
    path.write_text(out)
    code, out, _ = invoke(capsys, "classify", "--module", str(path))
    assert code == 0
    payload = json.loads(out)
    assert payload["type"] == "m2"
    assert payload["eigen"]["alpha"] == "0"


def test_verify_detects_corruption(tmp_path, capsys):
    code, out, _ = invoke(capsys, "build", "m1", "--l", "3", "--mu", "1,1,1,1")
    data = json.loads(out)
    data["matrices"]["E"] = data["matrices"]["X"]
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(data))
    code, out, _ = invoke(capsys, "verify", "--module", str(path))
    assert code == 1
    report = json.loads(out)
    assert any(r["status"] == "fail" for r in report["results"])


def test_verify_identity(capsys):
    code, out, _ = invoke(capsys, "verify", "--l", "3", "--presentation",
                          "qsaa", "--identity", "E*Y = X + q^-1*Y*E")
    assert code == 0
    code, out, _ = invoke(capsys, "verify", "--l", "3", "--presentation",
                          "qsaa", "--identity", "E*Y = Y*E")
    assert code == 1


def test_iso_cli(capsys):
    code, out, _ = invoke(capsys, "iso", "m1", "--l", "3", "--mu", "q^2,1,1,1",
                          "--gamma", "1,1,1,1")
    assert code == 0
    assert json.loads(out) == {"isomorphic": True, "r1": 1, "r2": 1}
    code, out, _ = invoke(capsys, "iso", "m3", "--l", "3", "--mu", "q,1",
                          "--gamma", "1,1")
    assert json.loads(out) == {"isomorphic": True, "r": 1}
    code, out, _ = invoke(capsys, "iso", "m1", "--l", "3", "--mu", "1,1,1,1",
                          "--gamma", "1,1,2,1")
    assert json.loads(out) == {"isomorphic": False}


def test_verma_cli(tmp_path, capsys):
    out_file = tmp_path / "q.json"
    code, out, _ = invoke(capsys, "verma", "--l", "3", "--p", "2",
                          "--lambda1", "1", "--lambda2", "1",
                          "--out", str(out_file))
    assert code == 0
    payload = json.loads(out)
    assert payload["verdicts"] == {"simple": False, "semisimple": False,
                                   "indecomposable": True}
    assert payload["chain_dims"] == [9]
    module = module_from_json(json.loads(out_file.read_text()))
    assert module.dim == 18


def test_smash_cli(tmp_path, capsys):
    n1 = tmp_path / "n1.json"
    lifted = tmp_path / "lift.json"
    code, _, _ = invoke(capsys, "smash", "build-n1", "--l", "3",
                        "--params", "1,1,0,1,1", "--out", str(n1))
    assert code == 0
    code, _, _ = invoke(capsys, "smash", "lift", "--module", str(n1),
                        "--out", str(lifted))
    assert code == 0
    module = module_from_json(json.loads(lifted.read_text()))
    assert module.pres.name == "smash"
    assert verify_relations(module) == []
    code, out, _ = invoke(capsys, "smash", "pideg", "--l", "3")
    assert json.loads(out) == {"pideg": 9}


def test_invalid_input_exit_codes(capsys):
    code, _, err = invoke(capsys, "build", "m1", "--l", "3", "--mu", "0,1,1,1")
    assert code == 2
    code, _, err = invoke(capsys, "build", "m1", "--l", "3", "--mu", "1,1")
    assert code == 2
    code, _, err = invoke(capsys, "classify", "--module", "/nonexistent.json")
    assert code == 2
    code, _, err = invoke(capsys, "verify", "--l", "3", "--identity", "E*Y")
    assert code == 2


def test_suite_determinism(capsys):
    code, out1, _ = invoke(capsys, "suite", "--l", "3", "--seed", "5")
    assert code == 0
    code, out2, _ = invoke(capsys, "suite", "--l", "3", "--seed", "5")
    report1, report2 = json.loads(out1), json.loads(out2)
    report1.pop("timing")
    report2.pop("timing")
    assert report1 == report2
    assert all(r["status"] == "pass" for r in report1["results"])


def test_suite_csv_format(capsys):
    code, out, _ = invoke(capsys, "suite", "--l", "3", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "check,status,details"
    assert all(line.count(",") == 2 for line in lines[1:])


def test_suite_worker_pool_matches_serial(capsys, monkeypatch):
    code, serial, _ = invoke(capsys, "suite", "--l", "3", "--seed", "1")
    monkeypatch.setenv("QSAA_WORKERS", "4")
    code, pooled, _ = invoke(capsys, "suite", "--l", "3", "--seed", "1")
    a, b = json.loads(serial), json.loads(pooled)
    a.pop("timing")
    b.pop("timing")
    assert a == b
