import io
import json
import subprocess
import sys

from asep_tableaux import ansatz
from asep_tableaux.cli import main
from asep_tableaux.exactmath import a, b, d, g, q

PARAMS = ["--alpha", "1/2", "--beta", "1/3", "--gamma", "1/5", "--delta", "1/7", "--q", "1/11", "--u", "1"]
MOMENTS = ["moments", "--K", "6", "--a", "1/2", "--b", "1/3", "--c", "-1/5", "--d", "-1/7", "--q", "1/11"]


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count(capsys):
    assert run(capsys, "count", "3")[:2] == (0, "384\n")
    code, out, _ = run(capsys, "count", "2", "--format", "json")
    assert code == 0 and json.loads(out) == {"n": 2, "count": 32, "expected": 32, "verified": True}


def test_gf(capsys):
    assert run(capsys, "gf", "1")[1] == "a + b + g + d\n"
    code, out, _ = run(capsys, "gf", "2", "--type", "11")
    assert code == 0
    assert out.strip() == "a^2 d + a^2 u + a b d + a g d + a d^2 + a d q + a d u + d^2 q"
    assert run(capsys, "gf", "2", "--u1")[1] == run(capsys, "gf", "2", "--u1", "--method", "transfer")[1]


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "2", "--limit", "3", "--format", "json", "--weights")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 3
    first = json.loads(lines[0])
    assert first["size"] == 2 and len(first["weight"]) == 6
    code, out, _ = run(capsys, "enumerate", "2", "--type", "11")
    assert len(out.strip().split("\n\n")) == 8


def test_stationary(capsys):
    code, out, _ = run(capsys, "stationary", "2", *PARAMS)
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 5 and lines[-1] == "verdict: equal"
    code, out, _ = run(capsys, "stationary", "2", *PARAMS, "--format", "json")
    data = json.loads(out)
    assert data["verdict"] == "equal" and data["tableaux"] == data["exact"]
    assert sorted(data["exact"]) == ["00", "01", "10", "11"]


def test_physical(capsys):
    code, out, _ = run(capsys, "physical", "1", *PARAMS)
    # (alpha beta - gamma delta) / (alpha + beta + gamma + delta)
    assert code == 0 and "current: 29/247" in out
    code, out, _ = run(capsys, "physical", "3", "--points", "1,3", *PARAMS, "--format", "json")
    data = json.loads(out)
    assert data["bonds_agree"] and data["points"] == [1, 3]
    assert "/" in data["m_point"]


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--families", "I,II,III", "--max-len", "3")
    assert code == 0 and out == "I: ok\nII: ok\nIII: ok\n"
    code, out, _ = run(capsys, "verify", "--families", "decrease,identities", "--max-len", "2", "--format", "json")
    assert code == 0 and json.loads(out)["status"] == "ok"


def test_verify_counterexample(capsys, monkeypatch):
    monkeypatch.setattr(ansatz, "lam", lambda n: a * b - g * d * q**n)
    code, out, _ = run(capsys, "verify", "--families", "II", "--max-len", "2")
    assert code == 1 and out.startswith("II: FAIL ")
    assert "lhs" in out and "rhs" in out


def test_moments(capsys):
    code, out, _ = run(capsys, *MOMENTS)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split()[1:] == lines[1].split()[1:]
    assert lines[-1] == "verdict: equal"
    code, out, _ = run(capsys, *MOMENTS, "--format", "json")
    data = json.loads(out)
    assert data["equal"] and data["bridge"] and data["roundtrip"]
    assert run(capsys, *MOMENTS, "--u", "1/2")[0] == 2
    assert run(capsys, *MOMENTS, "--u", "1")[0] == 0


def test_biject(capsys, monkeypatch):
    code, out, _ = run(capsys, "biject", "--from", "staircase", "--to", "perm", stdin="2\n.a\nb\n", monkeypatch=monkeypatch)
    assert code == 0 and out == "VVH\n1\n1\n"
    code, out, _ = run(capsys, "biject", "--from", "perm", "--to", "staircase", stdin=out, monkeypatch=monkeypatch)
    assert code == 0 and out == "2\n.a\nb\n"
    code, out, _ = run(capsys, "biject", "--from", "alt", "--to", "perm", stdin="VH\n<\n", monkeypatch=monkeypatch)
    assert code == 0 and out == "VVH\n1\n0\n"
    code, _, err = run(capsys, "biject", "--from", "staircase", "--to", "alt", stdin="1\ng\n", monkeypatch=monkeypatch)
    assert code == 2 and "gamma" in err


def test_exit_codes(capsys):
    assert run(capsys, "count", "9")[0] == 3
    assert run(capsys, "count")[0] == 2
    assert run(capsys, "stationary", "2", "--alpha", "0.5", "--beta", "1", "--gamma", "0", "--delta", "0")[0] == 2
    assert run(capsys, "stationary", "2", "--alpha", "1/2")[0] == 2
    assert run(capsys, "stationary", "2", "--alpha", "0", "--beta", "0", "--gamma", "0", "--delta", "0")[0] == 3
    assert run(capsys, "verify", "--families", "IV")[0] == 2
    assert run(capsys, "verify", "--max-len", "9")[0] == 3
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "moments", "--K", "3", "--a", "-1", "--b", "0", "--c", "1/2", "--d", "0", "--q", "1/2")[0] == 3


def test_config_and_output(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"command": "stationary", "n": 2, "params": dict(zip(["alpha", "beta", "gamma", "delta", "q"], ["1/2", "1/3", "1/5", "1/7", "1/11"])), "format": "json"}))
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "--config", str(cfg), "--output", str(target))
    assert code == 0 and out == ""
    data = json.loads(target.read_text())
    assert data["verdict"] == "equal"
    # the command line overrides the file
    code, out, _ = run(capsys, "stationary", "--config", str(cfg), "--alpha", "1/4")
    assert code == 0 and json.loads(out)["params"]["alpha"] == "1/4"
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "count", "2", "--config", str(bad))[0] == 2
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"bogus_key": 1}))
    assert run(capsys, "count", "2", "--config", str(wrong))[0] == 2


def test_deterministic(capsys):
    first = run(capsys, "stationary", "3", *PARAMS, "--format", "json")[1]
    assert run(capsys, "stationary", "3", *PARAMS, "--format", "json")[1] == first


def test_selftest_subset(capsys):
    code, out, _ = run(capsys, "selftest", "--only", "2,4")
    assert code == 0
    assert "[PASS] criterion 2" in out and "[PASS] criterion 4" in out
    assert out.strip().endswith("selftest: ok")
    assert run(capsys, "selftest", "--only", "12")[0] == 2


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "asep_tableaux.cli", "count", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "32\n"
