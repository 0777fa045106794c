import io
import json
import os
import subprocess
import sys

import pytest

from conftest import DATA
from srk.cli import main


def run(argv, monkeypatch=None, seed=None):
    if monkeypatch is not None:
        if seed is None:
            monkeypatch.delenv("SRK_SEED", raising=False)
        else:
            monkeypatch.setenv("SRK_SEED", seed)
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


def spec(name):
    return str(DATA / name)


def test_eval_exact():
    code, text = run(["eval", "--fn", spec("q_squared.json"), "--at", "[0,0,1,0]"])
    assert code == 0 and text == "[-1,0,0,0]\n"


def test_eval_quotient_close(monkeypatch):
    code, text = run(["eval", "--fn", spec("bracket_map.json"), "--at", "[0,0,1,0]"], monkeypatch)
    vals = json.loads(text)
    assert code == 0
    assert max(abs(a - b) for a, b in zip(vals, [0, 0, 1, 0])) <= 1e-15


@pytest.mark.parametrize("theorem,name,extra,want", [
    ("julia", "mobius_half.json", [], 0),
    ("julia", "bracket_map.json", ["--xi", "[0,0,1,0]"], 0),
    ("hopf", "q_squared.json", [], 0),
    ("hopf", "mobius_half.json", [], 0),
    ("schwarz-boundary", "corrected_map.json", ["--xi", "[0,0,1,0]"], 0),
    ("lindelof", "mobius_i_half.json", [], 0),
    ("jc-ball", "mobius_half.json", [], 0),
    ("jc-ball", "alpha_infinite.json", [], 0),
    ("jc-halfspace", "halfspace_sum.json", [], 0),
    ("jc-halfspace", "constant_one.json", ["--gamma", "0.3"], 0),
    ("burns-krantz", "one_plus_q.json", [], 0),
])
def test_reports(monkeypatch, theorem, name, extra, want):
    code, text = run(["report", theorem, "--fn", spec(name)] + extra, monkeypatch)
    doc = json.loads(text)
    assert code == want, text
    assert doc["theorem"] == theorem
    assert doc["verdict"] == ("pass" if want == 0 else "fail")


def test_report_checker_error_is_exit_1(monkeypatch):
    # mobius_i_half does not fix 1, so the Hopf precondition fails
    code, text = run(["report", "hopf", "--fn", spec("mobius_i_half.json")], monkeypatch)
    doc = json.loads(text)
    assert code == 1
    assert doc["error"].startswith("PreconditionFailed")
    assert doc["verdict"] == "fail"


def test_not_unimodular_exit_1(monkeypatch):
    code, text = run(["report", "schwarz-boundary", "--fn", spec("one_plus_q.json")], monkeypatch)
    assert code == 1 and "NotBoundaryUnimodular" in text


def test_seed_override(monkeypatch):
    args = ["report", "julia", "--fn", spec("mobius_half.json"), "--seed", "5"]
    _, text = run(args, monkeypatch)
    assert json.loads(text)["seed"] == 5
    _, text = run(args, monkeypatch, seed="11")
    assert json.loads(text)["seed"] == 11
    code, _ = run(args, monkeypatch, seed="eleven")
    assert code == 2


def test_reports_deterministic(monkeypatch):
    args = ["report", "lindelof", "--fn", spec("bracket_map.json")]
    assert run(args, monkeypatch) == run(args, monkeypatch)


def test_sweep_golden(tmp_path):
    out = tmp_path / "s.csv"
    code, _ = run(["sweep", "--fn", spec("bracket_map.json"), "--xi", "[0,0,1,0]", "--out", str(out)])
    assert code == 0
    assert out.read_bytes() == (DATA / "sweep_bracket_map_j.csv").read_bytes()
    code, text = run(["sweep", "--fn", spec("bracket_map.json"), "--xi", "[0,0,1,0]", "--out", "-"])
    assert text.encode() == out.read_bytes()


def test_sweep_same_without_numba(tmp_path):
    out = tmp_path / "s.csv"
    env = dict(os.environ, SRK_DISABLE_NUMBA="1")
    subprocess.run([sys.executable, "-m", "srk.cli", "sweep", "--fn", spec("bracket_map.json"),
                    "--xi", "[0,0,1,0]", "--out", str(out)], env=env, check=True)
    assert out.read_bytes() == (DATA / "sweep_bracket_map_j.csv").read_bytes()


@pytest.mark.parametrize("argv", [
    [],
    ["eval", "--fn", spec("identity.json")],
    ["eval", "--fn", spec("identity.json"), "--at", "[1,2]"],
    ["report", "riemann", "--fn", spec("identity.json")],
    ["eval", "--fn", spec("bad_syntax.json"), "--at", "[0,0,0,0]"],
    ["eval", "--fn", spec("bad_mobius.json"), "--at", "[0,0,0,0]"],
    ["eval", "--fn", spec("does_not_exist.json"), "--at", "[0,0,0,0]"],
])
def test_usage_errors(argv, capsys):
    assert run(argv)[0] == 2
    assert capsys.readouterr().err


def test_parse_error_message(capsys):
    run(["eval", "--fn", spec("bad_syntax.json"), "--at", "[0,0,0,0]"])
    assert "line 3" in capsys.readouterr().err


def test_eval_singular_exit_1(tmp_path, capsys):
    p = tmp_path / "pole.json"
    p.write_text('{"kind": "quotient", "den": {"kind": "poly", "coeffs": [[1,0,0,0],[-1,0,0,0]]},'
                 ' "num": {"kind": "poly", "coeffs": [[1,0,0,0]]}}')
    assert run(["eval", "--fn", str(p), "--at", "[1,0,0,0]"])[0] == 1
    assert "SingularPoint" in capsys.readouterr().err


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "srk.cli", "--help"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "report" in proc.stdout
