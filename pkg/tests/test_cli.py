import io
import json

import pytest

from reeskit import cli, verify
from reeskit.cli import main, run_text

NILPOTENT = """\
ring A = QQ[x] / (x^2);
module M = coker A [[x]];
ring B = A[S] / (x*S);
map f : A -> B { x -> x };
rees M;
compare M via f;
charts (rees M);
"""

PLANE = """\
ring A = QQ[x,y];
module M = coker A [[y],[-x]];
rees M;
charts (rees M);
"""


def _script(tmp_path, text, name="s.rk"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


def test_nilpotent_script(tmp_path, capsys):
    assert main(["run", _script(tmp_path, NILPOTENT)]) == 0
    out = capsys.readouterr().out
    assert "rees M\n  base: QQ[x]/(x^2)\n  variables: T\n  ideal: (x*T, T^2)\n" in out
    assert "  result: no canonical map, witness T^2\n" in out
    assert "  ideal: (1)\n" in out


def test_plane_charts():
    blocks = cli.Interpreter().run(cli.parse(PLANE))
    charts = [b for b in blocks if b["command"] == "charts (rees M)"]
    assert [b["ideal"] for b in charts] == ["(x*u2 - y)", "(y*u1 - x)"]
    assert blocks[0]["ideal"] == "(y*T1 - x*T2)"


def test_json_output(tmp_path, capsys):
    assert main(["run", _script(tmp_path, NILPOTENT), "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data[0] == {"command": "rees M", "base": "QQ[x]/(x^2)", "variables": "T",
                       "ideal": "(x*T, T^2)", "versal rank": "1"}
    assert all(isinstance(v, str) for block in data for v in block.values())


def test_text_and_json_share_leaves():
    text = run_text(NILPOTENT)
    for block in json.loads(run_text(NILPOTENT, as_json=True)):
        for key, value in block.items():
            if key != "command":
                assert f"  {key}: {value}\n" in text


def test_output_is_deterministic():
    assert run_text(NILPOTENT) == run_text(NILPOTENT)
    assert run_text(PLANE, as_json=True) == run_text(PLANE, as_json=True)


@pytest.mark.parametrize("text,fragment", [
    ("ring A = QQ[x];\nmodule M = coker A [[x],[x, x]];", "line 2"),
    ("rees M;", "undefined name"),
    ("ring A = QQ[x]\n", "expected"),
    ("ring A = QQ[x];\n  ideal I = (y) in A;", "line 2, column 14: unknown variable 'y'"),
    ("ring A = QQ[x];\nring B = QQ[y];\nmap f : A -> B { x -> y^2, z -> y };", "line 3"),
    ("ring A = QQ[x];\nring B = QQ[y] / (y^2);\nmap f : B -> A { y -> x };", "line 3"),
])
def test_errors_exit_one(tmp_path, capsys, text, fragment):
    assert main(["run", _script(tmp_path, text)]) == 1
    err = capsys.readouterr().err
    assert err.startswith("error: ") and fragment in err


def test_missing_file_exits_one(tmp_path, capsys):
    assert main(["run", str(tmp_path / "absent.rk")]) == 1
    assert "error" in capsys.readouterr().err


def test_verify_command(capsys):
    assert main(["verify"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[-1] == f"{len(verify.builtin_checks())}/{len(verify.builtin_checks())} checks passed"
    assert all(line.startswith("pass  ") for line in out[:-1])


def test_verify_statement_in_script(tmp_path, capsys):
    assert main(["run", _script(tmp_path, "verify;")]) == 0
    out = capsys.readouterr().out
    assert out.count("  status: pass\n") == len(verify.builtin_checks())
    assert "FAIL" not in out


def test_verify_mismatch_exits_two(tmp_path, monkeypatch, capsys):
    bad = verify.Check("deliberately broken", "a", "b")
    monkeypatch.setattr(verify, "builtin_checks", lambda: [bad])
    assert main(["verify"]) == 2
    assert "FAIL  deliberately broken: b" in capsys.readouterr().out
    assert main(["run", _script(tmp_path, "verify;")]) == 2


def test_repl(monkeypatch, capsys):
    session = "ring A = QQ[x] / (x^2);\nmodule M =\n  coker A [[x]];\nrees N;\nrees M;\n"
    monkeypatch.setattr("sys.stdin", io.StringIO(session))
    assert main(["repl"]) == 0
    out = capsys.readouterr().out
    assert "error: line 1, column 6: undefined name 'N'" in out
    assert out.rstrip().endswith("ideal: (x*T, T^2)\n  versal rank: 1".rstrip())


def test_dense_and_assof_commands():
    text = """\
ring A = QQ[x,y] / (x*y);
module F = free A 1;
ideal P = (y) in A;
dense A minus (x);
assof F primes P minus (y);
"""
    blocks = cli.Interpreter().run(cli.parse(text))
    assert blocks[0]["dense"] == "false" and blocks[0]["witness"] == "y"
    assert blocks[1] == {"command": "assof F primes P minus (y)", "prime (y)": "false",
                         "predicted dense": "false", "direct dense": "false", "agree": "true"}


def test_algebra_torsionless_quotient_command():
    text = """\
ring B = QQ[x,y] / (x*y);
ring C = QQ[x,z] / (x*z - 1);
map g : B -> C { y -> 0 };
assume flat g;
algtl B via g;
"""
    (block,) = cli.Interpreter().run(cli.parse(text))
    assert block == {"command": "algtl B via g", "ring": "QQ[x,y]/(y)", "kernel": "(y)",
                     "flatness asserted": "true"}
