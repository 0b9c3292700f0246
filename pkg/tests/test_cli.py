import json
import subprocess
import sys


from algmmp.cli import main, render_trace

from conftest import fixture_path


def run(*args):
    p = subprocess.run([sys.executable, "-m", "algmmp", *args], capture_output=True, text=True,
                       timeout=600)
    return p.returncode, p.stdout, p.stderr


def test_check_reports_invariants(capsys):
    assert main(["check", fixture_path("P112")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["dim"] == 2
    assert out["hilbert_function"] == [1, 2, 4, 6, 9, 12]


def test_check_rejects_irrelevant(capsys):
    assert main(["check", fixture_path("irrelevant")]) == 1
    assert "ContainsIrrelevant" in capsys.readouterr().err


def test_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"ring": ')
    assert main(["check", str(bad)]) == 1
    assert "line 1" in capsys.readouterr().err
    empty = tmp_path / "empty.json"
    empty.write_text("")
    assert main(["check", str(empty)]) == 1


def test_segre(capsys):
    assert main(["segre", fixture_path("P1"), fixture_path("P1_t")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert len(out["hilbert_basis"]) == 4
    assert out["hilbert_function"] == [(i + 1) ** 2 for i in range(6)]


def test_canonical_and_nef(capsys):
    assert main(["canonical", fixture_path("P112")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["module"]["shift"] == -4 and out["cartier_index"] == 1
    assert main(["nef", fixture_path("P3")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["result"] == "NotNef" and out["K_dot_C"] == -4


def test_flip_budget_exit_code(capsys):
    assert main(["flip", fixture_path("P3"), "--flip-max-e", "2"]) == 2
    assert json.loads(capsys.readouterr().out)["error"] == "BudgetExceeded"


def test_mmp_partial_trace_on_zero_budget(capsys):
    code = main(["mmp", fixture_path("P3"), "--budget-divisors", "0",
                 "--betti-oracle", fixture_path("oracle")])
    assert code == 2
    out = json.loads(capsys.readouterr().out)
    assert out["steps"] == [] and out["error"] == "BudgetExceeded"


def test_missing_oracle_entry_is_input_error(capsys):
    code = main(["mmp", fixture_path("P3"), "--hints", fixture_path("hints")])
    assert code == 1
    assert "OracleMissing" in capsys.readouterr().err


def test_render_trace():
    trace = {"steps": [{"kind": "divisorial", "source": "A", "target": "B",
                        "certificate": {"K_dot_C": -2, "exceptional_codim": 1}},
                       {"kind": "mori-fiber", "source": "B", "target": "P0", "certificate": {}}],
             "terminal": "MoriFiberSpace"}
    text = render_trace(trace)
    lines = text.splitlines()
    assert len(lines) == 2
    assert lines[0].startswith("1. divisorial: A -> B")
    assert lines[1].endswith("terminal: MoriFiberSpace")
    assert render_trace({"steps": [], "terminal": "MinimalModel"}) == "0 steps; terminal: MinimalModel\n"


def test_render_rejects_non_trace(tmp_path, capsys):
    p = tmp_path / "x.json"
    p.write_text("[1, 2]")
    assert main(["render", str(p)]) == 1


def test_out_flag_writes_file(tmp_path):
    out = tmp_path / "o.json"
    assert main(["check", fixture_path("P3"), "--out", str(out)]) == 0
    assert json.loads(out.read_text())["dim"] == 3


def test_subprocess_entry_point():
    code, out, err = run("stein", fixture_path("square_pr"))
    assert code == 0, err
    data = json.loads(out)
    assert data["degree_g"] == 2 and data["components"] == 2
