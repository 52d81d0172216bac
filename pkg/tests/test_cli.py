import csv
import io
import json
import subprocess
import sys

from aperiodica import verify
from aperiodica.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_INPUT, EXIT_OK, main

FIB = ["--epsilon", "tau'", "--eta", "tau", "--window-c", "0", "--window-len", "1"]
TERNARY = ["--epsilon", "tau'", "--eta", "tau", "--window-c", "0", "--window-len", "9/10"]

def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err

def test_word(capsys):
    code, out, _ = run(capsys, "word", *FIB, "--count", "13")
    assert code == EXIT_OK
    assert out.strip() == "AABAB|AABAABAB"

def test_generate_json(capsys):
    code, out, _ = run(capsys, "generate", *FIB, "--count", "8", "--left", "3")
    assert code == EXIT_OK
    obj = json.loads(out)
    # 3 letters left of the origin, 5 right
    assert obj["word"] == "BAB|AABAA"
    assert len(obj["points"]) == 9

def test_generate_oracle(capsys):
    code, out, err = run(capsys, "generate", *TERNARY, "--count", "100", "--oracle", "--format", "text")
    assert code == EXIT_OK
    assert "match" in err
    assert len(out.splitlines()) == 101

def test_gaps(capsys):
    code, out, _ = run(capsys, "gaps", *FIB)
    obj = json.loads(out)
    assert code == EXIT_OK and obj["binary"]
    assert obj["delta1"] == {"a": 1, "b": 1, "phys": "3/2 + 1/2*sqrt(5)", "star": "3/2 - 1/2*sqrt(5)"}

def test_complexity_csv(capsys):
    code, out, _ = run(capsys, "complexity", *TERNARY, "--n-max", "5")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == EXIT_OK
    assert [int(r["C"]) for r in rows] == [3, 5, 7, 9, 11]

def test_palindromes_csv(capsys):
    code, out, _ = run(capsys, "palindromes", *FIB, "--n-max", "6")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == EXIT_OK
    assert [int(r["P"]) for r in rows] == [2, 1, 2, 1, 2, 1]

def test_normalize(capsys):
    code, out, _ = run(capsys, "normalize", "--epsilon", "tau'+1", "--eta", "tau", "--window-len", "9/10")
    assert code == EXIT_OK
    obj = json.loads(out)
    assert {"params", "scale", "matrix", "word_params", "letter_permutation"} <= set(obj)

def test_fixpoint_and_densities(capsys):
    code, out, _ = run(capsys, "fixpoint", "--morphism", "A->AAB;B->AB", "--length", "5")
    assert code == EXIT_OK
    assert out.strip() == "AABAB|AABAABAB"
    code, out, _ = run(capsys, "densities", "--morphism", "A->AAB;B->AB")
    assert code == EXIT_OK
    obj = json.loads(out)
    assert obj["densities"]["A"] == "-1/2 + 1/2*sqrt(5)"
    assert obj["radius"] == "0.000e+00"

def test_sturm_and_invariance(capsys):
    code, out, _ = run(capsys, "sturm", "--alpha", "1/tau")
    assert code == EXIT_OK and json.loads(out)["is_sturm"] is True
    code, out, _ = run(capsys, "invariance", "--alpha", "1/tau", "--beta", "2*tau-3")
    obj = json.loads(out)
    assert code == EXIT_OK
    assert obj["invariant"] is False
    assert obj["clauses"]["iii"] is False

def test_invalid_input(capsys):
    assert run(capsys, "sturm", "--alpha", "tau")[0] == EXIT_INPUT
    assert run(capsys, "word", "--epsilon", "bogus", "--eta", "tau")[0] == EXIT_INPUT
    assert run(capsys, "no-such-command")[0] == EXIT_INPUT
    assert run(capsys, "normalize", "--epsilon", "-0.4", "--eta", "tau")[0] == EXIT_INPUT

def test_budget(capsys, monkeypatch):
    monkeypatch.setenv("APERIODICA_BUDGET", "1")
    assert run(capsys, "word", *FIB[:4], "--window-c", "100")[0] == EXIT_BUDGET

def test_planar(capsys, tmp_path):
    svg, tiles = tmp_path / "out.svg", tmp_path / "tiles.json"
    code, out, _ = run(capsys, "planar", "--phys-radius", "12", "--svg", str(svg), "--tiles", str(tiles))
    assert code == EXIT_OK
    summary = json.loads(out)
    assert summary["tenfold"] and summary["classes"] == 6
    assert svg.read_text().startswith("<?xml")
    assert len(json.loads(tiles.read_text())) == 6
    assert run(capsys, "planar", "--phys-radius", "12", "--box", "2")[0] == EXIT_INPUT

def test_deterministic_output(capsys, tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"{k}.svg"
        run(capsys, "planar", "--phys-radius", "8", "--svg", str(path))
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]

def test_verify_all_exit_codes(capsys, monkeypatch):
    monkeypatch.setattr(verify, "CHECKS", [verify.check_fibonacci, verify.check_invariance])
    code, out, _ = run(capsys, "verify-all")
    assert code == EXIT_OK
    assert out.count("[PASS]") == 2

    def failing():
        return verify.CheckResult(0, "forced", False, "fails on purpose", 0.0)

    monkeypatch.setattr(verify, "CHECKS", [failing])
    assert run(capsys, "verify-all")[0] == EXIT_FAIL

def test_console_script_module():
    res = subprocess.run(
        [sys.executable, "-m", "aperiodica.cli", "word", *FIB, "--count", "13"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert res.returncode == 0
    assert res.stdout.strip() == "AABAB|AABAABAB"
