import subprocess
import sys
from pathlib import Path

import pytest

from orbisum.cli import main

FIX = Path(__file__).parent.parent / "fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify(capsys):
    assert run(capsys, "classify", "0", "7") == (0, "bad\n", "")
    assert run(capsys, "classify", "0", "5", "5")[1] == "spherical cyclic(5)\n"
    assert run(capsys, "classify", "1")[1] == "euclidean\n"
    assert run(capsys, "classify", "0", "1")[0] == 2


def test_canonicalize_example(capsys):
    code, out, _ = run(capsys, "-f", str(FIX / "knot_sum.orb"), "canonicalize", "A")
    assert code == 0 and out == "summands: Kp, S3c(5); labels: ordinary\n"


def test_efficient(capsys):
    f = str(FIX / "knot_sum.orb")
    code, out, _ = run(capsys, "-f", f, "efficient", "A")
    assert code == 1 and out.splitlines() == [
        "inefficient: node a (S3c(3)); sum k -> a : cyclic(3) at k.c0, a.c0"
    ]
    assert run(capsys, "-f", f, "efficient", "C")[:2] == (0, "efficient: C\n")


def test_equivalent(capsys):
    f = str(FIX / "knot_sum.orb")
    code, out, _ = run(capsys, "-f", f, "equivalent", "A", "B")
    assert code == 0 and out.endswith("equivalent: yes\n")
    code, out, _ = run(capsys, "-f", str(FIX / "mixed.orb"), "equivalent", "mixed", "efficient_one")
    assert code == 0 and out.endswith("equivalent: yes\n")
    assert run(capsys, "-f", f, "equivalent", "B", "C")[0] == 0
    code, out, _ = run(capsys, "-f", f, "equivalent", "A", "D")
    assert code == 1 and out.endswith("equivalent: no\n")


def test_validate(capsys):
    code, out, _ = run(capsys, "-f", str(FIX / "invalid.orb"), "validate", "mismatch")
    assert code == 1 and out.startswith("violation: order mismatch")
    assert run(capsys, "-f", str(FIX / "mixed.orb"), "validate", "mixed")[:2] == (0, "valid: mixed\n")


def test_split(capsys):
    code, out, _ = run(capsys, "-f", str(FIX / "knot_sum.orb"), "split", "A")
    assert code == 0
    assert out.splitlines() == [
        "step: phase 1 cut b-a ordinary",
        "step: phase 2 contract k-a cyclic(3)",
        "final: summands: Kp, S3c(5); labels: ordinary",
        "agrees with canonical form: yes",
    ]


def test_nu(capsys):
    f = str(FIX / "nu_small.orb")
    assert run(capsys, "-f", f, "nu", "chain", "--p", "2")[:2] == (0, "nu: 1; p: 2; replay: 1\n")
    code, out, _ = run(capsys, "-f", str(FIX / "vertex_control.orb"), "nu", "vertex_first", "--p", "2")
    assert code == 1 and out.startswith("refused:")


def test_usage_errors(capsys):
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "canonicalize", "A")[0] == 2
    assert run(capsys, "-f", str(FIX / "knot_sum.orb"), "canonicalize", "Z")[0] == 2
    assert run(capsys, "-f", str(FIX / "nope.orb"), "canonicalize", "A")[0] == 2


def test_parse_error_exit(tmp_path, capsys):
    bad = tmp_path / "bad.orb"
    bad.write_text("atom A { circle 1 }\n")
    code, out, err = run(capsys, "-f", str(bad), "validate", "A")
    assert code == 2 and "1:" in err


def test_stdin(monkeypatch, capsys):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO((FIX / "knot_sum.orb").read_text()))
    assert run(capsys, "-f", "-", "canonicalize", "B")[1] == "summands: Kp, S3c(5); labels: ordinary\n"


def test_lemma_check(capsys):
    code, out, _ = run(capsys, "lemma-check", "--max-edges", "3")
    assert code == 0 and out.splitlines()[-1] == "suites: 3; failed: 0"


def test_verify_random_small(capsys):
    code, out, _ = run(capsys, "verify", "--max-edges", "3", "--random", "--seed", "4", "--iters", "20")
    assert code == 0, out
    assert out.splitlines()[-1] == "suites: 9; failed: 0"


@pytest.mark.parametrize("argv", [
    ["split", "mixed", "--strategy", "random", "--seed", "9"],
    ["canonicalize", "mixed"],
])
def test_reports_byte_identical_across_processes(argv):
    cmd = [sys.executable, "-m", "orbisum.cli", "-f", str(FIX / "mixed.orb"), *argv]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    assert a.returncode == 0 and a.stdout == b.stdout and a.stdout
