import json

import pytest

from loopmoment import __version__
from loopmoment.cli import run


def report(capsys, argv, code=0):
    assert run(argv) == code
    return capsys.readouterr()


def test_convexity_expect_equal(capsys):
    out = report(capsys, ["verify-convexity", "--type", "A", "--rank", "2", "--involution",
                          "maximal_rank", "--emax", "8", "--expect", "equal"])
    doc = json.loads(out.out)
    assert doc["result"]["verdict"] == "equal"
    assert doc["normalization"] == "long_root_sq_2"
    assert doc["version"] == __version__
    assert doc["config"]["emax"] == "8/1"


def test_convexity_mismatch_exit_code(capsys):
    out = report(capsys, ["verify-convexity", "--type", "A", "--rank", "2", "--involution",
                          "su_n_cp", "--emax", "4", "--expect", "equal"], code=2)
    assert json.loads(out.out)["result"]["witness"] == [-1, -1]
    report(capsys, ["verify-convexity", "--type", "A", "--rank", "2", "--involution", "su_n_cp",
                    "--emax", "4", "--expect", "strict"])


def test_betti_counterexample(capsys):
    out = report(capsys, ["verify-betti", "--type", "A", "--rank", "2", "--against", "cp",
                          "--n", "3", "--max-degree", "20", "--expect", "discrepancy@2"])
    assert json.loads(out.out)["result"]["first_discrepancy"] == {"degree": 2, "a": 2, "b": 0}
    report(capsys, ["verify-betti", "--type", "A", "--rank", "2", "--against", "cp",
                    "--n", "3", "--max-degree", "20", "--expect", "equal"], code=2)
    report(capsys, ["verify-betti", "--type", "A", "--rank", "3", "--against", "su",
                    "--n", "4", "--max-degree", "20", "--expect", "equal"])
    report(capsys, ["verify-betti", "--type", "A", "--rank", "2", "--against", "cp",
                    "--n", "3", "--max-degree", "4", "--expect", "maybe"], code=1)


def test_series(capsys):
    out = report(capsys, ["series", "--type", "A", "--rank", "1", "--max-degree", "0"])
    assert json.loads(out.out)["result"]["coeffs"] == [1]
    out = report(capsys, ["series", "--type", "A", "--rank", "2", "--max-degree", "3", "--halve"])
    assert json.loads(out.out)["result"]["coeffs"] == [1, 1, 2, 2]


def test_usage_errors(capsys, tmp_path):
    assert run(["frobnicate"]) == 1
    assert run(["cells", "--type", "A", "--rank", "2"]) == 1
    assert run(["cells", "--type", "Q", "--rank", "2", "--max-length", "2"]) == 1
    assert "valid" in capsys.readouterr().err
    assert run(["polytope", "--type", "A", "--rank", "1", "--emax", "x"]) == 1
    bad = tmp_path / "m.json"
    bad.write_text("{not json")
    assert run(["verify-convexity", "--type", "A", "--rank", "2", "--involution", str(bad),
                "--emax", "2"]) == 1
    bad.write_text(json.dumps({"matrix": [[1, 1], [0, 1]]}))
    assert run(["verify-convexity", "--type", "A", "--rank", "2", "--involution", str(bad),
                "--emax", "2"]) == 1
    assert run(["verify-convexity", "--type", "A", "--rank", "2", "--involution",
                str(tmp_path / "missing.json"), "--emax", "2"]) == 1


def test_matrix_file(tmp_path, capsys):
    f = tmp_path / "iota.json"
    f.write_text(json.dumps({"matrix": [[0, -1], [-1, 0]]}))
    out = report(capsys, ["verify-convexity", "--type", "A", "--rank", "2", "--involution",
                          str(f), "--emax", "2", "--expect", "strict"])
    assert json.loads(out.out)["result"]["involution"]["minus_one_subspace"] == [[1, 1]]


def test_out_file_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["cells", "--type", "G", "--rank", "2", "--max-length", "4"]
    assert run(args + ["--out", str(a)]) == 0
    assert run(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["result"]["counts"] == [1, 1, 1, 1, 1]


def test_polytope(capsys):
    out = report(capsys, ["polytope", "--type", "A", "--rank", "1", "--emax", "4"])
    assert len(json.loads(out.out)["result"]["vertices"]) == 5


def test_involution_check(capsys):
    out = report(capsys, ["involution-check", "--algebra", "sp", "--n", "2"])
    assert json.loads(out.out)["result"]["ok"]
    report(capsys, ["involution-check", "--algebra", "su", "--n", "3", "--preset", "cp"])
    report(capsys, ["involution-check", "--algebra", "so", "--n", "3", "--preset", "cp"], code=1)


def test_loop_residuals(capsys):
    out = report(capsys, ["loop-residuals", "--count", "2", "--N", "16"])
    assert out.out.splitlines()[0].startswith("loop_id,N,energy,proj_1")
    report(capsys, ["loop-residuals", "--count", "2", "--N", "12"], code=1)


def test_cell_conjugation(capsys):
    out = report(capsys, ["cell-conjugation-check", "--n", "2", "--max-length", "3",
                          "--random", "2"])
    res = json.loads(out.out)["result"]
    assert res["holds"] and res["words"] == 7


def test_module_entry_point():
    import subprocess
    import sys
    p = subprocess.run([sys.executable, "-m", "loopmoment", "series", "--type", "A", "--rank",
                        "1", "--max-degree", "2"], capture_output=True, text=True)
    assert p.returncode == 0
    assert json.loads(p.stdout)["result"]["coeffs"] == [1, 0, 1]
