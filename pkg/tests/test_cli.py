import csv
import io
import json
import math
import subprocess
import sys

import pytest
from scipy import special

from dunkl_dihedral import cli
from dunkl_dihedral.cli import EXIT_FAIL, EXIT_PASS, EXIT_USAGE, main, parse_profile


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_profile():
    assert parse_profile("t^4").coef.tolist() == [0, 0, 0, 0, 1]
    assert parse_profile("1 - 2.5*t + t^3").coef.tolist() == [1, -2.5, 0, 1]
    assert parse_profile("3t**2+1e-3").coef.tolist() == [1e-3, 0, 3]
    with pytest.raises(cli.UsageError):
        parse_profile("sin(t)")
    with pytest.raises(cli.UsageError):
        parse_profile("")


def test_eval_sieved_value(capsys):
    code, out, _ = run(capsys, "eval", "sieved", "--family", "minus", "--k", "3", "--lambda", "0.5",
                       "--n", "7", "--t", "0.25")
    assert code == EXIT_PASS
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 1 and list(rows[0]) == ["family", "k", "lambda", "n", "t", "value"]
    # n = 7 = 2*3 + 1: T_1 C_2^{3/2}(T_3) - T_2 C_1^{3/2}(T_3)
    t = 0.25
    T3 = special.eval_chebyt(3, t)
    ref = t * special.eval_gegenbauer(2, 1.5, T3) - special.eval_chebyt(2, t) * special.eval_gegenbauer(1, 1.5, T3)
    assert float(rows[0]["value"]) == pytest.approx(ref, abs=1e-14)


def test_eval_poisson_circle_value(capsys):
    code, out, _ = run(capsys, "eval", "poisson-circle", "--k", "4", "--lambda", "1", "--p", "1",
                       "--r", "0.5", "--theta", "0.7")
    assert code == EXIT_PASS
    value = float(list(csv.DictReader(io.StringIO(out)))[0]["value"])
    r, th, a = 0.5, 0.7, math.pi / 4
    ref = (1 - r * r) / ((1 - 2 * r * math.cos(th - a) + r * r)
                         * (1 + 2 * r**4 * math.cos(4 * th) + r**8))
    assert value == pytest.approx(ref, rel=1e-14)


def test_eval_intertwine_deterministic_matches_exact(capsys):
    base = ["eval", "intertwine", "--k", "5", "--lambda", "0.8", "--p", "2", "--profile", "t^4",
            "--x", "0.6", "--y", "0.3", "--json"]
    _, det, _ = run(capsys, *base, "--method", "deterministic")
    _, ex, _ = run(capsys, *base)
    a, b = json.loads(det), json.loads(ex)
    assert a["method"] == "deterministic" and b["method"] == "exact"
    assert a["value"] == pytest.approx(b["value"], abs=1e-12)


def test_eval_monte_carlo_reports_stderr_and_seed(capsys):
    base = ["eval", "intertwine", "--k", "3", "--lambda", "1", "--profile", "1", "--x", "0.2", "--y", "0.1",
            "--method", "monte-carlo", "--mc-samples", "1000", "--seed", "9", "--json"]
    _, out, _ = run(capsys, *base)
    row = json.loads(out)
    assert row["seed"] == 9 and row["value"] == pytest.approx(1.0) and row["stderr"] == pytest.approx(0.0, abs=1e-12)


def test_eval_other_targets(capsys):
    code, out, _ = run(capsys, "eval", "modified", "--sign", "-1", "--k", "2", "--lambda", "1",
                       "--n", "1", "--t", "0.5", "-0.5")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == EXIT_PASS and [r["family"] for r in rows] == ["mod-minus"] * 2
    code, out, _ = run(capsys, "eval", "harmonic", "--k", "2", "--lambda", "1", "--n", "1", "--theta", "0.0")
    assert code == EXIT_PASS and float(list(csv.DictReader(io.StringIO(out)))[0]["value"]) == pytest.approx(1.0)
    code, out, _ = run(capsys, "eval", "poisson-interval", "--k", "1", "--lambda", "0.5", "--r", "0.3",
                       "--t", "0.2", "--json")
    r, t = 0.3, 0.2
    assert json.loads(out)["value"] == pytest.approx((1 - r * r) / (1 - 2 * r * t + r * r) ** 1.5)
    code, out, _ = run(capsys, "eval", "intertwine", "--k", "2", "--lambda", "1", "--mu", "1",
                       "--profile", "t^2", "--x", "0.4", "--y", "0.2", "--json")
    assert code == EXIT_PASS and json.loads(out)["method"] == "z2-product"


@pytest.mark.parametrize("argv", [
    ["eval", "sieved", "--k", "2", "--lambda", "1", "--n", "2", "--t", "3"],
    ["eval", "sieved", "--k", "2", "--lambda", "1", "--t", "0.3"],
    ["eval", "nothing", "--k", "2", "--lambda", "1"],
    ["eval", "intertwine", "--k", "3", "--lambda", "1", "--profile", "cos(t)", "--x", "1", "--y", "0"],
    ["verify", "bogus"],
    ["verify", "intertwine", "--k", "3", "--tol", "1e-3"],
    ["verify", "intertwine", "--lambda", "-1"],
    [],
])
def test_usage_errors(capsys, argv):
    assert main(argv) == EXIT_USAGE


def test_verify_intertwine_passes(capsys):
    code, out, _ = run(capsys, "verify", "intertwine", "--k", "3", "--lambda", "1.0", "--max-degree", "6",
                       "--seed", "1")
    assert code == EXIT_PASS
    assert out.splitlines()[0].startswith("# suite=intertwine seed=1 ")
    assert out.splitlines()[-1] == "# overall: PASS"


def test_verify_trig_lemma_k8(capsys):
    code, out, _ = run(capsys, "verify", "identities", "--k", "8", "--samples", "1000", "--seed", "3", "--json")
    assert code == EXIT_PASS
    recs = [json.loads(l) for l in out.splitlines()]
    trig = [r for r in recs if r.get("identity") == "trig-product"]
    assert len(trig) == 1 and trig[0]["max_dev"] <= 1e-12


def test_verify_failure_exit_status(capsys):
    code, out, _ = run(capsys, "verify", "kernels", "--k", "2", "--lambda", "1", "--seed", "0")
    assert code == EXIT_FAIL
    assert "FAIL generating-plus-square" in out


def test_verify_without_seed_prints_drawn_seed(capsys):
    _, out, _ = run(capsys, "verify", "identities", "--k", "2", "--json")
    header = json.loads(out.splitlines()[0])
    assert header["kind"] == "header" and isinstance(header["seed"], int)


def test_verify_out_file_and_timing(tmp_path, capsys):
    path = tmp_path / "report.ndjson"
    code, out, _ = run(capsys, "verify", "products", "--k", "2", "--lambda", "1", "--mu", "1", "--seed", "2",
                       "--json", "--timing", "--out", str(path))
    assert code == EXIT_PASS and out == ""
    lines = path.read_text(encoding="utf-8").splitlines()
    assert "wall_time" in json.loads(lines[0])
    assert all(json.loads(l)["kind"] == "check" for l in lines[1:])


@pytest.mark.slow
def test_verify_all_is_byte_identical():
    cmd = [sys.executable, "-m", "dunkl_dihedral", "verify", "all", "--seed", "42", "--json"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    assert a.stdout == b.stdout and a.stdout
    # the plus-family vertex-zero kernel is reported as failing, so the status is 1
    assert a.returncode == b.returncode == EXIT_FAIL
