import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from halfweyl import records
from halfweyl.cli import main


def run(*args):
    out = io.StringIO()
    code = main(list(args), out=out)
    return code, out.getvalue()


def run_proc(*args):
    return subprocess.run([sys.executable, "-m", "halfweyl", *args], capture_output=True, text=True)


def parse_lines(text):
    return [json.loads(line) for line in text.splitlines()]


def test_eval_n1_at_i():
    code, text = run("eval", "--n", "1", "--extension", "friedrichs", "--lambda-re", "0", "--lambda-im", "1")
    assert code == 0
    (rec,) = parse_lines(text)
    assert rec["matrix"]["re"][0][0] == pytest.approx(-math.sqrt(0.5), abs=1e-15)
    assert rec["matrix"]["im"][0][0] == pytest.approx(math.sqrt(0.5), abs=1e-15)
    assert rec["meta"]["branch_convention"] == "arg(-lambda) in (-pi, 0)"
    assert rec["input"] == {"lambda": {"re": 0, "im": 1}}


def test_eval_boundary_negative_is_real():
    code, text = run("eval", "--n", "2", "--extension", "friedrichs", "--x", "-1")
    (rec,) = parse_lines(text)
    assert "im" not in rec["matrix"]
    assert rec["matrix"]["re"][0][0] == pytest.approx(-math.sqrt(2), rel=1e-15)


def test_eval_oracle_method_agrees():
    args = ["eval", "--n", "3", "--extension", "krein", "--lambda-re", "0.5", "-2", "--lambda-im", "1", "0.25"]
    _, closed = run(*args)
    _, oracle = run(*args, "--method", "oracle")
    for a, b in zip(parse_lines(closed), parse_lines(oracle)):
        np.testing.assert_allclose(records.record_matrix(a), records.record_matrix(b), rtol=1e-10)


@pytest.mark.parametrize("args", [
    ["eval", "--n", "1", "--extension", "krein", "--x", "0"],
    ["eval", "--n", "1", "--extension", "krein", "--lambda-re", "1", "--lambda-im", "0"],
    ["eval", "--n", "1", "--extension", "krein", "--lambda-re", "1", "--lambda-im", "-1"],
    ["eval", "--n", "1", "--extension", "krein"],
    ["eval", "--n", "1", "--extension", "krein", "--x", "1", "--lambda-re", "1", "--lambda-im", "1"],
    ["eval", "--n", "1", "--extension", "krein", "--x", "1", "--method", "oracle"],
    ["eval", "--n", "0", "--extension", "krein", "--x", "1"],
    ["eval", "--n", "65", "--extension", "krein", "--x", "1"],
    ["eval", "--n", "2", "--extension", "neumann", "--x", "1"],
    ["sigma", "--n", "2", "--extension", "krein", "--t-start", "2", "--t-end", "1", "--steps", "3"],
    ["sigma", "--n", "2", "--extension", "krein", "--t", "1", "--t-start", "0"],
    ["sigma", "--n", "2", "--extension", "krein", "--t", "1", "--method", "stieltjes", "--nodes", "1"],
    ["table", "--n", "2", "--extension", "krein", "--t-start", "0", "--t-end", "1"],
    ["verify", "--checks", "nonexistent"],
    ["verify", "--tol-scale", "0"],
    ["constants"],
])
def test_usage_errors_exit_2(args):
    with pytest.raises(SystemExit) as exc:
        main(args, out=io.StringIO())
    assert exc.value.code == 2


def test_krein_zero_message_via_subprocess():
    proc = run_proc("eval", "--n", "1", "--extension", "krein", "--x", "0")
    assert proc.returncode == 2
    assert "singular" in proc.stderr


def test_sigma_examples():
    _, text = run("sigma", "--n", "1", "--extension", "friedrichs", "--t", "1")
    (rec,) = parse_lines(text)
    assert rec["matrix"]["re"] == [[0.2122065907891938]]
    _, text = run("sigma", "--n", "2", "--extension", "friedrichs", "--t", "1")
    m = np.array(parse_lines(text)[0]["matrix"]["re"]) * math.pi
    np.testing.assert_allclose(m, [[0.8, 2 / 3], [2 / 3, 4 / 7]], rtol=1e-14)
    _, text = run("sigma", "--n", "1", "--extension", "krein", "--t", "-1")
    assert parse_lines(text)[0]["matrix"]["re"] == [[0.0]]


def test_sigma_methods_agree():
    base = ["sigma", "--n", "3", "--extension", "krein", "--t", "0.1", "1", "10"]
    _, closed = run(*base)
    _, numeric = run(*base, "--method", "stieltjes")
    for a, b in zip(parse_lines(closed), parse_lines(numeric)):
        ma, mb = records.record_matrix(a), records.record_matrix(b)
        assert np.linalg.norm(ma - mb) <= 1e-8 * (1 + np.linalg.norm(ma))


def test_table_csv_schema_and_order():
    code, text = run("table", "--n", "2", "--extension", "friedrichs", "--t-start", "0", "--t-end", "2", "--steps", "3")
    assert code == 0
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["n", "extension", "input_kind", "input_re", "input_im", "j", "k", "value_re", "value_im"]
    assert len(rows) == 1 + 3 * 4
    assert [(r[3], r[5], r[6]) for r in rows[1:5]] == [("0", "0", "0"), ("0", "0", "1"), ("0", "1", "0"), ("0", "1", "1")]
    assert float(rows[-1][3]) == 2.0


def test_eval_csv_lambda_input():
    _, text = run("eval", "--n", "1", "--extension", "krein", "--lambda-re", "0", "--lambda-im", "1", "--format", "csv")
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[1][:5] == ["1", "krein", "lambda", "0", "1"]
    assert complex(float(rows[1][7]), float(rows[1][8])) == pytest.approx(complex(math.sqrt(0.5), math.sqrt(0.5)), abs=1e-15)


def test_constants():
    _, text = run("constants", "--n", "1")
    rec = json.loads(text)
    assert rec["C"] == [1] and rec["A"] == [1]
    _, text = run("constants", "--n", "3")
    assert json.loads(text)["C"][1] == pytest.approx(1.7320508, rel=1e-7)
    _, text = run("constants", "--n", "2", "--format", "csv")
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["n", "j", "C", "A"]
    assert float(rows[1][3]) == pytest.approx(2 ** 0.25, rel=1e-15)
    assert float(rows[2][3]) == pytest.approx(1.1892, rel=1e-4)


def test_verify_exit_codes():
    code, text = run("verify", "--n-max", "1")
    assert code == 0
    assert all(r["passed"] for r in parse_lines(text))
    code, text = run("verify", "--n-max", "8", "--checks", "oracle_agreement")
    assert code == 0
    assert [r["check"] for r in parse_lines(text)] == ["oracle_agreement[friedrichs]", "oracle_agreement[krein]"]
    code, _ = run("verify", "--n-max", "2", "--checks", "finite_y_validation", "--tol-scale", "1e-6")
    assert code == 1


def test_verify_csv():
    code, text = run("verify", "--n-max", "2", "--checks", "curious_identity,left_tail", "--format", "csv")
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0][:3] == ["check", "passed", "worst_residual"]
    assert [r[0] for r in rows[1:]] == ["curious_identity", "left_tail[friedrichs]", "left_tail[krein]"]
    assert json.loads(rows[1][6])["n"] in (1, 2)
    assert rows[1][1] == "true"


def test_json_round_trip_exact():
    _, text = run("eval", "--n", "4", "--extension", "friedrichs", "--lambda-re", "0.3", "--lambda-im", "0.7")
    rec = parse_lines(text)[0]
    assert records.dumps(rec) + "\n" == text
    from halfweyl.weyl import weyl_closed_form
    np.testing.assert_array_equal(records.record_matrix(rec), weyl_closed_form(4, "f", complex(0.3, 0.7)))


def test_byte_identical_across_processes():
    args = ("table", "--n", "3", "--extension", "krein", "--t-start", "0", "--t-end", "5", "--steps", "7",
            "--method", "stieltjes")
    a, b = run_proc(*args), run_proc(*args)
    assert a.returncode == 0 and a.stdout == b.stdout and a.stdout


def test_fmt_float_17_digits():
    assert records.fmt_float(0.1) == "0.10000000000000001"
    with pytest.raises(ValueError):
        records.fmt_float(float("nan"))
