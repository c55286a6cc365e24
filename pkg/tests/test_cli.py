import io
import json
import subprocess
import sys

import pytest

from trigfib import _backend
from trigfib.cli import run


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), out=buf)
    return code, buf.getvalue()


def lines(*argv):
    code, text = call(*argv)
    assert code == 0, text
    return text.splitlines()


def test_seq_examples():
    assert lines("seq", "--kind", "fib", "--n", "10") == ["55"]
    assert lines("seq", "--kind", "pell-lucas-half", "--n", "4") == ["17"]
    assert lines("seq", "--kind", "bejaia", "--N", "9", "--ell", "2") == ["7"]
    assert lines("seq", "--kind", "pisa", "--N", "9", "--ell", "2") == ["47"]
    assert lines("seq", "--kind", "golden-power", "--n", "-2") == ["3/2-1/2*sqrt(5)"]
    assert lines("seq", "--kind", "c-constant", "--N", "2") == ["3/5*sqrt(5)"]
    assert lines("seq", "--kind", "d-constant", "--N", "5") == ["11/25*sqrt(5)"]
    assert lines("seq", "--kind", "prop2-ratio", "--m", "4", "--ell", "1") == ["1/4"]
    assert lines("seq", "--kind", "c-constant", "--N", "1", "--float") == ["2.23606797749979"]


def test_poly_examples():
    assert lines("poly", "--family", "cheb-t", "--n", "2") == ["[-1, 0, 2]"]
    assert lines("poly", "--family", "cheb-t", "--n", "2", "--eval", "3/2") == ["7/2"]
    assert lines("poly", "--family", "cheb-t", "--n", "3", "--eval", "1/2*sqrt(5)") == ["1*sqrt(5)"]
    assert lines("poly", "--family", "cheb-u", "--n", "1", "--eval", "3", "--float") == ["6"]


def test_sum_outputs():
    out = lines("sum", "--variant", "sumeq3", "--m", "1", "--x", "1")
    assert out == ["float: 1.2", "exact: 6/5"]
    out = lines("sum", "--variant", "bn1sum", "--N", "5", "--ell", "1")
    assert out[1] == "exact: 2/5" and out[0].startswith("float: 0.4")
    out = lines("sum", "--variant", "resolvent", "--m", "2", "--ell", "0", "--s", "1", "--beta", "1/2")
    assert out[0].startswith("spectral: 0.5") and out[2] == "exact: 1/2"
    out = lines("sum", "--variant", "wu", "--m", "4", "--ell", "1", "--lambda", "1.4436354751788103")
    assert [x.split(": ")[0] for x in out] == ["spectral", "closed"]
    assert float(out[1].split(": ")[1]) == pytest.approx(0.125, rel=1e-12)
    out = lines("sum", "--variant", "prop2sum", "--m", "4", "--ell", "1")
    assert out[1] == "exact: 1/8"


def test_resistance_outputs():
    out = lines("resistance", "--n", "3", "--ell", "1")
    assert out[0] == "exact: 1/3" and out[2] == "closed: 1/3"
    assert [x.split(":")[0] for x in out] == ["exact", "float", "closed", "spectral"]
    out = lines("resistance", "--n", "100", "--ell", "50", "--jumps", "1", "--route", "float")
    assert float(out[0].split(": ")[1]) == pytest.approx(25.0)
    # closed/spectral silently dropped for other jump sets under --route all
    assert len(lines("resistance", "--n", "10", "--ell", "3", "--jumps", "1")) == 2


def test_bench_csv():
    out = lines("bench", "--n", "50", "120")
    assert out[0] == "N,t_closed_ns,t_solve_ns,abs_diff"
    assert [r.split(",")[0] for r in out[1:]] == ["50", "120"]
    out = lines("bench", "--backends", "--n", "64")
    assert out[0] == "kernel,N,t_compiled_ns,t_python_ns,speedup,identical"
    assert all(r.endswith(",1") for r in out[1:])


def test_verify_json_exit_zero():
    code, text = call("verify", "--suite", "theorem1", "--n-max", "50", "--format", "json")
    assert code == 0
    doc = json.loads(text)
    assert doc["suites"][0]["suite"] == "theorem1"
    assert doc["suites"][0]["checked"] == 100 and doc["suites"][0]["failed"] == 0


def test_verify_csv_and_out_file(tmp_path):
    target = tmp_path / "r.csv"
    code, text = call("verify", "--suite", "corollary", "--n-max", "3", "--format", "csv", "--out", str(target))
    assert code == 0 and text == ""
    rows = target.read_text().splitlines()
    assert rows[0] == "suite,params,status,lhs,rhs,abs_err,note"
    assert any("EXPECTED_FAIL" in r for r in rows)


def test_verify_text_summary():
    out = lines("verify", "--suite", "theorem2", "--n-max", "5", "--format", "text")
    assert out == ["theorem2: checked=29 passed=29 failed=0 skipped=0 expected_fail=0"]


def test_verify_failure_exit_one():
    # wu at lambda = 10 drops below double precision already for small m
    code, _ = call("verify", "--suite", "wu", "--n-max", "8", "--format", "text")
    assert code == 1


@pytest.mark.parametrize("argv", [
    ["seq", "--kind", "fib"],
    ["seq", "--kind", "fib", "--n", "-1"],
    ["seq", "--kind", "nope", "--n", "1"],
    ["seq", "--kind", "fib", "--n", "1", "--bogus"],
    ["seq", "--kind", "bejaia", "--N", "4", "--ell", "1"],
    ["poly", "--family", "cheb-t", "--n", "2", "--eval", "x"],
    ["sum", "--variant", "bn1sum", "--N", "3", "--ell", "1"],
    ["sum", "--variant", "resolvent", "--m", "4", "--ell", "1", "--s", "-1"],
    ["sum", "--variant", "sumeq2", "--m", "2", "--x", "0"],
    ["resistance", "--n", "5", "--ell", "5"],
    ["resistance", "--n", "6", "--ell", "1", "--jumps", "2"],
    ["resistance", "--n", "6", "--ell", "1", "--jumps", "1", "--route", "closed"],
    ["verify", "--suite", "nope"],
    ["verify", "--n-max", "0"],
    [],
])
def test_usage_errors_exit_two(argv):
    code, _ = call(*argv)
    assert code == 2


def test_backend_flag_is_scoped():
    before = _backend.backend_name()
    assert lines("--backend", "python", "sum", "--variant", "r1sum", "--N", "3", "--ell", "1")[0] == "float: 1"
    assert _backend.backend_name() == before


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "trigfib.cli", "seq", "--kind", "lucas", "--n", "9"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "76\n"
    proc = subprocess.run(
        [sys.executable, "-m", "trigfib.cli", "seq", "--kind", "fib"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 2 and "error" in proc.stderr


def test_output_deterministic():
    a = call("verify", "--suite", "bejaia", "--n-max", "21", "--format", "csv")
    b = call("verify", "--suite", "bejaia", "--n-max", "21", "--format", "csv")
    assert a == b
