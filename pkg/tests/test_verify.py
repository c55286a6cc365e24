import csv
import io
import json
from fractions import Fraction

import pytest

from trigfib import verify as V
from trigfib.verify import CaseResult, Status, VerifyReport, emit_report


def find(report, **params):
    hits = [c for c in report.cases if all(c.params.get(k) == v for k, v in params.items())]
    assert hits, f"no case with {params}"
    return hits


def one(report, **params):
    (c,) = find(report, **params)
    return c


def test_theorem1_counts():
    r = V.verify_theorem1(1)
    assert len(r.cases) == 2 and r.ok
    r = V.verify_theorem1(50)
    assert len(r.cases) == 100 and r.ok


def test_theorem1_instance_at_one():
    # n = 2 at x = 1 on both sides of F1, as a sanity check of the sides' meaning
    from trigfib.polyfam import cheb_t, cheb_u, eval_rational, fib_poly, lucas_poly

    lhs = Fraction(eval_rational(lucas_poly(2), 2)) / (4 * 1 * 2 * eval_rational(fib_poly(2), 2))
    rhs = eval_rational(cheb_u(1), 3) / (eval_rational(cheb_t(2), 3) - 1)
    assert lhs == rhs == Fraction(3, 8)


def test_corollary_printed_and_corrected():
    r = V.verify_cheb_nesting_corollary(3)
    printed = one(r, form="printed", n=1)
    assert printed.status is Status.EXPECTED_FAIL
    # residual -3x(x^2-1) in ascending coefficients
    assert printed.lhs == "[0, 3, 0, -3]"
    for n in (1, 2, 3):
        assert one(r, form="corrected", n=n).status is Status.PASS
    assert r.ok


def test_theorem2_spots():
    r = V.verify_theorem2(3)
    assert r.ok
    assert one(r, check="newid1", N=1, ell=0).lhs == "0"
    assert one(r, check="newid1", N=2, ell=1).lhs == "2"
    assert one(r, check="newid1", N=3, ell=1).lhs == "1"
    lhs, rhs = V.theorem2_sides(2, 1)
    assert lhs == 2 and rhs == 2


def test_special_values_examples():
    r = V.verify_special_values(3)
    assert r.ok
    assert one(r, eq="CFL1-T", n=3).lhs == "9"
    assert one(r, eq="CFL2-U", n=1).lhs == "7"
    assert one(r, eq="PPL-F", form="printed", n=1).status is Status.EXPECTED_FAIL
    assert one(r, eq="PPL-F", form="corrected", n=1).status is Status.PASS


def test_corollary_sums_examples():
    r = V.verify_corollary_sums(1)
    assert r.ok
    c = one(r, eq="sumeq3", m=1, x="1")
    assert c.note == "exact 6/5" and c.abs_err is not None
    assert one(r, eq="sumeq2", m=1, x="1").note == "exact 3/2"
    assert one(r, eq="sumeq4", m=1, x="1").note == "exact 3/2"
    assert all(c.abs_err is not None for c in r.cases)


def test_corollary_sums_rejects_nonpositive_x():
    with pytest.raises(ValueError):
        V.verify_corollary_sums(2, [Fraction(0)])


def test_integer_identity_examples():
    r = V.verify_integer_identities(1)
    assert r.ok
    assert one(r, eq="eq3", m=1).lhs == "48"
    assert one(r, eq="eq6", m=1).lhs == "6"
    assert one(r, eq="sum4", m=1).rhs == "1.2"
    r = V.verify_integer_identities(60)
    assert r.ok


def test_prop2_examples():
    r = V.verify_prop2(6)
    assert r.ok
    printed = one(r, form="prop2", case="i", check="printed-index", m=4, ell=1)
    assert printed.status is Status.EXPECTED_FAIL
    assert (printed.lhs, printed.rhs) == ("1/8", "1/4")
    assert one(r, form="prop2", case="i", check="corrected-index", m=4, ell=1).status is Status.PASS
    iv = one(r, form="prop2", case="iv-b", m=5, ell=2)
    assert iv.status is Status.PASS
    # m = 2 mod 4 with ell odd: printed case iv-a does not hold
    assert one(r, form="prop2", case="iv-a", m=6, ell=1).status is Status.EXPECTED_FAIL
    assert one(r, form="prop2", case="iv-a", m=5, ell=1).status is Status.PASS
    breakdown = V.prop2_breakdown(r)
    assert breakdown


def test_roots_examples():
    r = V.verify_roots(10)
    assert r.ok
    c = one(r, family="fib", n=4)
    assert c.note.startswith("k=1, deg g=1")
    assert one(r, family="lucas", n=2).note.startswith("k=0, deg g=1")
    assert one(r, family="fib", n=2).note.startswith("k=1, deg g=0")


def test_bejaia_examples():
    r = V.verify_bejaia([5, 7])
    assert r.ok
    assert one(r, check="bn1-exact", N=5, ell=1).lhs == "2/5"
    assert one(r, check="bn1-exact", N=5, ell=2).lhs == "3/5"
    assert one(r, check="identity", N=9, ell=0).lhs == "0"
    with pytest.raises(ValueError):
        V.verify_bejaia([6])
    with pytest.raises(ValueError):
        V.verify_bejaia([3])
    assert V.bn1_rhs(5, 1) == Fraction(2, 5)


def test_examples_suites():
    e1 = V.verify_example1()
    assert e1.ok and len(find(e1, N=9)) == 15
    e2 = V.verify_example2()
    assert e2.ok
    assert any(c.status is Status.EXPECTED_FAIL for c in e2.cases)


def test_resistance_examples():
    r = V.verify_resistance(6, 30, dense_sample=())
    assert r.ok
    assert one(r, route="exact-vs-closed", N=3, ell=1).lhs == "1/3"
    assert one(r, route="exact-vs-closed", N=2, ell=1).lhs == "1/2"
    assert one(r, route="exact-vs-closed", N=5, ell=0).lhs == "0"
    for c in find(r, route="spectral-vs-closed"):
        assert c.abs_err is not None and c.abs_err <= 1e-9


def _floor(case):
    return float(case.note.split("floor=", 1)[1].split(",")[0])


def test_resolvent_small():
    assert V.verify_resolvent(40).ok


def test_wu_failures_only_below_double_precision():
    # the spectral sum cannot resolve values below eps * (largest term);
    # each row records that floor, and only rows with floor > tol may fail
    rep = V.verify_wu(64)
    for c in rep.cases:
        if c.status is Status.FAIL:
            assert _floor(c) > V.DEFAULT_TOL
        elif _floor(c) <= V.DEFAULT_TOL:
            assert c.status is Status.PASS
    for lam in ("0.1", "1", "3logphi"):
        assert all(c.status is Status.PASS for c in find(rep, **{"lambda": lam}) if c.params["m"] <= 16)


def test_emit_empty_json():
    assert emit_report(VerifyReport(), "json") == b'{"suites":[]}'


def test_emit_schema():
    rep = VerifyReport()
    rep.add(CaseResult("demo", {"n": 1}, Status.PASS, "1", "1"))
    rep.add(CaseResult("demo", {"n": 2}, Status.FAIL, "0.5", "0.25", 0.25, "x"))
    rep.add(CaseResult("demo", {"n": 3}, Status.SKIP, note="reason"))
    doc = json.loads(emit_report(rep, "json"))
    (suite,) = doc["suites"]
    assert (suite["checked"], suite["passed"], suite["failed"], suite["skipped"]) == (3, 1, 1, 1)
    rec = suite["cases"][0]
    assert set(rec) == {"suite", "params", "status", "lhs", "rhs", "abs_err", "note"}
    assert rec["status"] == "PASS" and rec["abs_err"] is None
    assert suite["cases"][1]["abs_err"] == 0.25


def test_emit_nonfinite_abs_err_is_null():
    rep = VerifyReport([CaseResult("demo", {}, Status.FAIL, "inf", "1", float("inf"))])
    assert json.loads(emit_report(rep))["suites"][0]["cases"][0]["abs_err"] is None


def test_emit_csv():
    rep = V.verify_theorem1(2)
    text = emit_report(rep, "csv").decode()
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["suite", "params", "status", "lhs", "rhs", "abs_err", "note"]
    assert rows[1][:3] == ["theorem1", "eq=F1;n=1", "PASS"]
    assert len(rows) == 1 + 4
    with pytest.raises(ValueError):
        emit_report(rep, "xml")


def test_reports_deterministic():
    for name in ("theorem2", "corollary-sums", "prop2", "roots", "resolvent"):
        a = emit_report(V.run_suite(name, 12), "json")
        b = emit_report(V.run_suite(name, 12), "json")
        assert a == b


def test_jobs_do_not_change_output():
    names = ["theorem1", "corollary", "integer-ids", "bejaia"]
    serial = emit_report(V.run_suites(names, 9, jobs=1), "csv")
    parallel = emit_report(V.run_suites(names, 9, jobs=3), "csv")
    assert serial == parallel


def test_run_suites_unknown():
    with pytest.raises(KeyError):
        V.run_suites(["nope"])


def test_every_suite_runs_small():
    rep = V.run_suites(list(V.SUITE_NAMES), 8)
    assert set(rep.suites()) == set(V.SUITE_NAMES)
    bad = [c for c in rep.failures() if c.suite != "wu"]
    assert not bad, bad[:3]


def test_failure_records_carry_both_sides():
    rep = V.run_suites(["corollary", "prop2"], 12)
    for c in rep.cases:
        if c.status in (Status.FAIL, Status.EXPECTED_FAIL):
            assert c.lhs and c.rhs


def test_rel_close():
    assert V.rel_close(1.0, 1.0 + 1e-12, 1e-10)
    assert not V.rel_close(1.0, 1.1, 1e-10)
    assert V.rel_close(1e-12, 0.0, 1e-10)
    assert not V.rel_close(float("nan"), 1.0, 1e-10)


def test_format_summary():
    text = V.format_summary(V.verify_theorem1(3))
    assert text == "theorem1: checked=6 passed=6 failed=0 skipped=0 expected_fail=0"
