"""The suites must notice broken mathematics, not just pass."""

from fractions import Fraction

from weightext import selftest
from weightext.selftest import Tally, run_selftest


def test_tally_requires_checks():
    assert not Tally(0, "empty").to_dict()["passed"]
    t = Tally(1, "x")
    t.check(True, "never")
    assert t.to_dict()["passed"]
    t.check(False, lambda: "boom")
    assert t.to_dict()["failures"] == ["boom"]


def test_report_shape_and_order():
    report = run_selftest()
    assert report["passed"]
    assert [c["id"] for c in report["criteria"]] == list(range(1, 9))
    assert "time" not in str(report)


def test_parallel_run_matches_serial():
    assert run_selftest(threads=2) == run_selftest(threads=1)


def test_wrong_schur_oracle_is_caught(monkeypatch):
    monkeypatch.setattr(selftest, "q_schur_principal", lambda lam, q: Fraction(1))
    assert not selftest.suite_kdim_triple().to_dict()["passed"]


def test_wrong_grade_law_is_caught(monkeypatch):
    monkeypatch.setattr(selftest, "weight_exponent", lambda lam, inner: 0)
    assert not selftest.suite_grade_law().to_dict()["passed"]


def test_broken_harmonicity_is_caught(monkeypatch):
    real = selftest.binomial_system
    monkeypatch.setattr(selftest, "binomial_system", lambda t, p: real(t, p + Fraction(1, 100)))
    assert not selftest.suite_de_finetti().to_dict()["passed"]


def test_crashing_suite_is_reported():
    def boom():
        raise RuntimeError("kaput")

    out = selftest._run(boom)
    assert not out["passed"] and "kaput" in out["failures"][0]
