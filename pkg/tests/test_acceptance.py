"""Acceptance gate: one pass/fail line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are printed even
under capture) or directly with ``python3 tests/test_acceptance.py``.  All
checks are exact; runtime limits are wall-clock.
"""

from __future__ import annotations

import json
import subprocess
import sys
import time
from fractions import Fraction
from math import comb

import pytest

from weightext import selftest
from weightext.graph import PascalGraph, full_levels, path_dim
from weightext.harmonic import binomial_system
from weightext.link import kappa_dim_oracle, standard_link, weight_system
from weightext.uq import q_schur_principal

LIMITS = {1: 1.0, 2: 5.0, 8: 5.0}
SUITES = dict(enumerate(selftest.SUITES, start=1))


def _line(n: int, ok: bool, detail: str) -> str:
    return f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"


def evaluate(n: int) -> tuple[bool, str]:
    start = time.perf_counter()
    result = SUITES[n]().to_dict()
    elapsed = time.perf_counter() - start
    ok = result["passed"]
    detail = f"{result['name']}, {result['checks']} checks, {elapsed:.2f}s"
    if n in LIMITS and elapsed >= LIMITS[n]:
        ok = False
        detail += f" (limit {LIMITS[n]}s)"
    if result["failures"]:
        detail += f"; first failure: {result['failures'][0]}"
    return ok, detail


def selftest_runs(times: int = 2) -> tuple[bool, str]:
    outputs, walls = [], []
    for _ in range(times):
        start = time.perf_counter()
        proc = subprocess.run(
            [sys.executable, "-m", "weightext", "selftest"], capture_output=True, check=False
        )
        walls.append(time.perf_counter() - start)
        outputs.append(proc.stdout)
        if proc.returncode != 0:
            return False, f"selftest exited {proc.returncode}: {proc.stderr.decode()[-200:]}"
    same = all(o == outputs[0] for o in outputs)
    passed = json.loads(outputs[0])["passed"]
    ok = same and passed and max(walls) < 30
    return ok, f"byte-identical={same}, all suites passed={passed}, wall {max(walls):.2f}s (limit 30s)"


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print("\n" + _line(n, ok, detail))

    return emit


@pytest.mark.parametrize("n", range(1, 9))
def test_criterion(n, report):
    ok, detail = evaluate(n)
    report(n, ok, detail)
    assert ok, detail


def test_criterion_9_determinism(report):
    ok, detail = selftest_runs()
    report(9, ok, detail)
    assert ok, detail


# Direct spot checks against independent oracles, so the gate does not rest
# on the suites alone.


def test_collapse_oracle_spot_check():
    for name, t in selftest.standard_cases():
        w = weight_system(t, standard_link(t))
        for v in t.vertices():
            assert w.kdim[v] == path_dim(t, v), name


def test_kdim_oracle_spot_check():
    for q, t, k, w in selftest.uq_cases():
        for v in t.levels[t.top_level]:
            assert w.kdim[v] ** 2 == kappa_dim_oracle(t, k, v)
            assert w.kdim[v] == q_schur_principal(v.key, q)
        assert w.base == min(q, 1 / q)


def test_binomial_spot_check():
    t = full_levels(PascalGraph(), 8)
    nu = binomial_system(t, Fraction(1, 3))
    k = standard_link(t)
    for v in t.levels[7]:
        pushed = sum(nu(c) * k(c, v) for c in t.children(v))
        assert pushed == nu(v) == comb(7, v.key[1]) * Fraction(1, 3) ** v.key[1] * Fraction(2, 3) ** (7 - v.key[1])


if __name__ == "__main__":
    failed = 0
    for n in range(1, 9):
        ok, detail = evaluate(n)
        failed += not ok
        print(_line(n, ok, detail))
    ok, detail = selftest_runs()
    failed += not ok
    print(_line(9, ok, detail))
    sys.exit(1 if failed else 0)
