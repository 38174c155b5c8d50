"""Acceptance suite: one test per criterion, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the summary lines.
"""
import time

import pytest

from infdex.testfn import QuadratureConfig
from infdex.verify import ACCEPTANCE, DEFAULT_TOL, run_suite

SEED = 0
CFG = QuadratureConfig(samples=100_000, seed=SEED)
# wall-clock bounds in seconds, keyed by criterion number
RUNTIME = {"1": 60.0, "2": 30.0}
VERIFY_ALL_BUDGET = 300.0


def report(label, passed, detail):
    print(f"{'PASS' if passed else 'FAIL'} criterion {label}: {detail}", flush=True)


@pytest.mark.slow
@pytest.mark.parametrize("label,check", ACCEPTANCE, ids=[name.split(" ", 1)[1].replace(" ", "-") for name, _ in ACCEPTANCE])
def test_criterion(label, check):
    num = label.split(" ", 1)[0]
    t0 = time.perf_counter()
    result = check(SEED, CFG, DEFAULT_TOL)
    elapsed = time.perf_counter() - t0
    within = elapsed < RUNTIME.get(num, float("inf"))
    detail = f"{result.detail} ({elapsed:.1f}s)"
    if num == "10":
        t1 = time.perf_counter()
        everything = run_suite("all", seed=SEED)
        total = time.perf_counter() - t1
        all_green = all(r.passed for r in everything)
        within = within and total <= VERIFY_ALL_BUDGET
        detail += f"; verify all {'green' if all_green else 'red'} in {total:.1f}s"
        result_ok = result.passed and all_green
    else:
        result_ok = result.passed
    report(label, result_ok and within, detail)
    assert result_ok, result.detail
    assert within, f"runtime {elapsed:.1f}s over budget"
