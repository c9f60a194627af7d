"""Acceptance suite: every criterion at its stated tolerance and budget.

Each test prints one PASS/FAIL line; `recipgas paper-suite` runs the same
checks from the command line.
"""

import time

import pytest

from recipgas.accept import ALL_CRITERIA

BUDGET_SECONDS = {
    "1": 5, "2": 5, "3": 5, "4": 60, "5": 120,
    "6": 120, "7": 30, "8": 30, "9": 10, "10": 10,
}


@pytest.mark.parametrize("num, fn", ALL_CRITERIA, ids=[n for n, _ in
                                                       ALL_CRITERIA])
def test_criterion(num, fn, capsys):
    start = time.monotonic()
    report = fn()
    elapsed = time.monotonic() - start
    with capsys.disabled():
        print("\n%-4s criterion %-2s (%5.2fs)  %s"
              % (report.verdict, num, elapsed, report.title))
    assert report.passed, report.to_text()
    assert elapsed < BUDGET_SECONDS[num], (
        "criterion %s exceeded its %ds budget: %.1fs"
        % (num, BUDGET_SECONDS[num], elapsed))
