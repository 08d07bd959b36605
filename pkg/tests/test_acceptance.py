"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

The checks themselves live in :mod:`harmdens.verification` so that the
``harmdens verify`` command runs exactly the same code. Run this file
directly (``python tests/test_acceptance.py``) for the bare report.
"""

import pytest

from harmdens.verification import CHECKS, run_check

REPORT = []


@pytest.mark.parametrize("number", [n for n, _, _ in CHECKS],
                         ids=[f"{n}-{name.replace(' ', '_')}" for n, name, _ in CHECKS])
def test_criterion(number):
    result = run_check(number)
    REPORT.append(result.line())
    print(result.line())
    assert result.passed, result.detail


if __name__ == "__main__":
    for n, _, _ in CHECKS:
        print(run_check(n).line())
