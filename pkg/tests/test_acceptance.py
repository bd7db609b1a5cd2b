"""Acceptance criteria 1-11, one test each, printing a PASS/FAIL line per criterion.

Run alone with ``pytest tests/test_acceptance.py -v``; the lines appear in the
output even when pytest captures stdout.
"""

from __future__ import annotations

import pytest

from semiplanar.verify import CHECKS, Context, run_check


@pytest.fixture(scope="module")
def ctx() -> Context:
    # shared so that the n <= 8 census is computed once for criteria 5, 6, 8 and 9
    return Context()


@pytest.mark.parametrize("check", CHECKS, ids=[f"criterion-{c.criterion:02d}-{c.name}" for c in CHECKS])
def test_acceptance_criterion(check, ctx, capsys):
    result = run_check(check, ctx)
    with capsys.disabled():
        print(f"\ncriterion {check.criterion:2d} {result.line()}")
    assert result.passed, result.detail
