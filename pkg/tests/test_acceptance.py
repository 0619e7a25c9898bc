"""Acceptance suite: one test per criterion, at the stated tolerances.

Each test prints a single pass/fail line (visible with -s or in captured
output) and fails on the first violated assertion inside the criterion.
Run the same checks from the command line with `liecomm verify`.
"""

import pytest

from liecomm import verify


@pytest.mark.parametrize("index", range(1, len(verify.CRITERIA) + 1))
def test_criterion(index):
    result = verify.run_criterion(index)
    status = "PASS" if result.passed else "FAIL"
    print(f"[{status}] criterion {result.index:2d} ({result.name}): {result.detail}")
    assert result.passed, f"criterion {result.index} ({result.name}): {result.detail}"
