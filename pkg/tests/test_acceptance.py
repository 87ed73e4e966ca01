"""Acceptance suite: one test per criterion, each printing its pass/fail line.

The checks themselves live in pulsebeam.verification so that the CLI
`verify` subcommand and this module exercise the exact same code.
"""

import pytest

from pulsebeam.verification import ACCEPTANCE_CHECKS


@pytest.mark.parametrize(
    "ident,name,func", ACCEPTANCE_CHECKS, ids=[f"{i}-{n}" for i, n, _ in ACCEPTANCE_CHECKS]
)
def test_acceptance_criterion(ident, name, func):
    result = func()
    flag = "PASS" if result.passed else "FAIL"
    print(f"[{result.ident:>2}] {result.name}: {flag} ({result.detail})")
    assert result.passed, f"criterion {ident} ({name}) failed: {result.detail}"
