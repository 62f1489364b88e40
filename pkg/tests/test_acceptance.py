"""Acceptance gate: every verification check must pass at its tolerance.

Each test prints one PASS/FAIL line with the residual it measured, so the
suite output doubles as a numerical report.
"""

import pytest

from waveparticle.verify import CHECKS


@pytest.mark.parametrize("check", CHECKS, ids=lambda c: c.__name__)
def test_criterion(check):
    result = check()
    status = "PASS" if result.passed else "FAIL"
    line = (f"{status} {result.name} residual={result.residual:.3e} "
            f"tolerance={result.tolerance:.1e} ({result.detail})")
    print(line)
    assert result.passed, line
