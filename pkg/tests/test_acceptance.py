"""All thirteen acceptance criteria at eps = 1e-9, one pass/fail line each.

The lines are collected in ``conftest.ACCEPTANCE_LINES`` and printed in an
"acceptance criteria" section at the end of the run.
"""

from __future__ import annotations

import pytest

from conftest import ACCEPTANCE_LINES
from daggerlab.acceptance import CRITERIA, run_criterion

EPS = 1e-9
SEED = 0


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion-{c[0]:02d}" for c in CRITERIA])
def test_criterion(number):
    result = run_criterion(number, EPS, SEED)
    line = result.line()
    ACCEPTANCE_LINES[number] = line
    print(line)
    failing = [c for c in result.checks if not c.passed]
    assert result.passed, "\n".join(f"{c.name}: residual {c.residual!r} {c.note}" for c in failing)


def test_every_criterion_is_registered():
    assert [c[0] for c in CRITERIA] == list(range(1, 14))
