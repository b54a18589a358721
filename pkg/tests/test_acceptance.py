"""The eleven acceptance criteria, one test each, exact and zero-tolerance.

Every criterion contributes one ``cNN PASS|FAIL ...`` line to an
"acceptance criteria" section at the end of the pytest report.
"""

import pytest

from relhom import acceptance

from conftest import ACCEPTANCE_LINES

# minimum instance counts the criteria promise
MINIMUM = {"c03": 5 * 200, "c04": 50, "c07": 3 * 25}


@pytest.mark.parametrize("fn", acceptance.CRITERIA, ids=lambda f: f.__name__)
def test_criterion(fn):
    res = acceptance.run_one(fn, seed=0)
    print(res.line())
    ACCEPTANCE_LINES.append(res.line())
    assert res.passed, res.detail
    assert res.checked >= MINIMUM.get(res.cid, 1)


def test_pullback_pushout_instances_per_algebra():
    res = acceptance.run_one(acceptance.c03_pullback_pushout)
    assert all(n >= 200 for n in res.detail["per_algebra"].values())


def test_kx2_period_certificate():
    res = acceptance.run_one(acceptance.c06_dimensions)
    assert res.detail["kx2_S_period"] == 1
