"""Numbered acceptance criteria.

Each test runs one criterion and prints its verdict line.  The lines are also
collected and shown in a terminal summary section so they appear in ordinary
``pytest -v`` output.  Run this file directly to print just the lines.
"""

import sys

import pytest

from suboplex import acceptance

LINES: dict[int, str] = {}

SLOW = {3, 7, 9, 11}


def _params():
    for num, title, *_ in acceptance.CRITERIA:
        marks = [pytest.mark.slow] if num in SLOW else []
        yield pytest.param(num, id=f"criterion-{num:02d}-{title.replace(' ', '-')}", marks=marks)


@pytest.mark.parametrize("number", list(_params()))
def test_criterion(number):
    res = acceptance.run_criterion(number)
    LINES[number] = res.line()
    print(res.line())
    assert res.passed, res.line()


if __name__ == "__main__":
    results = acceptance.run_all()
    for r in results:
        print(r.line())
    sys.exit(0 if all(r.passed for r in results) else 1)
