"""One pass/fail line per acceptance criterion.

Run directly (``python tests/test_acceptance.py``) for the report alone, or
through pytest, where each criterion is its own test and the line is printed
even when output capture is on.
"""

import sys

import pytest

from aperiodica import verify


@pytest.mark.parametrize("check", verify.CHECKS, ids=lambda c: c.__name__.removeprefix("check_"))
def test_criterion(check, capsys):
    result = check()
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail


if __name__ == "__main__":
    results = verify.run_all()
    for r in results:
        print(r.line())
    sys.exit(0 if all(r.passed for r in results) else 1)
