"""Acceptance criteria 1-12, one pass/fail line per criterion."""

import pytest

from splitrec import acceptance


@pytest.mark.parametrize("check", acceptance.CHECKS, ids=lambda f: f.__name__)
def test_criterion(check, capsys):
    result = check()
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail
