"""Every verification check at its stated tolerance, one line per check.

The lines are repeated in the terminal summary, so a plain ``pytest -v``
run shows each criterion's outcome and detail.
"""

import pytest

from weierquartic import acceptance

LINES: list[str] = []


@pytest.fixture(scope="module")
def settings():
    return acceptance.Settings()


@pytest.mark.parametrize("name", list(acceptance.CHECKS))
def test_check(name, settings):
    res = acceptance.run_check(name, settings)
    LINES.append(res.line())
    print(res.line())
    assert res.passed, res.line()
