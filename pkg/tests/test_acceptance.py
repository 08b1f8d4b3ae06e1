"""Acceptance gate: every shipped criterion, one verdict line each.

Each test runs one numbered acceptance criterion at its stated tolerance
and prints the same PASS/FAIL line the ``jclaser accept`` command emits.
A failing test here means the measured physics does not meet the pinned
tolerance; the measured values in the printed line say by how much.
"""

import pytest

from jclaser import acceptance


@pytest.mark.parametrize("number", acceptance.criterion_names())
def test_criterion(number, capsys):
    result = acceptance.run_criterion(number)
    line = acceptance.format_line(number, result)
    with capsys.disabled():
        print(flush=True)
        print(line, flush=True)
    assert result.passed, line


def test_suites_cover_every_criterion():
    covered = sorted(
        number for members in acceptance.SUITES.values() for number in members
    )
    assert covered == list(acceptance.criterion_names())


def test_suite_selection():
    results = acceptance.run_suite("oracle-equivalence")
    assert [number for number, _ in results] == [6, 9]
    with pytest.raises(ValueError):
        acceptance.run_suite("everything")
