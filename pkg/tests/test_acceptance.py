"""The eleven acceptance criteria, one test each.

Each test prints a single ``[PASS]``/``[FAIL]`` line (shown even when pytest
captures output) and then asserts on the same result.
"""

import pytest

from asep_tableaux import acceptance


@pytest.mark.parametrize(
    "index", range(1, len(acceptance.CRITERIA) + 1), ids=[name.replace(" ", "_") for name, _ in acceptance.CRITERIA]
)
def test_criterion(index, capsys):
    with capsys.disabled():
        print()
        ok = acceptance.run_one(index)
    assert ok, f"criterion {index} failed"
