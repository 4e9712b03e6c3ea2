"""The ten numbered reproduction checks at their stated tolerances.

Each check prints one PASS/FAIL line; the lines are repeated in the pytest
terminal summary so they show up without ``-s``.
"""

import pytest

from freespec import verify

SEED = 7
RESULTS: list = []


@pytest.mark.parametrize("number", range(1, len(verify.CHECKS) + 1))
def test_criterion(number):
    (result,) = verify.run_suite("paper", seed=SEED, only={number})
    RESULTS.append(result)
    print(result.line())
    assert result.passed, result.line()
