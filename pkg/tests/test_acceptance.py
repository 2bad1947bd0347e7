"""One test per acceptance criterion; each prints a single pass/fail line."""
import pytest

from mvaskey.acceptance import Setup, criterion_1, criterion_7, criterion_11, run

from conftest import ACCEPTANCE_LINES


@pytest.fixture(scope="module")
def setup():
    return Setup(seed=0)


@pytest.mark.parametrize("k", range(1, 13))
def test_criterion(setup, k, capsys):
    res = run(k, setup)
    ACCEPTANCE_LINES.append(res.line())
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, res.detail


def test_mutation_is_seen_by_each_check(setup):
    # spot check that the three criteria individually fail on a mutated coefficient
    m = setup.mutated((1, 1), (1, 0))
    for crit in (criterion_1, criterion_7, criterion_11):
        res = crit(m, (1, 1), True)
        assert not res.passed, res.number
    assert criterion_1(setup).passed


def test_constant_mutation_only_breaks_recurrence(setup):
    m = setup.mutated((0, 0), (0, 0))
    assert criterion_1(m, (0, 0), True).passed
    assert criterion_11(m, (0, 0), True).passed
    assert not criterion_7(m, (0, 0), True).passed
