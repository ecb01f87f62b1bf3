import pytest

from leptin.verify import SUITES, run_suite


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_small_run(name):
    rep = run_suite(name, 4, seed=11)
    assert rep.passed, rep.first_failure
    assert rep.cases == 4 and rep.checks > 0


def test_reports_repeat_per_seed():
    a = run_suite("packing", 6, seed=2).to_json()
    b = run_suite("packing", 6, seed=2).to_json()
    assert a == b


def test_parallel_matches_serial():
    assert run_suite("sum-identity", 6, 5, jobs=2).to_json() == run_suite("sum-identity", 6, 5, jobs=1).to_json()
