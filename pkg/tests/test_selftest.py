import pytest

from emi.errors import EmiError
from emi.pi_suite import REFERENCE_PI, ReferencePi
from emi.selftest import GroupResult, group_names, run_selftest


def test_group_names():
    assert group_names() == ["closed-form", "exactness", "odd-collapse", "reference-pi"]


def test_default_run_all_groups_pass():
    results = run_selftest()
    assert [r.name for r in results] == group_names()
    assert all(r.passed for r in results)
    assert all(r.cases > 0 for r in results)


def test_single_group_filter():
    results = run_selftest(["exactness"])
    assert len(results) == 1
    assert results[0].name == "exactness"
    assert results[0].passed


def test_corrupted_reference_fails_with_counterexample():
    # negative control: flip one digit inside the checked prefix
    corrupted = "9" + REFERENCE_PI.digits[1:]
    results = run_selftest(["reference-pi"], reference=ReferencePi(corrupted))
    assert not results[0].passed
    assert "digit 1" in results[0].first_failure


def test_corruption_beyond_prefix_is_not_this_groups_job():
    tail_corrupted = REFERENCE_PI.digits[:-1] + "0"
    results = run_selftest(["reference-pi"], reference=ReferencePi(tail_corrupted))
    assert results[0].passed  # prefix check only; full check lives in the tests


def test_unknown_group_rejected():
    with pytest.raises(EmiError):
        run_selftest(["frobnication"])
