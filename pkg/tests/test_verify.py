import pytest

from compdof.verify import CHECKS, SUITE_CHECKS, CheckResult, VerificationReport, run_verification


def test_all_suites_pass_with_few_trials():
    report = run_verification("all", seed=1, trials=10)
    assert [r.criterion for r in report.results] == list(range(1, 13))
    assert report.passed and report.exit_code == 0 and report.first_failure is None


def test_suites_cover_every_check():
    covered = sorted(c for name, cs in SUITE_CHECKS.items() if name != "all" for c in cs)
    assert covered == sorted(CHECKS)


def test_failure_report():
    ok = CheckResult(1, "a", True, "fine", 0.1, 1.0)
    bad = CheckResult(2, "b", False, "broken", 0.1, 1.0)
    report = VerificationReport((ok, bad))
    assert not report.passed and report.exit_code == 4 and report.first_failure is bad
    assert bad.line().startswith("[FAIL]")


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_verification("nope")
