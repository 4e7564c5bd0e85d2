import pytest

from algca.report import Check, Report
from algca.suites import SUITES, run_suite


@pytest.mark.parametrize("name", list(SUITES))
def test_suite_passes(name):
    report = run_suite(name)
    assert report.checks
    assert report.ok, "\n".join(c.line() for c in report.failures())
    assert all(line.startswith("CHECK ") for line in report.lines())


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")


def test_report_lines():
    r = Report()
    assert r.add("a", True, "fine")
    assert not r.add("b", False)
    assert r.lines() == ["CHECK a PASS fine", "CHECK b FAIL"]
    assert not r.ok and r.failures() == [Check("b", False, "")]
