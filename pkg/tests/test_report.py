from qumod.report import LawReport, LawResult


def test_result_lines():
    assert LawResult("unit law", True, None).line() == "PASS unit law"
    assert LawResult("unit law", False, "x=3").line() == "FAIL unit law: x=3"


def test_report_accumulates():
    rep = LawReport()
    rep.record("first")
    rep.record("second", "y=1 z=2")
    assert not rep.ok
    assert [r.law for r in rep.failures] == ["second"]
    assert rep.lines() == ["PASS first", "FAIL second: y=1 z=2"]
    assert str(rep) == "PASS first\nFAIL second: y=1 z=2"


def test_report_extend():
    a = LawReport()
    a.record("one")
    b = LawReport()
    b.record("two")
    a.extend(b)
    assert a.ok and len(a.results) == 2
