import json

from kdirac import Check, Report
from kdirac.consts import CLIFFORD_CONVENTION, OutputFormat


def _report():
    report = Report(command="dims", k=2, n=2, normalization="1/1+0/1 i")
    report.add_rows([{"j": 0, "partition": [], "pass": True}])
    report.add_checks([Check("dims", "dim S^0 p+", True, {"degree": 0})])
    return report


def test_json_is_sorted_and_complete():
    report = _report()
    text = report.render(OutputFormat.JSON)
    assert text.endswith("}\n")
    doc = json.loads(text)
    assert list(doc) == sorted(doc)
    assert doc["pass"] is True
    assert doc["clifford_convention"] == CLIFFORD_CONVENTION
    assert doc["checks"] == [
        {"suite": "dims", "check": "dim S^0 p+", "pass": True, "degree": 0}
    ]


def test_failed_check_fails_report():
    report = _report()
    report.add_checks([Check("dims", "broken", False, {})])
    assert not report.passed
    assert report.to_dict()["pass"] is False


def test_extra_fields_are_merged():
    report = _report()
    report.extra["window"] = 3
    assert report.to_dict()["window"] == 3


def test_csv_columns_in_first_seen_order():
    report = _report()
    lines = report.render("csv").splitlines()
    assert lines[0] == "j,partition,pass,suite,check,degree"
    assert lines[1] == "0,[],true,,,"
    assert lines[2] == ",,true,dims,dim S^0 p+,0"
