import json
import pathlib

import pytest

import scalereq

DATA = pathlib.Path(__file__).resolve().parents[2] / "data"
THIN = "\u2009"


@pytest.fixture(scope="module")
def golden():
    return scalereq.load_model(str(DATA / "open_banking.json"))


def test_golden_validates_with_warnings_only(golden):
    report = scalereq.validate(golden)
    assert report["ok"] is True
    assert report["errors"] == []
    assert len(report["warnings"]) == 3


def test_evaluation_displays(golden):
    result = scalereq.evaluate(golden)
    possible = result["scenarios"]["possible"]
    assert possible["c_a"]["value"] == 3_000_000
    assert possible["p_h"]["display"] == f"2{THIN}778"
    assert result["scenarios"]["extreme"]["p_s"]["display"] == "16.7"
    assert result["scenarios"]["extreme"]["e_t_s"]["value"] == pytest.approx(3200, rel=1e-12)
    assert result["scenarios"]["realistic"]["n_h"]["value"] is None


def test_single_scenario_and_unknown_scenario(golden):
    only = scalereq.evaluate(golden, "realistic")
    assert list(only["scenarios"]) == ["realistic"]
    with pytest.raises(scalereq.ScalereqError):
        scalereq.evaluate(golden, "pessimistic")


def test_dependency_order(golden):
    order = scalereq.dependency_order(golden)
    assert order.index("c_a") > order.index("f_a")
    assert order.index("e_s") > order.index("e_c_s")


def test_triage_and_risk(golden):
    result = scalereq.triage(golden)
    assert result["counts"] == {"critical": 3, "non_critical": 7, "pending": 0}
    cells = {(c["operation"], c["scenario"]): c["level"] for c in scalereq.risk(golden)["cells"]}
    assert [cells[("Balance", s)] for s in ("realistic", "possible", "extreme")] == ["green", "yellow", "red"]


def test_checklist_has_twelve_items(golden):
    items = scalereq.checklist(golden)["items"]
    assert len(items) == 12
    assert items[7]["status"] == "partial"


def test_report_matches_golden_file(golden):
    assert scalereq.render_report(golden) == (DATA / "open_banking_report.md").read_text(encoding="utf-8")
    assert json.loads(scalereq.render_report(golden, "json"))["triage"]["counts"]["critical"] == 3


def test_burstiness():
    assert scalereq.burstiness_from_active_hours(5) == 4.8
    assert scalereq.burstiness_from_series([500, 0, 0, 0, 0]) == 5.0
    assert scalereq.compose([("month", 1.5), ("day", 2), ("hour", 2)]) == 6.0
    with pytest.raises(scalereq.ScalereqError):
        scalereq.burstiness_from_active_hours(0)


def test_formulas():
    assert scalereq.canonical_formula("(a+b)*c") == "(a + b) * c"
    assert scalereq.formula_references("c * a * f_a") == {"c", "a", "f_a"}
    with pytest.raises(scalereq.FormulaError):
        scalereq.canonical_formula("(")


def test_strict_parsing_errors(golden):
    with pytest.raises(scalereq.ModelSyntaxError):
        scalereq.validate('{"meta": ')
    broken = dict(golden, extra=1)
    with pytest.raises(scalereq.SchemaError):
        scalereq.validate(broken)


def test_round_trip(golden):
    assert scalereq.normalize_model(golden) == golden


def test_format_fixed():
    assert scalereq.format_fixed(2777.78, 0) == f"2{THIN}778"
    assert scalereq.format_fixed(0.125, 2) == "0.13"
