import json

import pytest

from pwmirror import fixtures, scenario
from pwmirror.scenario import ParseError, Report, Task, TaskOutcome, ValidationError

SHIPPED = sorted(p for p in fixtures.all_scenarios() if not p.startswith(("failures/", "stretch/")))


def test_shipped_files_match_generator():
    for rel, text in fixtures.all_scenarios().items():
        assert (fixtures.DATA_DIR / rel).read_text(encoding="utf-8") == text, rel


def test_torus_scenario_has_three_tasks(scenario_path):
    sc = scenario.load(scenario_path("torus.json"))
    assert [t.op for t in sc.tasks] == ["pw_polynomial", "mirror", "oracle_compare"]
    assert sc.meta["n"] == 2


@pytest.mark.parametrize("rel", SHIPPED)
def test_shipped_scenarios_pass(scenario_path, rel):
    report = scenario.run(scenario.load(scenario_path(rel)))
    assert report.ok, scenario.emit(report)


def test_truncated_file_is_a_parse_error(scenario_path):
    with pytest.raises(ParseError):
        scenario.load(scenario_path("failures/truncated.json"))


def test_missing_file_is_a_parse_error(tmp_path):
    with pytest.raises(ParseError):
        scenario.load(tmp_path / "absent.json")


def test_shape_mismatch_names_its_block(scenario_path):
    with pytest.raises(ValidationError) as info:
        scenario.load(scenario_path("failures/shape_mismatch.json"))
    assert info.value.path == "$.data.strata.p1.gysin[0].matrix"


def test_corrupt_gysin_rejected_on_load(scenario_path):
    with pytest.raises(ValidationError, match="NotAComplex"):
        scenario.load(scenario_path("failures/corrupt_gysin.json"))


@pytest.mark.parametrize(
    "doc, path",
    [
        ({"tasks": [{"name": "x", "op": "pw_polynomial", "table": "nope"}]}, "$.tasks[0].table"),
        ({"tasks": [{"name": "x", "op": "frobnicate"}]}, "$.tasks[0].op"),
        ({"data": {"widgets": {}}}, "$.data"),
        ({"data": {"tables": {"t": {"kind": "mixed", "n": 1, "entries": [{"s": 1, "p": 0, "w": 0, "dim": 1}]}}}},
         "$.data.tables.t"),
        ({"data": {"lg_specs": {"s": {"n": 2, "degrees": [1, 1]}}}}, "$.data.lg_specs.s"),
        ({"tasks": [{"name": "x", "op": "discriminant", "spec": "a"}]}, "$.tasks[0].spec"),
    ],
)
def test_validation_errors_carry_paths(doc, path):
    with pytest.raises(ValidationError) as info:
        scenario.loads(json.dumps(doc))
    assert info.value.path == path


def test_duplicate_task_names_rejected():
    doc = {"data": {"lg_specs": {"s": {"n": 2, "degrees": [2, 1]}}},
           "tasks": [{"name": "x", "op": "discriminant", "spec": "s"}] * 2}
    with pytest.raises(ValidationError, match="duplicate"):
        scenario.loads(json.dumps(doc))


def test_strict_validation_rejects_raw_tables(scenario_path):
    scenario.load(scenario_path("del_pezzo.json"))
    with pytest.raises(ValidationError, match="raw"):
        scenario.load(scenario_path("del_pezzo.json"), strict=True)


def test_tasks_are_isolated():
    doc = {
        "data": {"tables": {"U": {"kind": "mixed", "n": 1, "entries": [{"s": 0, "p": 0, "w": 0, "dim": 1}]}},
                 "lg_specs": {"s": {"n": 2, "degrees": [2, 1]}}},
        "tasks": [
            {"name": "bad-rule", "op": "assemble_pw", "table": "U", "rule": "nonsense"},
            {"name": "ok", "op": "discriminant", "spec": "s", "variant": "two_component"},
        ],
    }
    report = scenario.run(scenario.loads(json.dumps(doc)))
    assert [o.status for o in report.outcomes] == ["fail", "pass"]
    assert "ValueError" in report.outcomes[0].summary


def test_refused_status(scenario_path):
    report = scenario.run(scenario.load(scenario_path("failures/elliptic_refusal.json")))
    assert report.counts == {"pass": 0, "fail": 0, "refused": 1}
    assert report.outcomes[0].result["witness"] == "E"


@pytest.mark.parametrize(
    "rel",
    sorted(p for p in fixtures.all_scenarios() if p.startswith("failures/")
           and p not in ("failures/truncated.json", "failures/shape_mismatch.json", "failures/corrupt_gysin.json")),
)
def test_failure_fixtures_fail(scenario_path, rel):
    report = scenario.run(scenario.load(scenario_path(rel)))
    assert not report.ok
    assert all(o.details for o in report.outcomes if o.status != "pass")


def test_empty_report_is_header_only():
    text = scenario.emit(Report("empty"))
    assert text == "scenario: empty\ntasks: 0  pass: 0  fail: 0  refused: 0\n"


def test_torus_text_report_shows_closed_form(scenario_path):
    text = scenario.emit(scenario.run(scenario.load(scenario_path("torus.json"))))
    assert "(u*t*w+p)^2" in text
    assert "[PASS] self-mirror (mirror): residual 0" in text


def test_json_report_round_trips(scenario_path):
    report = scenario.run(scenario.load(scenario_path("mirror_checks.json")))
    text = scenario.emit(report, "json")
    parsed = json.loads(text)
    assert parsed == report.to_dict()
    rebuilt = Report(parsed["scenario"], [TaskOutcome(**o) for o in parsed["tasks"]])
    assert scenario.emit(rebuilt, "json") == text


def test_reports_are_byte_identical(scenario_path):
    for rel in ("torus.json", "nc_curves.json", "kkp_hodge_tate.json"):
        for fmt in ("text", "json"):
            first, second = (scenario.emit(scenario.run(scenario.load(scenario_path(rel))), fmt) for _ in range(2))
            assert first.encode() == second.encode()


def test_timings_only_on_request(scenario_path):
    report = scenario.run(scenario.load(scenario_path("torus.json")))
    assert "elapsed_ms" not in scenario.emit(report, "json")
    assert "elapsed_ms" in scenario.emit(report, "json", timings=True)


def test_op_filter_and_single_task(scenario_path):
    sc = scenario.load(scenario_path("torus.json"))
    assert [o.name for o in scenario.run(sc, ops={"mirror"}).outcomes] == ["self-mirror"]
    assert [o.name for o in scenario.run(sc, only="flag-vs-cech").outcomes] == ["flag-vs-cech"]


def test_unknown_format():
    with pytest.raises(ValueError):
        scenario.emit(Report("x"), "yaml")


def test_task_dataclass():
    assert Task("a", "gluing", {}).op == "gluing"
