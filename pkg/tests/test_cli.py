"""The ``ospcheck verify`` command: exit codes, documents and output locations."""

import json

import pytest
from click.testing import CliRunner

from ospcheck import cli
from ospcheck.report import ReportDocument


@pytest.fixture
def runner():
    return CliRunner()


def verify(runner, *args, env=None):
    return runner.invoke(cli.main, ["verify", *args], env=env)


def test_rmatrix_suite_passes_symbolically(runner):
    res = verify(runner, "--suite", "rmatrix", "--format", "doc")
    assert res.exit_code == 0, res.output
    doc = ReportDocument.from_json(res.output)
    assert doc.aggregate
    assert all(doc.rmatrix["checks"].values())
    assert doc.config["t"] == "symbolic"


def test_failing_relation_gives_status_one(runner):
    res = verify(runner, "--suite", "hidden", "--t", "2")
    assert res.exit_code == 1, res.output
    assert "aggregate: FAIL" in res.output


def test_corrupted_entry_fails(runner):
    res = verify(runner, "--suite", "rmatrix", "--t", "2", "--corrupt", "c")
    assert res.exit_code == 1, res.output


@pytest.mark.parametrize("args", [
    ("--suite", "serre", "--t", "2"),
    ("--t", "1"),
    ("--t", "0"),
    ("--t", "two"),
    ("--order", "3"),
    ("--suite", "nope"),
    ("--suite", "serre", "--serre-regions", "bogus"),
    ("--suite", "rmatrix", "--corrupt", "zz"),
])
def test_usage_errors_exit_two(runner, args):
    res = verify(runner, *args)
    assert res.exit_code == 2, res.output


def test_document_round_trips(runner):
    res = verify(runner, "--suite", "drinfeld", "--t", "2", "--format", "doc")
    doc = ReportDocument.from_json(res.output)
    assert ReportDocument.from_json(doc.to_json()) == doc
    data = json.loads(res.output)
    assert data["schema_version"] == 1
    assert all("locus" in r for r in data["reports"])
    assert (res.exit_code == 0) == (data["aggregate"] == "pass")


def test_document_rejects_inconsistent_aggregate(runner):
    res = verify(runner, "--suite", "rmatrix", "--t", "2", "--format", "doc")
    data = json.loads(res.output)
    data["aggregate"] = "fail"
    with pytest.raises(ValueError):
        ReportDocument.from_dict(data)
    data["aggregate"], data["schema_version"] = "pass", 99
    with pytest.raises(ValueError):
        ReportDocument.from_dict(data)


def test_runs_are_identical_apart_from_timing():
    config = cli.Config(suite="drinfeld", t="2")
    _, a = cli.run(config)
    _, b = cli.run(config)
    assert a.to_json(timing=False) == b.to_json(timing=False)


def test_out_option_writes_file(runner, tmp_path):
    path = tmp_path / "r.json"
    res = verify(runner, "--suite", "rmatrix", "--t", "2", "--format", "doc", "--out", str(path))
    assert res.exit_code == 0
    assert ReportDocument.from_json(path.read_text()).aggregate


def test_environment_sets_default_directory(runner, tmp_path):
    res = verify(runner, "--suite", "rmatrix", "--t", "2",
                 env={cli.OUT_DIR_ENV: str(tmp_path)})
    assert res.exit_code == 0
    assert "aggregate: PASS" in (tmp_path / "report.txt").read_text()


def test_text_report_lists_convention_and_relations(runner):
    res = verify(runner, "--suite", "drinfeld", "--t", "2")
    assert "slice convention: aux-first" in res.output
    assert "thm2/phi-psi" in res.output
    assert "level-0 instantiation" in res.output
