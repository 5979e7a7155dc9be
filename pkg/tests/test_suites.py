"""Suite runner, configuration checks and report serialization."""

import csv
import io
import json

import jsonschema
import pytest

from cuntzcar.suites import REPORT_SCHEMA, SUITES, SuiteConfig, SuiteConfigError, make_config, run_suite


@pytest.fixture(scope="module")
def branching_report():
    return run_suite("branching", p=4)


def test_branching_suite_passes(branching_report):
    assert branching_report.passed
    assert branching_report.exit_code == 0
    assert branching_report.counts["fail"] == 0


def test_report_json_matches_schema(branching_report):
    payload = json.loads(branching_report.to_json())
    jsonschema.validate(payload, REPORT_SCHEMA)
    assert payload["config"]["p"] == 4


def test_report_csv_has_one_row_per_case(branching_report):
    rows = list(csv.DictReader(io.StringIO(branching_report.to_csv())))
    assert len(rows) == len(branching_report.cases)
    assert {"id", "status", "witness"} <= set(rows[0])


def test_reports_are_deterministic():
    a = run_suite("kms", beta=(1.0,), eps=(0.5,), kms_modes=2)
    b = run_suite("kms", beta=(1.0,), eps=(0.5,), kms_modes=2)
    assert [(c.id, c.status) for c in a.cases] == [(c.id, c.status) for c in b.cases]
    assert a.passed


def test_relations_suite_small():
    report = run_suite("relations", relations_cases=50, seed=3)
    assert report.passed


def test_unknown_option():
    with pytest.raises(SuiteConfigError):
        make_config(nonsense=1)


def test_bound_overflow():
    with pytest.raises(SuiteConfigError, match="bound"):
        run_suite("rfs", n_max=99)


def test_unknown_suite():
    with pytest.raises(SuiteConfigError):
        run_suite("bogus")


def test_config_defaults():
    cfg = SuiteConfig()
    assert cfg.relations_cases == 1000
    assert cfg.echo()["seed"] == 0


def test_suite_names():
    assert set(SUITES) == {
        "relations", "embeddings", "endomorphisms", "rfs", "car", "restrictions", "branching", "kms", "dynamics"
    }
