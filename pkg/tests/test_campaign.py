"""Campaign configuration, report serialization and cell execution."""

from __future__ import annotations

import json
import pickle

import pytest

from carlitz_rank.campaign import (
    SCHEMA_VERSION,
    CampaignConfig,
    CampaignKind,
    CampaignReport,
    CellResult,
    FieldRef,
    cell_rng,
    default_max_pairs,
    prime_power_fields,
    write_report,
)
from carlitz_rank.errors import BudgetExceededError, ConfigInvalidError, IoFailureError


def test_field_refs_parse():
    assert FieldRef.parse("7") == FieldRef(p=7)
    assert FieldRef.parse("3^2") == FieldRef(p=3, r=2)
    assert FieldRef.parse("2,3").q == 8
    with pytest.raises(ValueError):
        FieldRef.parse("x")


@pytest.mark.parametrize("values", [
    {"campaign": "MainTheorem", "fields": []},
    {"campaign": "MainTheorem", "fields": [{"p": 4}]},
    {"campaign": "MainTheorem", "fields": [{"p": 5}], "n_max": -1},
    {"campaign": "NoSuchCampaign", "fields": [{"p": 5}]},
    {"campaign": "MuSweep", "fields": [{"p": 5}], "workers": 0},
])
def test_invalid_configs(values):
    with pytest.raises(ConfigInvalidError):
        CampaignConfig.build(**values)


def test_example_campaign_needs_no_fields():
    config = CampaignConfig.build(campaign="ExampleF9")
    assert config.fields == []


def test_run_only_settings_stay_out_of_the_serialized_config(tmp_path):
    config = CampaignConfig.build(campaign="MuSweep", fields=[{"p": 5}],
                                  workers=4, out=tmp_path / "r.json", format="csv")
    dumped = config.model_dump(mode="json")
    assert "workers" not in dumped and "out" not in dumped and "format" not in dumped
    assert dumped["fields"] == [{"p": 5, "r": 1, "n_max": None, "budget": None}]


def test_per_field_overrides():
    config = CampaignConfig.build(campaign="MainTheorem", n_max=2, budget=0,
                                  fields=[{"p": 5}, {"p": 3, "r": 2, "n_max": 3, "budget": 99}])
    small, f9 = config.fields
    assert config.n_limit(small) == 2 and config.budget_for(small) == 0
    assert config.n_limit(f9) == 3 and config.budget_for(f9) == 99


def test_acceptance_grids():
    main = CampaignConfig.acceptance(CampaignKind.MAIN)
    assert [ref.q for ref in main.fields] == [5, 7, 8, 9]
    assert main.budget_for(main.fields[-1]) > 0
    assert CampaignConfig.acceptance("MonomialTheorem", seed=7).seed == 7
    assert [ref.q for ref in CampaignConfig.acceptance("ExampleF9").fields] == [9]


def test_prime_power_fields():
    assert [ref.q for ref in prime_power_fields(16)] == [3, 4, 5, 7, 8, 9, 11, 13, 16]
    assert FieldRef(p=2, r=4) in prime_power_fields(16)


def test_max_pairs_from_environment(monkeypatch):
    assert default_max_pairs() == 50_000_000
    monkeypatch.setenv("CARLITZ_RANK_MAX_PAIRS", "1e6")
    assert default_max_pairs() == 1_000_000
    assert CampaignConfig.build(campaign="MuSweep", fields=[{"p": 5}]).max_pairs == 1_000_000


def test_cell_generators_depend_only_on_the_cell():
    config = CampaignConfig.build(campaign="MainTheorem", fields=[{"p": 5}], seed=3)
    a = cell_rng(config, (5, 1, 2, 1)).integers(0, 1 << 30, size=4)
    b = cell_rng(config, (5, 1, 2, 1)).integers(0, 1 << 30, size=4)
    c = cell_rng(config, (5, 1, 2, 2)).integers(0, 1 << 30, size=4)
    other = config.model_copy(update={"campaign": CampaignKind.MONOMIAL})
    d = cell_rng(other, (5, 1, 2, 1)).integers(0, 1 << 30, size=4)
    assert list(a) == list(b)
    assert list(a) != list(c)
    assert list(a) != list(d)


def _report() -> CampaignReport:
    config = CampaignConfig.build(campaign="MuSweep", fields=[{"p": 5}])
    cells = [CellResult(key=(7, 1), counts={"x": 2}, rows=[{"q": 7, "ok": True}]),
             CellResult(key=(5, 1), counts={"x": 1, "y": 4}, rows=[{"q": 5, "note": None}])]
    return CampaignReport.merge(config, cells)


def test_merge_is_ordered_by_cell_key():
    report = _report()
    assert report.counts == {"x": 3, "y": 4}
    assert [row["q"] for row in report.rows] == [5, 7]
    assert report.verdict == "PASS" and report.passed


def test_json_and_csv_rendering():
    report = _report()
    payload = json.loads(report.to_json())
    assert payload["schema_version"] == SCHEMA_VERSION
    assert payload["verdict"] == "PASS"
    assert "wall_time" not in payload
    assert report.to_json() == report.model_copy(update={"wall_time": 9.5}).to_json()
    assert report.to_csv().splitlines() == ["note,ok,q", ",,5", ",true,7"]


def test_write_report(tmp_path):
    path = write_report(_report(), tmp_path / "out" / "report.csv", "csv")
    assert path.read_text().startswith("note,ok,q")
    with pytest.raises(IoFailureError):
        write_report(_report(), tmp_path, "json")


def test_errors_survive_pickling():
    err = BudgetExceededError("rank level 4", estimate=10, budget=3)
    back = pickle.loads(pickle.dumps(err))
    assert type(back) is BudgetExceededError
    assert (back.what, back.estimate, back.budget) == ("rank level 4", 10, 3)
    assert str(back) == str(err)
