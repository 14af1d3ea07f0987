import json

import numpy as np
import pytest

from regimetrics import load_reference, write_reference
from regimetrics.cli import main
from regimetrics.io import read_comparison_table
from regimetrics.reference import ReferenceTable

SCENARIO = {
    "seed": 42,
    "periods": 30,
    "processes": [
        {"name": "logging", "channels": 2, "base_level": 120.0, "amplitude": 15.0,
         "period_length": 12, "noise_scale": 4.0},
        {"name": "river-delivery", "channels": 1, "base_level": 60.0, "amplitude": 8.0,
         "period_length": 6, "noise_scale": 2.0},
        {"name": "production", "channels": 2, "base_level": 200.0, "amplitude": 25.0,
         "period_length": 12, "noise_scale": 6.0},
    ],
    "intervention_period": 7,
    "intervention_cost_per_period": 10.0,
}


@pytest.fixture
def scenario_path(tmp_path):
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(SCENARIO))
    return path


def run(argv):
    return main([str(arg) for arg in argv])


def test_verify_reference_passes(capsys):
    assert run(["verify-reference"]) == 0
    out = capsys.readouterr().out
    assert out.count("[PASS]") == 4
    assert "[FAIL]" not in out


def test_verify_reference_fails_on_perturbed_table(tmp_path, capsys):
    table = load_reference()
    dv = table.dv.copy()
    dv[0] += 0.5
    bad = ReferenceTable(
        periods=table.periods,
        v_basic=table.v_basic,
        v_ddescr=table.v_ddescr,
        dv=dv,
        printed_totals=table.printed_totals,
    )
    path = write_reference(bad, tmp_path / "bad.csv")
    assert run(["verify-reference", "--file", path]) == 1
    assert "[FAIL] row-deltas" in capsys.readouterr().out


def test_catalog_listing(capsys):
    assert run(["catalog"]) == 0
    out = capsys.readouterr().out
    assert "catalog OK: 15 entries" in out
    assert "Forming judgments" in out


def test_catalog_skill_lookup(capsys):
    assert run(["catalog", "--skill", "2.4"]) == 0
    assert "Communication" in capsys.readouterr().out


def test_catalog_unknown_skill_is_an_error(capsys):
    assert run(["catalog", "--skill", "9.9"]) == 1
    assert "error:" in capsys.readouterr().err


def test_unknown_subcommand_is_a_usage_error():
    with pytest.raises(SystemExit) as excinfo:
        run(["frobnicate"])
    assert excinfo.value.code != 0


def test_analyze_rejects_window_of_one(tmp_path, scenario_path, capsys):
    assert run(["generate", "--config", scenario_path, "--output-dir", tmp_path / "data"]) == 0
    code = run(
        ["analyze", "--events", tmp_path / "data" / "events_baseline.csv",
         "--window", "1", "--output-dir", tmp_path / "out"]
    )
    assert code == 1
    assert "window length" in capsys.readouterr().err


def test_generate_analyze_compare_pipeline(tmp_path, scenario_path, capsys):
    data = tmp_path / "data"
    assert run(["generate", "--config", scenario_path, "--output-dir", data]) == 0
    assert (data / "events_baseline.csv").exists()
    assert (data / "events_treated.csv").exists()

    out = tmp_path / "cmp"
    code = run(
        ["compare", "--basic", data / "events_baseline.csv",
         "--treated", data / "events_treated.csv",
         "--window", "5", "--mode", "standardized", "--output-dir", out]
    )
    assert code == 0
    periods, _, _, delta, _ = read_comparison_table(out / "comparison.csv")
    # windows lying entirely before the intervention period show no delta
    before = periods <= SCENARIO["intervention_period"]
    assert before.any()
    assert np.array_equal(delta[before], np.zeros(before.sum()))


def test_compare_accepts_indicator_outputs(tmp_path, scenario_path):
    data = tmp_path / "data"
    run(["generate", "--config", scenario_path, "--output-dir", data])
    for name in ("baseline", "treated"):
        code = run(
            ["analyze", "--events", data / f"events_{name}.csv",
             "--window", "5", "--output-dir", tmp_path / name]
        )
        assert code == 0
    out_ind = tmp_path / "cmp_from_indicators"
    code = run(
        ["compare", "--basic", tmp_path / "baseline" / "indicators.csv",
         "--treated", tmp_path / "treated" / "indicators.csv",
         "--window", "5", "--output-dir", out_ind]
    )
    assert code == 0
    out_events = tmp_path / "cmp_from_events"
    run(
        ["compare", "--basic", data / "events_baseline.csv",
         "--treated", data / "events_treated.csv",
         "--window", "5", "--output-dir", out_events]
    )
    assert (out_ind / "comparison.csv").read_bytes() == (
        out_events / "comparison.csv"
    ).read_bytes()


def test_analyze_with_mapping(tmp_path, scenario_path, capsys):
    data = tmp_path / "data"
    run(["generate", "--config", scenario_path, "--output-dir", data])
    mapping = tmp_path / "mapping.csv"
    mapping.write_text(
        "# budget: 5669650\n"
        "# cost: 1.1 = 28208\n"
        "competency_id,channel_label,flag\n"
        "1.1,logging.1,1\n"
        "1.1,production.1,1\n"
    )
    code = run(
        ["analyze", "--events", data / "events_treated.csv", "--mapping", mapping,
         "--window", "5", "--output-dir", tmp_path / "out"]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "budget: 28208 of 5.66965e+06" in out
    assert "masked channels: logging.2, river-delivery.1, production.2" in out


def test_analyze_mapping_over_budget_fails(tmp_path, scenario_path, capsys):
    data = tmp_path / "data"
    run(["generate", "--config", scenario_path, "--output-dir", data])
    mapping = tmp_path / "mapping.csv"
    mapping.write_text(
        "# budget: 10\n"
        "# cost: 1.1 = 28208\n"
        "competency_id,channel_label,flag\n"
        "1.1,logging.1,1\n"
    )
    code = run(
        ["analyze", "--events", data / "events_treated.csv", "--mapping", mapping,
         "--window", "5", "--output-dir", tmp_path / "out"]
    )
    assert code == 1
    assert "exceed budget" in capsys.readouterr().err


def test_missing_events_file_is_an_error(tmp_path, capsys):
    code = run(["analyze", "--events", tmp_path / "nope.csv", "--output-dir", tmp_path / "o"])
    assert code == 1
    assert "error:" in capsys.readouterr().err
