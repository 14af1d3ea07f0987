import numpy as np
import pytest

from regimetrics import (
    MappedSeries,
    Pcg32,
    ProcessConfig,
    ScenarioConfig,
    ValidationError,
    compare_regimes,
    generate_series,
    indicator_series,
    paired_scenarios,
)


def scenario(**overrides):
    defaults = dict(
        seed=11,
        periods=30,
        processes=(
            ProcessConfig("logging", channels=2, base_level=120.0, amplitude=15.0,
                          period_length=12, noise_scale=4.0),
            ProcessConfig("river-delivery", channels=1, base_level=60.0, amplitude=8.0,
                          period_length=6, noise_scale=2.0),
            ProcessConfig("production", channels=2, base_level=200.0, amplitude=25.0,
                          period_length=12, noise_scale=6.0),
        ),
        intervention_period=7,
        intervention_cost_per_period=10.0,
    )
    defaults.update(overrides)
    return ScenarioConfig(**defaults)


# --- pcg32 substreams -------------------------------------------------------


def test_pcg32_matches_published_demo_vector():
    # first round of the reference pcg32 demo: seed 42, sequence 54
    generator = Pcg32(42, 54)
    outputs = [generator.next_uint32() for _ in range(6)]
    assert outputs == [0xA15C02B7, 0x7B47F409, 0xBA1D3330, 0x83D2F293, 0xBFA4784B, 0xCBED606E]


def test_pcg32_doubles_lie_in_unit_interval():
    generator = Pcg32(7, 0)
    values = [generator.next_double() for _ in range(1000)]
    assert all(0.0 <= value < 1.0 for value in values)
    symmetric = Pcg32(7, 1)
    values = [symmetric.next_unit_interval_symmetric() for _ in range(1000)]
    assert all(-1.0 <= value < 1.0 for value in values)


def test_pcg32_streams_are_distinct():
    a = Pcg32(123, 0)
    b = Pcg32(123, 1)
    assert [a.next_uint32() for _ in range(8)] != [b.next_uint32() for _ in range(8)]


def test_pcg32_rejects_out_of_range_seed():
    with pytest.raises(ValueError):
        Pcg32(-1)
    with pytest.raises(ValueError):
        Pcg32(1 << 64)


# --- generation -------------------------------------------------------------


def test_degenerate_config_yields_constant_channels():
    config = scenario(
        processes=(ProcessConfig("flat", channels=2, base_level=42.0, amplitude=0.0,
                                 period_length=4, noise_scale=0.0),),
        intervention_period=None,
        intervention_cost_per_period=0.0,
    )
    model = generate_series(config)
    assert np.array_equal(model.events, np.full((30, 2), 42.0))


def test_same_config_is_bit_identical():
    config = scenario()
    first = generate_series(config)
    second = generate_series(config)
    assert first.events.tobytes() == second.events.tobytes()
    assert first.channel_labels == second.channel_labels


def test_output_shape_and_labels():
    model = generate_series(scenario())
    assert model.events.shape == (30, 5)
    assert model.channel_labels == (
        "logging.1",
        "logging.2",
        "river-delivery.1",
        "production.1",
        "production.2",
    )


def test_intervention_adds_exact_cost_on_designated_channels():
    # noise-free so the pairwise run difference is exact
    config = scenario(
        processes=(
            ProcessConfig("a", channels=2, base_level=100.0, amplitude=7.0,
                          period_length=5, noise_scale=0.0),
            ProcessConfig("b", channels=1, base_level=50.0, amplitude=3.0,
                          period_length=9, noise_scale=0.0),
        ),
        intervention_period=7,
        intervention_cost_per_period=10.0,
    )
    baseline, treated = paired_scenarios(config)
    difference = treated.events - baseline.events
    designated = [0, 2]  # first channel of each process
    for t in range(config.periods):
        for j in range(3):
            expected = 10.0 if (j in designated and t + 1 >= 7) else 0.0
            assert difference[t, j] == expected


def test_noisy_cells_untouched_by_intervention_are_bit_identical():
    baseline, treated = paired_scenarios(scenario())
    designated = [0, 2, 3]  # first channel of logging, river-delivery, production
    affected = np.zeros((30, 5), dtype=bool)
    affected[6:, designated] = True
    assert np.array_equal(baseline.events[~affected], treated.events[~affected])
    assert not np.array_equal(baseline.events[affected], treated.events[affected])


def test_zero_cost_intervention_pairs_identically():
    baseline, treated = paired_scenarios(scenario(intervention_cost_per_period=0.0))
    assert np.array_equal(baseline.events, treated.events)


def test_pairs_agree_before_the_intervention():
    baseline, treated = paired_scenarios(scenario())
    assert np.array_equal(baseline.events[:6], treated.events[:6])


def test_pipeline_deltas_vanish_while_windows_precede_intervention():
    config = scenario(periods=30, intervention_period=20)
    baseline, treated = paired_scenarios(config)
    k = 12
    ind_base = indicator_series(MappedSeries.from_model(baseline), k)
    ind_treated = indicator_series(MappedSeries.from_model(treated), k)
    comparison = compare_regimes(ind_base, ind_treated)
    untouched = comparison.periods <= config.intervention_period
    assert untouched.any()
    assert np.array_equal(comparison.delta[untouched], np.zeros(untouched.sum()))
    assert np.any(comparison.delta[~untouched] != 0.0)


# --- config validation ------------------------------------------------------


@pytest.mark.parametrize(
    "overrides",
    [
        dict(seed=-1),
        dict(seed=1 << 64),
        dict(periods=0),
        dict(intervention_period=0),
        dict(intervention_period=31),
        dict(processes=()),
    ],
)
def test_invalid_scenario_rejected(overrides):
    with pytest.raises(ValidationError):
        scenario(**overrides)


def test_duplicate_process_names_rejected():
    with pytest.raises(ValidationError, match="unique"):
        scenario(processes=(ProcessConfig("x"), ProcessConfig("x")))


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(name=""),
        dict(name="p", channels=0),
        dict(name="p", period_length=0),
        dict(name="p", noise_scale=-1.0),
        dict(name="p", base_level=float("nan")),
    ],
)
def test_invalid_process_rejected(kwargs):
    with pytest.raises(ValidationError):
        ProcessConfig(**kwargs)
