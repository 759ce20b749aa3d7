import dataclasses
import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from voltsched.model import (
    Setpoint,
    from_deviation,
    load_scenario,
    save_scenario,
    scenario_from_dict,
    scenario_to_dict,
    to_deviation,
    validate_scenario,
)


def test_three_bus_scenario_is_valid(three_bus):
    assert validate_scenario(three_bus) == []


def test_zero_window_is_one_violation(three_bus):
    bad = dataclasses.replace(three_bus, window=0)
    violations = validate_scenario(bad)
    assert len(violations) == 1
    assert "window" in violations[0]


def test_asymmetric_q_is_one_violation(three_bus):
    Q = three_bus.plant.Q.copy()
    Q[0][1] = 1.0
    Q[1][0] = 0.0
    bad = dataclasses.replace(three_bus, plant=dataclasses.replace(three_bus.plant, Q=Q))
    violations = validate_scenario(bad)
    assert len(violations) == 1
    assert "Q" in violations[0] and "symmetric" in violations[0]


def test_validate_is_total_on_garbage_shapes(three_bus):
    # wrong shapes everywhere must produce reports, not exceptions
    bad = dataclasses.replace(
        three_bus,
        x0_deviation=np.zeros(7),
        P0=np.zeros((2, 5)),
        window=-3,
        round_robin_start=99,
    )
    violations = validate_scenario(bad)
    assert len(violations) >= 4


def test_to_deviation_identity_case():
    sp = Setpoint(x_star=np.array([120.0, 121.0, 119.0]))
    assert np.array_equal(to_deviation(sp.x_star, sp), np.zeros(3))


def test_to_deviation_three_bus_offset():
    sp = Setpoint(x_star=np.array([120.0, 121.0, 119.0]))
    x = sp.x_star + np.array([30.0, 10.0, 20.0])
    assert np.allclose(to_deviation(x, sp), [30.0, 10.0, 20.0], rtol=1e-12)


def test_from_deviation_cases():
    sp = Setpoint(x_star=np.array([1.0, 2.0]))
    assert np.array_equal(from_deviation(np.zeros(2), sp), sp.x_star)
    sp0 = Setpoint(x_star=np.zeros(3))
    assert np.array_equal(from_deviation(np.array([30.0, 10.0, 20.0]), sp0), [30.0, 10.0, 20.0])


def test_deviation_dimension_mismatch():
    sp = Setpoint(x_star=np.zeros(3))
    with pytest.raises(ValueError):
        to_deviation(np.zeros(4), sp)
    with pytest.raises(ValueError):
        from_deviation(np.zeros(2), sp)


@given(arrays(np.float64, 3, elements=st.floats(-1e6, 1e6)))
def test_deviation_roundtrip(x):
    sp = Setpoint(x_star=np.array([100.0, -40.0, 7.5]))
    back = from_deviation(to_deviation(x, sp), sp)
    assert np.allclose(back, x, rtol=1e-12, atol=1e-9)


def test_scenario_file_roundtrip(three_bus, tmp_path):
    p = tmp_path / "scenario.json"
    save_scenario(three_bus, p)
    again = load_scenario(p)
    assert np.array_equal(again.plant.A, three_bus.plant.A)
    assert np.array_equal(again.P0, three_bus.P0)
    assert again.horizon == three_bus.horizon
    assert again.window == three_bus.window
    # equal to 1e-15 relative after a second round trip
    assert scenario_to_dict(again) == scenario_to_dict(three_bus)


def test_scenario_file_defaults(three_bus, tmp_path):
    doc = scenario_to_dict(three_bus)
    for key in ("P0", "K", "round_robin_start"):
        doc.pop(key)
    s = scenario_from_dict(doc)
    assert np.array_equal(s.P0, np.eye(3))
    assert s.horizon == 40
    assert s.round_robin_start == 2
