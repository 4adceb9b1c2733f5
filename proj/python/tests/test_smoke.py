import pytest

import ctlab


def test_exponent_float_and_exact():
    s, theorem, regime = ctlab.exponent(0.5, 3.0)
    assert s == pytest.approx(0.25, abs=1e-12)
    assert theorem == "T1"
    assert ctlab.exponent_exact("1/3", "6/5") == ("1/6", "T3", "[1, 3/2)")


def test_breakpoints():
    assert ctlab.breakpoints(0.6, 1.5) == pytest.approx([0.9, 1.0, 1.2, 3.0])


def test_run_atlas_record():
    rec = ctlab.run({"command": "atlas", "alpha": "1/2", "gammas": ["1/2", 3]})
    assert rec["ok"]
    assert rec["columns"][:4] == ["alpha", "gamma", "m", "s"]
    assert [row[3] for row in rec["rows"]] == pytest.approx([0.0, 0.25])


def test_config_error_names_field():
    with pytest.raises(ctlab.ConfigError, match="alpha"):
        ctlab.run({"command": "atlas", "alpha": 0})


def test_invalid_argument_maps_to_library_error():
    with pytest.raises(ctlab.Error):
        ctlab.exponent(0.0, 1.0)
