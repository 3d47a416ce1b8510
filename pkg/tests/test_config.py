import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcav.config import SCHEMA, load, parse_config_text, parse_value
from qcav.errors import ConfigError


@pytest.mark.parametrize(
    "key,text,value",
    [
        ("L", "5mm", 5e-3),
        ("L", "0.5cm", 5e-3),
        ("R", "2.55e-3", 2.55e-3),
        ("f", "30GHz", 30e9),
        ("E_C", "122ueV", 122e-6),
        ("E_J", "34 µeV", 34e-6),
        ("S", "99.8um2", 9.98e-11),
        ("t_end", "2.7us", 2.7e-6),
        ("phi_e", "pi/2", math.pi / 2),
        ("phi_e", "0.25pi", math.pi / 4),
        ("phi_e", "-pi", -math.pi),
        ("phi_e", "90deg", math.pi / 2),
        ("phi_e", "0.3", 0.3),
        ("cutoff", "40", 40),
        ("numeric", "off", False),
        ("scale", "Desk", "desk"),
        ("alphas", "0, 1, 1+1j", [0.0, 1.0, 1 + 1j]),
        ("sweep_phi_e", "0, pi/2", [0.0, math.pi / 2]),
    ],
)
def test_parse_value(key, text, value):
    got = parse_value(key, text)
    if isinstance(value, list):
        assert got == pytest.approx(value)
    elif isinstance(value, float):
        assert got == pytest.approx(value, rel=1e-12)
    else:
        assert got == value


@pytest.mark.parametrize(
    "key,text",
    [("L", "5GHz"), ("cutoff", "2.5"), ("numeric", "maybe"), ("scale", "lab"), ("alphas", ","), ("n_g", "1mm")],
)
def test_parse_value_rejects(key, text):
    with pytest.raises(ConfigError):
        parse_value(key, text)


def test_unknown_key_rejected():
    with pytest.raises(ConfigError):
        parse_value("colour", "red")
    with pytest.raises(ConfigError):
        parse_config_text("colour = red\n")
    with pytest.raises(ConfigError):
        load("params", overrides=["colour=red"])


def test_config_file_comments_and_precedence(tmp_path):
    f = tmp_path / "run.cfg"
    f.write_text("# device\nL = 4mm   # shorter\nR = 3mm\n", encoding="utf-8")
    cfg = load("params", f, ["L=4.5mm"])
    assert cfg["L"] == pytest.approx(4.5e-3)
    assert cfg["R"] == pytest.approx(3e-3)
    assert cfg["f"] == SCHEMA["f"][1]
    assert cfg.given("L") and not cfg.given("f")


@pytest.mark.parametrize(
    "overrides",
    [["n_points=1"], ["t_start=1", "t_end=0.5"], ["cutoff=0"], ["workers=0"], ["L"]],
)
def test_load_invariants(overrides):
    with pytest.raises(ConfigError):
        load("storage", overrides=overrides)


def test_missing_file():
    with pytest.raises(ConfigError):
        load("params", "/nonexistent/run.cfg")


def test_bad_mode():
    with pytest.raises(ConfigError):
        load("plot")


@given(st.floats(1e-6, 1e3, allow_nan=False))
def test_number_round_trip(x):
    assert parse_value("L", repr(x)) == x
    assert parse_value("L", f"{x!r}mm") == pytest.approx(x * 1e-3)
