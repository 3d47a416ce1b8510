"""Run configuration for the ``qcav`` command line.

Precedence: built-in defaults < config file (``key = value`` lines, ``#``
comments) < ``--set key=value`` overrides.  Values may carry a unit suffix
(``5mm``, ``30GHz``, ``122ueV``); bare numbers are SI.  Angles accept ``pi``
forms such as ``pi/2`` or ``0.25pi``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError

MODES = ("params", "storage", "decoherence", "sweep")

_UNITS = {
    "length": {"m": 1.0, "cm": 1e-2, "mm": 1e-3, "um": 1e-6, "µm": 1e-6},
    "area": {"m2": 1.0, "mm2": 1e-6, "um2": 1e-12, "µm2": 1e-12},
    "frequency": {"hz": 1.0, "khz": 1e3, "mhz": 1e6, "ghz": 1e9},
    "energy": {"ev": 1.0, "mev": 1e-3, "uev": 1e-6, "µev": 1e-6, "nev": 1e-9},
    "time": {"s": 1.0, "ms": 1e-3, "us": 1e-6, "µs": 1e-6, "ns": 1e-9, "ps": 1e-12},
}

# key -> (kind, default).  ``None`` defaults mean "derive from mode/scale".
SCHEMA: dict[str, tuple[str, object]] = {
    "scale": ("scale", "device"),
    "R": ("length", 2.55e-3),
    "L": ("length", 5.0e-3),
    "f": ("frequency", 30e9),
    "E_C": ("energy", 122e-6),
    "E_J": ("energy", 34e-6),
    "S": ("area", 9.98e-11),
    "phi_e": ("angle", None),
    "phi0": ("float", None),
    "n_g": ("float", None),
    "cutoff": ("int", None),
    "alphas": ("complex_list", [0.0, 1.0, 2.0, 3.0]),
    "q_alpha": ("complex", 1 / math.sqrt(2)),
    "q_beta": ("complex", 1 / math.sqrt(2)),
    "t_start": ("time", 0.0),
    "t_end": ("time", None),
    "n_points": ("int", None),
    "eta": ("float", None),
    "delta": ("float", None),
    "desk_phi0": ("float", None),
    "sweep_phi_e": ("angle_list", None),
    "sweep_alpha": ("complex_list", None),
    "numeric": ("bool", None),
    "workers": ("int", 4),
}

_NUM = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"


def _parse_number(text: str, kind: str) -> float:
    s = text.strip().replace(" ", "")
    m = re.fullmatch(f"({_NUM})([a-zA-Zµ0-9]*)", s)
    if not m:
        raise ConfigError(f"cannot parse {text!r} as a number")
    value, unit = float(m.group(1)), m.group(2).lower()
    if not unit:
        return value
    table = _UNITS.get(kind, {})
    if unit not in table:
        raise ConfigError(f"unit {m.group(2)!r} not valid for a {kind}")
    return value * table[unit]


def _parse_angle(text: str) -> float:
    s = text.strip().replace(" ", "").lower()
    m = re.fullmatch(rf"({_NUM}|[-+]?)\*?pi(?:/({_NUM}))?", s)
    if m:
        coef = m.group(1)
        coef = -1.0 if coef == "-" else 1.0 if coef in ("", "+") else float(coef)
        den = float(m.group(2)) if m.group(2) else 1.0
        return coef * math.pi / den
    if s.endswith("deg"):
        return math.radians(_parse_number(s[:-3], "float"))
    if s.endswith("rad"):
        s = s[:-3]
    return _parse_number(s, "float")


def _parse_complex(text: str) -> complex | float:
    try:
        z = complex(text.strip().replace(" ", ""))
    except ValueError as exc:
        raise ConfigError(f"cannot parse {text!r} as a complex number") from exc
    return z.real if z.imag == 0 else z


def _split_list(text: str) -> list[str]:
    items = [t for t in (x.strip() for x in text.split(",")) if t]
    if not items:
        raise ConfigError("empty list")
    return items


def parse_value(key: str, text: str):
    if key not in SCHEMA:
        raise ConfigError(f"unknown key {key!r}")
    kind = SCHEMA[key][0]
    try:
        if kind == "scale":
            v = text.strip().lower()
            if v not in ("device", "desk"):
                raise ConfigError("scale must be 'device' or 'desk'")
            return v
        if kind == "int":
            f = _parse_number(text, "float")
            if f != int(f):
                raise ConfigError(f"{key} must be an integer")
            return int(f)
        if kind == "bool":
            v = text.strip().lower()
            if v in ("1", "true", "yes", "on"):
                return True
            if v in ("0", "false", "no", "off"):
                return False
            raise ConfigError(f"{key} must be a boolean")
        if kind == "angle":
            return _parse_angle(text)
        if kind == "angle_list":
            return [_parse_angle(t) for t in _split_list(text)]
        if kind == "complex":
            return _parse_complex(text)
        if kind == "complex_list":
            return [_parse_complex(t) for t in _split_list(text)]
        return _parse_number(text, kind)
    except ConfigError as exc:
        raise ConfigError(f"{key}: {exc}") from None


def parse_config_text(text: str) -> dict[str, str]:
    """``key = value`` lines into a raw string mapping (later lines win)."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        k, v = (s.strip() for s in line.split("=", 1))
        if k not in SCHEMA:
            raise ConfigError(f"line {lineno}: unknown key {k!r}")
        out[k] = v
    return out


def parse_overrides(pairs) -> dict[str, str]:
    out = {}
    for item in pairs or ():
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        k, v = (s.strip() for s in item.split("=", 1))
        if k not in SCHEMA:
            raise ConfigError(f"unknown key {k!r}")
        out[k] = v
    return out


@dataclass(frozen=True)
class RunConfig:
    mode: str
    values: dict = field(default_factory=dict)
    explicit: frozenset = frozenset()
    out: Path | None = None

    def __getitem__(self, key):
        return self.values[key]

    def given(self, key) -> bool:
        return key in self.explicit

    @property
    def desk(self) -> bool:
        return self.values["scale"] == "desk"


def load(mode: str, config_file=None, overrides=(), out=None) -> RunConfig:
    if mode not in MODES:
        raise ConfigError(f"unknown mode {mode!r}")
    raw: dict[str, str] = {}
    if config_file is not None:
        try:
            text = Path(config_file).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from None
        raw.update(parse_config_text(text))
    raw.update(parse_overrides(overrides))
    values = {k: d for k, (_, d) in SCHEMA.items()}
    for k, v in raw.items():
        values[k] = parse_value(k, v)
    if values["n_points"] is not None and values["n_points"] < 2:
        raise ConfigError("n_points must be >= 2")
    if values["t_end"] is not None and values["t_end"] <= values["t_start"]:
        raise ConfigError("t_end must exceed t_start")
    if values["cutoff"] is not None and values["cutoff"] < 1:
        raise ConfigError("cutoff must be >= 1")
    if values["workers"] < 1:
        raise ConfigError("workers must be >= 1")
    return RunConfig(mode, values, frozenset(raw), Path(out) if out else None)
