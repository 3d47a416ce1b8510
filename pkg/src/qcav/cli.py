"""``qcav`` command line: device arithmetic, storage and decoherence datasets, sweeps.

Exit codes: 0 success, 2 configuration error, 3 numerical-validity error.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import gaussian, oracle, protocol
from .config import MODES, RunConfig, load
from .errors import ConfigError, GateChargeNotTuned, NumericalError, QcavError
from .physical import (
    DESK_CUTOFF,
    DESK_DELTA,
    DESK_ETA,
    DESK_PHI0,
    DESK_STORAGE_RATIO,
    DEVICE_CUTOFF,
    DEVICE_PHI_E,
    SystemParams,
    derive_device,
    desk_params,
    desk_storage_params,
)

FLOAT_FMT = "{:.12g}"
DEFAULT_POINTS = 2000


def fmt(x) -> str:
    if isinstance(x, complex) and x.imag == 0:
        x = x.real
    if isinstance(x, complex):
        return f"{FLOAT_FMT.format(x.real)}{FLOAT_FMT.format(x.imag):+}j".replace("+-", "-")
    return FLOAT_FMT.format(x)


def _alpha_label(a) -> str:
    return fmt(a)


# --------------------------------------------------------------------------
# parameter resolution


def _device(cfg: RunConfig, phi_e: float, n_g):
    v = cfg.values
    return derive_device(
        mirror_radius=v["R"],
        length=v["L"],
        frequency=v["f"],
        e_c_ev=v["E_C"],
        e_j_ev=v["E_J"],
        loop_area=v["S"],
        phi_e=phi_e,
        n_g=n_g,
        cutoff=v["cutoff"] or DEVICE_CUTOFF,
        phi0_override=v["phi0"],
    )


def _phi_e(cfg: RunConfig) -> float:
    return DEVICE_PHI_E if cfg["phi_e"] is None else cfg["phi_e"]


def _degeneracy_n_g(cfg: RunConfig) -> float:
    n_g = cfg["n_g"]
    if n_g is not None and abs(n_g - 0.5) > 1e-12:
        raise GateChargeNotTuned("decoherence runs need n_g = 1/2")
    return 0.5


def desk_decoherence_params(cfg: RunConfig, phi_e: float | None) -> SystemParams:
    """Desk-scale parameters for the branch dynamics.

    Without an explicit flux both targets ``eta`` and ``delta`` are met.  With a
    flux, ``E_J`` is chosen as large as possible without either coupling
    exceeding its target; at ``phi_e = 0`` (``pi/2``) that is ``delta`` (``eta``) exactly.
    """
    eta = DESK_ETA if cfg["eta"] is None else cfg["eta"]
    delta = DESK_DELTA if cfg["delta"] is None else cfg["delta"]
    phi0 = cfg["desk_phi0"] or DESK_PHI0
    cutoff = cfg["cutoff"] or DESK_CUTOFF
    if phi_e is None:
        return desk_params(eta=eta, delta=delta, phi0=phi0, cutoff=cutoff)
    s, c = math.sin(phi_e), math.cos(phi_e)
    candidates = []
    if abs(s) > 1e-12:
        candidates.append(abs(eta) / (phi0 * abs(s)))
    if abs(c) > 1e-12:
        candidates.append(2 * abs(delta) / (phi0**2 * abs(c)))
    e_j = min(candidates)
    if e_j <= 0:
        raise ConfigError("desk couplings vanish for this phi_e")
    return SystemParams(e_c=4 * e_j, e_j=e_j, n_g=0.5, phi_e=phi_e, phi0=phi0, omega=1.0, cutoff=cutoff)


def decoherence_params(cfg: RunConfig, phi_e: float | None = None) -> SystemParams:
    _degeneracy_n_g(cfg)
    if phi_e is None and cfg["phi_e"] is not None:
        phi_e = cfg["phi_e"]
    if cfg.desk:
        return desk_decoherence_params(cfg, phi_e)
    return _device(cfg, DEVICE_PHI_E if phi_e is None else phi_e, 0.5).params


def storage_params(cfg: RunConfig) -> SystemParams:
    if cfg.desk:
        eta = cfg["eta"] or 1.0 / DESK_STORAGE_RATIO
        return desk_storage_params(ratio=1.0 / eta, phi0=cfg["desk_phi0"] or DESK_PHI0,
                                   cutoff=cfg["cutoff"] or 30)
    return _device(cfg, _phi_e(cfg), cfg["n_g"]).params


def _grid(cfg: RunConfig, t_end_default: float, n_default: int = DEFAULT_POINTS) -> np.ndarray:
    t0 = cfg["t_start"]
    t1 = cfg["t_end"] if cfg["t_end"] is not None else t0 + t_end_default
    if t1 <= t0:
        raise ConfigError("t_end must exceed t_start")
    return np.linspace(t0, t1, cfg["n_points"] or n_default)


# --------------------------------------------------------------------------
# commands


def cmd_params(cfg: RunConfig) -> str:
    if cfg.desk:
        raise ConfigError("params mode reports device arithmetic; use scale=device")
    rep = _device(cfg, _phi_e(cfg), cfg["n_g"])
    cp = rep.couplings
    rows = [
        ("mode_volume_m3", "mode volume V", rep.volume, "m^3"),
        ("field_T", "vacuum field B", rep.field, "T"),
        ("phi0", "flux amplitude phi0", rep.params.phi0, ""),
        ("eta_rad_s", "first-order coupling eta", cp.eta, "rad/s"),
        ("delta_rad_s", "second-order coupling delta", cp.delta, "rad/s"),
        ("n_g_resonance", "resonant gate charge n_g*", rep.n_g_resonance, ""),
        ("storage_time_s", "storage time pi/(2 eta)", rep.storage_time, "s"),
    ]
    out = io.StringIO()
    out.write("# qcav device parameters\n")
    for _, name, value, unit in rows:
        shown = "unavailable" if value is None else f"{value:.4g}"
        out.write(f"#   {name:<30s} {shown} {unit}\n".rstrip() + "\n")
    for key, _, value, _ in rows:
        out.write(f"{key}={'unavailable' if value is None else fmt(value)}\n")
    return out.getvalue()


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(x) for x in r])
    return buf.getvalue()


def cmd_storage(cfg: RunConfig) -> str:
    p = storage_params(cfg)
    if cfg["t_end"] is None and cfg["t_start"] == 0:
        times = protocol.storage_grid(p, cfg["n_points"] or 2001)
    else:
        times = _grid(cfg, 2 * protocol.storage_grid(p, 3)[1])
    data = protocol.fig2_dataset(p, times)
    a, n = data.analytic.values, data.numeric.values
    return _csv(["t", "P_analytic", "P_numeric", "abs_diff"], zip(times, a, n, np.abs(a - n)))


def _numeric_enabled(cfg: RunConfig) -> bool:
    return cfg.desk if cfg["numeric"] is None else cfg["numeric"]


def cmd_decoherence(cfg: RunConfig) -> str:
    p = decoherence_params(cfg)
    times = _grid(cfg, gaussian.revival_period(p))
    numeric = _numeric_enabled(cfg)
    header, cols = ["t"], [times]
    for a in cfg["alphas"]:
        header.append(f"D_analytic(alpha={_alpha_label(a)})")
        cols.append(np.atleast_1d(gaussian.decoherence_factor(p, a, times)))
        if numeric:
            header.append(f"D_numeric(alpha={_alpha_label(a)})")
            cols.append(oracle.numeric_decoherence(p, a, times).values)
    return _csv(header, zip(*cols))


def _sweep_point(cfg: RunConfig, phi_e: float, alpha) -> tuple:
    p = decoherence_params(cfg, phi_e)
    times = _grid(cfg, gaussian.revival_period(p))
    d = np.atleast_1d(gaussian.decoherence_factor(p, alpha, times))
    i = int(np.argmin(d))
    return phi_e, alpha, float(d[i]), float(times[i])


def cmd_sweep(cfg: RunConfig) -> str:
    phis = cfg["sweep_phi_e"]
    if phis is None:
        phis = [cfg["phi_e"]] if cfg["phi_e"] is not None else [0.0, math.pi / 2]
    alphas = cfg["sweep_alpha"] or cfg["alphas"]
    points = [(f, a) for f in phis for a in alphas]
    with ThreadPoolExecutor(max_workers=cfg["workers"]) as pool:
        results = list(pool.map(lambda fa: _sweep_point(cfg, *fa), points))
    best = max(r[2] for r in results)
    rows = [(f, a, d, t, int(d >= best - 1e-12)) for f, a, d, t in results]
    return _csv(["phi_e", "alpha", "min_D", "t_at_min", "optimal"], rows)


COMMANDS = {
    "params": cmd_params,
    "storage": cmd_storage,
    "decoherence": cmd_decoherence,
    "sweep": cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qcav",
        description="Charge qubit coupled to a microwave cavity: storage and engineered decoherence.",
    )
    ap.add_argument("mode", choices=MODES)
    ap.add_argument("--config", metavar="FILE", help="key = value file")
    ap.add_argument("--set", metavar="KEY=VALUE", action="append", default=[],
                    dest="overrides", help="override one parameter (repeatable)")
    ap.add_argument("--out", metavar="FILE", help="write output here instead of stdout")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load(args.mode, args.config, args.overrides, args.out)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            text = COMMANDS[cfg.mode](cfg)
    except ConfigError as exc:
        print(f"qcav: config error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"qcav: numerical error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except QcavError as exc:  # pragma: no cover - every subclass is one of the above
        print(f"qcav: {exc}", file=sys.stderr)
        return 2
    if cfg.out:
        cfg.out.write_text(text, encoding="utf-8", newline="\n")
    else:
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:  # e.g. piped into head
            sys.stdout = open(os.devnull, "w")
    return 0


if __name__ == "__main__":
    sys.exit(main())
