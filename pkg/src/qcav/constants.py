"""Physical constants (CODATA 2018 exact/recommended values via scipy.constants)."""

from scipy import constants as _c

h = _c.h                      # J s
hbar = _c.hbar                # J s
e = _c.e                      # C
epsilon_0 = _c.epsilon_0      # F / m
c = _c.c                      # m / s
flux_quantum = h / (2 * e)    # Wb, Phi_0 = h / 2e

EV = _c.electron_volt         # J per eV


def ev_to_rad_s(energy_ev: float) -> float:
    """Energy in eV to angular frequency E / hbar in rad/s."""
    return energy_ev * EV / hbar


def rad_s_to_ev(omega: float) -> float:
    return omega * hbar / EV
