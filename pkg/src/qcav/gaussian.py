"""Closed-form branch states and the decoherence factor at the degeneracy point.

With the qubit in sigma_x eigenstate ``k`` (sign ``s = (-1)^k``) the quadratic
branch Hamiltonian is

    H_k = (omega + 2 s delta) a^dag a - s delta (a^2 + a^dag^2) + i s eta (a^dag - a) + const.

Starting from a coherent state ``|alpha>`` it produces the squeezed state
``|beta_k, mu_k, nu_k>``, the eigenstate of ``A_k = mu_k a - nu_k a^dag``.  The
parameters below solve the Heisenberg equations of ``H_k`` exactly; the
decoherence factor is the modulus of the overlap of the two branch states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDenominator, PreconditionViolated, SqueezingUnstable
from .evolution import TraceSeries
from .fockspace import SqueezedParams
from .physical import (
    DESK_DELTA,
    DESK_ETA,
    DESK_PHI0,
    SystemParams,
    couplings,
    desk_params,
)

__all__ = [
    "BranchFrequencies",
    "SqueezedParams",
    "branch_frequencies",
    "branch_params",
    "squeezed_overlap",
    "decoherence_factor",
    "displacement_factor",
    "revival_period",
    "fig3_dataset",
    "fig4_dataset",
]


@dataclass(frozen=True)
class BranchFrequencies:
    omega_k: float   # Omega_k = sqrt(omega^2 + 4 s delta omega)
    n_k: float       # N_k = Omega_k / omega


def branch_frequencies(k: int, p: SystemParams) -> BranchFrequencies:
    s = 1 - 2 * k
    delta = couplings(p).delta
    sq = p.omega**2 + 4 * s * delta * p.omega
    if sq <= 0:
        raise SqueezingUnstable(f"omega^2 + 4 s delta omega = {sq:g} <= 0 for branch {k}")
    om = math.sqrt(sq)
    return BranchFrequencies(om, om / p.omega)


def _branch_arrays(k: int, p: SystemParams, alpha: complex, t):
    """Vectorized ``(beta, mu, nu, theta)`` of branch ``k`` at times ``t``."""
    s = 1 - 2 * k
    cp = couplings(p)
    f = branch_frequencies(k, p)
    om, nk = f.omega_k, f.n_k
    t = np.asarray(t, dtype=float)
    c, sn = np.cos(om * t), np.sin(om * t)
    mu = c + 1j * (p.omega + 2 * s * cp.delta) / om * sn
    nu = 1j * s * (2 * cp.delta / om) * sn
    # Fixed point of the driven Heisenberg equation is -i s eta / (Omega_k N_k);
    # the displacement rotates with mu - nu = cos + i N_k sin, not exp(i Omega t).
    beta = alpha + 1j * s * cp.eta / (om * nk) * (1 - c - 1j * nk * sn)
    theta = (cp.eta**2 / (om * nk) + s * p.e_j * math.cos(p.phi_e)) * t
    return beta, mu, nu, theta


def branch_params(k: int, p: SystemParams, alpha: complex, t: float) -> SqueezedParams:
    """Squeezed-state parameters of ``exp(-i H_k t)|alpha>`` for branch ``k``.

    ``theta`` is the linear-in-time phase bookkeeping; it does not enter the
    modulus of any overlap.
    """
    beta, mu, nu, theta = _branch_arrays(k, p, alpha, float(t))
    return SqueezedParams(complex(beta), complex(mu), complex(nu), float(theta), tol=1e-9)


def _overlap(b1, m1, n1, b0, m0, n0):
    """``<b1,m1,n1|b0,m0,n0>`` with each state's vacuum amplitude real positive.

    In the Bargmann representation the state is ``exp(nu z^2 / 2 mu + beta z / mu)``
    up to normalization, and the overlap is a Gaussian integral.
    """
    denom = np.conj(m1) * m0 - np.conj(n1) * n0
    if np.any(np.abs(denom) < 1e-14):
        raise DegenerateDenominator("mu1* mu0 - nu1* nu0 vanishes")
    a1, a0 = n1 / m1, n0 / m0
    c1, c0 = b1 / m1, b0 / m0
    # 1 - conj(a1) a0 has positive real part (|a| < 1), so the principal root is
    # continuous in time and equals +1 when both states coincide.
    gram = 1 - np.conj(a1) * a0
    cross = (np.conj(c1) ** 2 * a0 + c0**2 * np.conj(a1) + 2 * np.conj(c1) * c0) / (2 * gram)

    def log_norm(b, m, n):
        return -0.5 * np.log(np.abs(m)) - 0.5 * np.abs(b) ** 2 - 0.5 * np.real(np.conj(b) ** 2 * n / np.conj(m))

    return np.exp(cross + log_norm(b1, m1, n1) + log_norm(b0, m0, n0)) / np.sqrt(gram)


def squeezed_overlap(p1: SqueezedParams, p0: SqueezedParams) -> complex:
    """``<d_1|d_0>`` for ``|d_k> = e^{i theta_k} |beta_k, mu_k, nu_k>``.

    Its modulus is ``|mu1* mu0 - nu1* nu0|^{-1/2} exp Re{ -|beta0|^2/2 - |beta1|^2/2
    + [2 beta1* beta0 + beta0^2 (nu1* mu0* - nu0* mu1*) + beta1*^2 (nu0 mu1 - nu1 mu0)]
    / (2 (mu1* mu0 - nu1* nu0)) }``.
    """
    ov = _overlap(p1.beta, p1.mu, p1.nu, p0.beta, p0.mu, p0.nu)
    return complex(ov * np.exp(1j * (p0.theta - p1.theta)))


def decoherence_factor(p: SystemParams, alpha: complex, t):
    """``D(t) = |<d_1(t)|d_0(t)>|`` for an initial coherent cavity state ``|alpha>``.

    Accepts a scalar or an array of times.
    """
    b0, m0, n0, _ = _branch_arrays(0, p, alpha, t)
    b1, m1, n1, _ = _branch_arrays(1, p, alpha, t)
    d = np.abs(_overlap(b1, m1, n1, b0, m0, n0))
    return float(d) if np.ndim(d) == 0 else d


def displacement_factor(p: SystemParams, t):
    """``D(t) = exp[-(8 eta^2 / omega^2) sin^2(omega t / 2)]``, valid when ``cos(phi_e) = 0``.

    Pure displacement: the branch coherent states separate by
    ``(4 eta / omega) |sin(omega t / 2)|``.
    """
    if abs(math.cos(p.phi_e)) > 1e-12:
        raise PreconditionViolated("displacement_factor needs cos(phi_e) = 0")
    eta = couplings(p).eta
    t = np.asarray(t, dtype=float)
    d = np.exp(-8 * eta**2 / p.omega**2 * np.sin(p.omega * t / 2) ** 2)
    return float(d) if d.ndim == 0 else d


def revival_period(p: SystemParams) -> float:
    """Time for the two branch rotations to realign: ``2 pi / |Omega_0 - Omega_1|``.

    Falls back to the free period ``2 pi / omega`` when delta vanishes.
    """
    delta = couplings(p).delta
    if abs(delta) < 1e-15 * p.omega:
        return 2 * math.pi / p.omega
    gap = abs(branch_frequencies(0, p).omega_k - branch_frequencies(1, p).omega_k)
    return 2 * math.pi / gap


def _curves(p: SystemParams, alphas, times, tag: str) -> list[TraceSeries]:
    times = np.asarray(times, dtype=float)
    return [TraceSeries(times, decoherence_factor(p, a, times), f"{tag} alpha={a}") for a in alphas]


def fig3_params(delta: float = DESK_DELTA, phi0: float = DESK_PHI0) -> SystemParams:
    """External flux off (phi_e = 0): only the squeezing coupling delta survives."""
    return desk_params(eta=0.0, delta=delta, phi0=phi0)


def fig4_params(eta: float = DESK_ETA, phi0: float = DESK_PHI0) -> SystemParams:
    """External flux at phi_e = pi/2: only the displacement coupling eta survives."""
    return desk_params(eta=eta, delta=0.0, phi0=phi0)


def fig3_dataset(p: SystemParams | None = None, alphas=(0, 1, 2, 3), times=None) -> list[TraceSeries]:
    """D(t) per alpha with only the second-order coupling (sin phi_e = 0)."""
    p = p or fig3_params()
    if abs(math.sin(p.phi_e)) > 1e-12:
        raise PreconditionViolated("fig3 curves need sin(phi_e) = 0")
    if times is None:
        times = np.linspace(0.0, 2 * revival_period(p), 2000)
    return _curves(p, alphas, times, "fig3")


def fig4_dataset(p: SystemParams | None = None, alphas=(0, 1, 2, 3), times=None) -> list[TraceSeries]:
    """D(t) per alpha with only the first-order coupling (cos phi_e = 0)."""
    p = p or fig4_params()
    if abs(math.cos(p.phi_e)) > 1e-12:
        raise PreconditionViolated("fig4 curves need cos(phi_e) = 0")
    if times is None:
        times = np.linspace(0.0, 2 * revival_period(p), 2000)
    return _curves(p, alphas, times, "fig4")
