"""Qubit -> cavity storage: preparation, resonant transfer and the transfer probability.

Convention: the storage step runs under :func:`qcav.hamiltonians.build_jc`, whose
exchange sign sends ``|1>_q|0>_c`` to ``cos(eta t)|1,0> - sin(eta t)|0,1>``.  With
that sign the evolved state, the target state and the closed-form probability
below all agree, and ``P(0) = 1/4`` for equal amplitudes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotNormalized, ZeroCoupling
from .evolution import Spectral, TraceSeries
from .fockspace import FockCutoff, Space, StateVector, fock, overlap, qubit_basis, tensor
from .hamiltonians import build_jc
from .physical import SystemParams, couplings, storage_time


@dataclass(frozen=True)
class QubitAmplitudes:
    alpha: complex
    beta: complex

    def __post_init__(self):
        n = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(n - 1.0) > 1e-10:
            raise NotNormalized(f"|alpha|^2 + |beta|^2 = {n!r}")

    @classmethod
    def equal(cls) -> QubitAmplitudes:
        return cls(1 / math.sqrt(2), 1 / math.sqrt(2))


def _cutoff(cutoff) -> FockCutoff:
    return cutoff if isinstance(cutoff, FockCutoff) else FockCutoff(cutoff)


def initial_state(q: QubitAmplitudes, cutoff) -> StateVector:
    """``(alpha|0>_q + beta|1>_q) (x) |0>_c``."""
    cutoff = _cutoff(cutoff)
    qubit = StateVector([q.alpha, q.beta], Space.QUBIT)
    return tensor(qubit, fock(0, cutoff))


def _eta(p: SystemParams) -> float:
    eta = couplings(p).eta
    if eta == 0:
        raise ZeroCoupling("eta = 0: the storage protocol never completes")
    return eta


def target_state(q: QubitAmplitudes, p: SystemParams, cutoff=None) -> StateVector:
    """State reached at ``t = pi / (2 eta)``: ``|0>_q (x) (alpha e^{i x}|0> - beta e^{-i x}|1>)``, ``x = omega pi / (4 eta)``."""
    cutoff = _cutoff(cutoff or p.cutoff)
    x = p.omega * math.pi / (4 * _eta(p))
    cav = q.alpha * np.exp(1j * x) * fock(0, cutoff) - q.beta * np.exp(-1j * x) * fock(1, cutoff)
    return tensor(qubit_basis(0), cav)


def transfer_probability_analytic(p: SystemParams, t):
    """Probability of finding the system in the stored state, equal qubit amplitudes.

    ``P = 1/4 + 1/2 cos(omega t - omega pi / (2 eta)) sin(eta t) + 1/4 sin^2(eta t)``
    """
    eta = _eta(p)
    t = np.asarray(t, dtype=float)
    w = p.omega
    prob = 0.25 + 0.5 * np.cos(w * t - w * math.pi / (2 * eta)) * np.sin(eta * t) + 0.25 * np.sin(eta * t) ** 2
    prob = np.maximum(prob, 0.0)  # round-off only; the exact value is >= 0
    return float(prob) if prob.ndim == 0 else prob


def storage_grid(p: SystemParams, n_points: int = 2001, periods: float = 2.0) -> np.ndarray:
    """Uniform grid on ``[0, periods * pi/(2 eta)]`` that hits the transfer time exactly when it can."""
    t_store = storage_time(_eta(p))
    grid = np.linspace(0.0, periods * t_store, n_points)
    k = (n_points - 1) / periods
    if float(k).is_integer():
        grid[int(k)] = t_store
    return grid


@dataclass(frozen=True)
class StorageMap:
    """Fidelities of the two basis transfers at ``t = pi / (2 eta)`` (phases ignored)."""

    ground: float    # |0,0> -> |0,0>
    excited: float   # |1,0> -> |0,1>
    time: float


def storage_map(p: SystemParams) -> StorageMap:
    cutoff = p.cutoff
    t = storage_time(_eta(p))
    sp = Spectral(build_jc(p), "jc")
    out = []
    for q_in, n_out in ((0, 0), (1, 1)):
        start = tensor(qubit_basis(q_in), fock(0, cutoff))
        want = tensor(qubit_basis(0), fock(n_out, cutoff))
        end = StateVector(sp.evolve(start, [t])[0], Space.JOINT, cutoff)
        out.append(abs(overlap(want, end)) ** 2)
    return StorageMap(out[0], out[1], t)


@dataclass(frozen=True)
class Fig2Data:
    analytic: TraceSeries
    numeric: TraceSeries

    @property
    def times(self) -> np.ndarray:
        return self.analytic.times

    def max_abs_diff(self) -> float:
        return float(np.max(np.abs(self.analytic.values - self.numeric.values)))


def fig2_dataset(p: SystemParams, times=None) -> Fig2Data:
    """Transfer probability for equal qubit amplitudes, closed form and JC evolution."""
    from .oracle import numeric_transfer

    times = storage_grid(p) if times is None else np.asarray(times, dtype=float)
    analytic = TraceSeries(times, transfer_probability_analytic(p, times), "P_analytic")
    return Fig2Data(analytic, numeric_transfer(p, QubitAmplitudes.equal(), times))
