"""Unitary time evolution ``exp(-i H t)`` via one cached eigendecomposition per Hamiltonian."""

from __future__ import annotations

import collections
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import NotHermitian, SpaceMismatch
from .fockspace import DensityMatrix, Operator, Space, StateVector, partial_trace

#: Work counters: ``eigh`` (decompositions) and ``matvec`` (state applications).
counters: collections.Counter = collections.Counter()


class Spectral:
    """Eigendecomposition of a Hermitian operator, reused for every requested time."""

    def __init__(self, h: Operator, label: str = ""):
        if not h.is_hermitian():
            raise NotHermitian("time evolution needs a Hermitian Hamiltonian")
        self.hamiltonian = h
        self.label = label

    @cached_property
    def _eig(self):
        counters["eigh"] += 1
        m = self.hamiltonian.matrix
        return np.linalg.eigh((m + m.conj().T) / 2)

    @property
    def energies(self) -> np.ndarray:
        return self._eig[0]

    def unitary(self, t: float) -> np.ndarray:
        w, v = self._eig
        return (v * np.exp(-1j * w * t)) @ v.conj().T

    def evolve(self, psi0: StateVector, times) -> np.ndarray:
        """Rows are the amplitudes of ``exp(-i H t) psi0`` for each ``t``."""
        if psi0.space is not self.hamiltonian.space or psi0.cutoff != self.hamiltonian.cutoff:
            raise SpaceMismatch("state and Hamiltonian live on different spaces")
        w, v = self._eig
        c0 = v.conj().T @ psi0.amplitudes
        times = np.atleast_1d(np.asarray(times, dtype=float))
        phases = np.exp(-1j * np.outer(times, w))
        counters["matvec"] += len(times)
        return (phases * c0) @ v.T


@dataclass(frozen=True)
class Propagator:
    unitary: Operator
    time: float
    source: str = ""


def propagator(h: Operator, t: float, spectral: Spectral | None = None) -> Propagator:
    """``U = exp(-i H t)``; pass ``spectral`` to reuse an existing decomposition."""
    sp = spectral or Spectral(h)
    return Propagator(Operator(sp.unitary(t), h.space, h.cutoff), float(t), sp.label)


def evolve_series(h: Operator, psi0: StateVector, times, spectral: Spectral | None = None) -> list[StateVector]:
    sp = spectral or Spectral(h)
    rows = sp.evolve(psi0, times)
    return [StateVector(r, psi0.space, psi0.cutoff) for r in rows]


def reduced_qubit(psi: StateVector) -> DensityMatrix:
    if psi.space is not Space.JOINT:
        raise SpaceMismatch("reduced_qubit needs a qubit*cavity state")
    return partial_trace(psi.projector(), Space.QUBIT)


def reduced_cavity(psi: StateVector) -> DensityMatrix:
    if psi.space is not Space.JOINT:
        raise SpaceMismatch("reduced_cavity needs a qubit*cavity state")
    return partial_trace(psi.projector(), Space.CAVITY)


@dataclass(frozen=True)
class TraceSeries:
    """A sampled observable: strictly increasing ``times`` and finite ``values``."""

    times: np.ndarray
    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        t = np.array(self.times, dtype=float)
        v = np.array(self.values, dtype=float)
        if t.ndim != 1 or t.shape != v.shape:
            raise ValueError("times and values must be 1-d arrays of equal length")
        if len(t) > 1 and np.any(np.diff(t) <= 0):
            raise ValueError("times must be strictly increasing")
        if not np.all(np.isfinite(v)):
            raise ValueError(f"non-finite values in series {self.label!r}")
        t.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return len(self.times)
