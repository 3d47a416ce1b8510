"""Truncated Fock space and qubit tensor algebra.

Joint states live on ``qubit (x) cavity`` with the qubit index major, so the
amplitude of ``|q>|n>`` sits at ``q * (n_max + 1) + n`` for every cutoff.
All containers are immutable; their arrays are flagged read-only.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .errors import (
    ConfigError,
    InvalidBogoliubov,
    NotHermitian,
    SpaceMismatch,
    TruncationError,
)

#: Largest probability mass we are willing to lose to the Fock cutoff.
TRUNCATION_TOL = 1e-6


class Space(str, enum.Enum):
    QUBIT = "qubit"
    CAVITY = "cavity"
    JOINT = "qubit*cavity"


@dataclass(frozen=True)
class FockCutoff:
    """Highest retained photon number; the cavity space has ``n_max + 1`` levels."""

    n_max: int

    def __post_init__(self):
        if int(self.n_max) != self.n_max or self.n_max < 1:
            raise ConfigError(f"Fock cutoff must be an integer >= 1, got {self.n_max!r}")
        object.__setattr__(self, "n_max", int(self.n_max))

    @property
    def dim(self) -> int:
        return self.n_max + 1


def _as_cutoff(cutoff) -> FockCutoff | None:
    if cutoff is None or isinstance(cutoff, FockCutoff):
        return cutoff
    return FockCutoff(cutoff)


def dimension(space: Space, cutoff: FockCutoff | None) -> int:
    if space is Space.QUBIT:
        return 2
    if cutoff is None:
        raise ConfigError(f"space {space.value} needs a Fock cutoff")
    return cutoff.dim if space is Space.CAVITY else 2 * cutoff.dim


def _frozen(a, ndim: int) -> np.ndarray:
    a = np.array(a, dtype=complex)
    if a.ndim != ndim:
        raise ConfigError(f"expected a {ndim}-d array, got shape {a.shape}")
    a.setflags(write=False)
    return a


def _check_same(x, y):
    if x.space is not y.space or x.cutoff != y.cutoff:
        raise SpaceMismatch(
            f"{x.space.value}/{x.cutoff} vs {y.space.value}/{y.cutoff}"
        )


@dataclass(frozen=True, eq=False)
class StateVector:
    amplitudes: np.ndarray
    space: Space = Space.CAVITY
    cutoff: FockCutoff | None = None

    def __post_init__(self):
        object.__setattr__(self, "cutoff", _as_cutoff(self.cutoff))
        amps = _frozen(self.amplitudes, 1)
        if amps.shape[0] != dimension(self.space, self.cutoff):
            raise SpaceMismatch(
                f"{amps.shape[0]} amplitudes do not fit space {self.space.value}"
            )
        object.__setattr__(self, "amplitudes", amps)

    def __len__(self):
        return self.amplitudes.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalize(self) -> StateVector:
        n = self.norm()
        if n == 0.0:
            raise ConfigError("cannot normalize the zero vector")
        return StateVector(self.amplitudes / n, self.space, self.cutoff)

    def projector(self) -> DensityMatrix:
        v = self.amplitudes
        return DensityMatrix(np.outer(v, v.conj()), self.space, self.cutoff)

    def __mul__(self, c) -> StateVector:
        return StateVector(self.amplitudes * c, self.space, self.cutoff)

    __rmul__ = __mul__

    def __add__(self, other: StateVector) -> StateVector:
        _check_same(self, other)
        return StateVector(self.amplitudes + other.amplitudes, self.space, self.cutoff)

    def __sub__(self, other: StateVector) -> StateVector:
        return self + (-1) * other


@dataclass(frozen=True, eq=False)
class Operator:
    matrix: np.ndarray
    space: Space = Space.CAVITY
    cutoff: FockCutoff | None = None
    hermitian: bool = False

    def __post_init__(self):
        object.__setattr__(self, "cutoff", _as_cutoff(self.cutoff))
        m = _frozen(self.matrix, 2)
        d = dimension(self.space, self.cutoff)
        if m.shape != (d, d):
            raise SpaceMismatch(f"matrix shape {m.shape} does not fit space {self.space.value}")
        object.__setattr__(self, "matrix", m)
        if self.hermitian:
            scale = max(np.abs(m).max(), 1.0)
            if np.abs(m - m.conj().T).max() > 1e-12 * scale:
                raise NotHermitian("operator flagged Hermitian is not")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def dag(self) -> Operator:
        return Operator(self.matrix.conj().T, self.space, self.cutoff, self.hermitian)

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        m = self.matrix
        return np.abs(m - m.conj().T).max() <= tol * max(np.abs(m).max(), 1.0)

    def __matmul__(self, other):
        _check_same(self, other)
        if isinstance(other, StateVector):
            return StateVector(self.matrix @ other.amplitudes, self.space, self.cutoff)
        return Operator(self.matrix @ other.matrix, self.space, self.cutoff)

    def __add__(self, other: Operator) -> Operator:
        _check_same(self, other)
        return Operator(
            self.matrix + other.matrix,
            self.space,
            self.cutoff,
            self.hermitian and other.hermitian,
        )

    def __sub__(self, other: Operator) -> Operator:
        return self + (-1.0) * other

    def __neg__(self) -> Operator:
        return (-1.0) * self

    def __mul__(self, c) -> Operator:
        real = np.isreal(c)
        return Operator(self.matrix * c, self.space, self.cutoff, self.hermitian and bool(real))

    __rmul__ = __mul__

    def expect(self, psi: StateVector) -> complex:
        _check_same(self, psi)
        v = psi.amplitudes
        return complex(np.vdot(v, self.matrix @ v))


def commutator(x: Operator, y: Operator) -> Operator:
    return x @ y - y @ x


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    matrix: np.ndarray
    space: Space = Space.CAVITY
    cutoff: FockCutoff | None = None

    def __post_init__(self):
        object.__setattr__(self, "cutoff", _as_cutoff(self.cutoff))
        m = _frozen(self.matrix, 2)
        d = dimension(self.space, self.cutoff)
        if m.shape != (d, d):
            raise SpaceMismatch(f"matrix shape {m.shape} does not fit space {self.space.value}")
        tr = np.trace(m)
        if abs(tr - 1.0) > 1e-10:
            raise ConfigError(f"density matrix trace {tr} != 1")
        if np.abs(m - m.conj().T).max() > 1e-10:
            raise NotHermitian("density matrix is not Hermitian")
        if np.linalg.eigvalsh(m).min() < -1e-10:
            raise ConfigError("density matrix is not positive semidefinite")
        object.__setattr__(self, "matrix", m)

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))


# --------------------------------------------------------------------------
# canonical operators


def annihilation(cutoff) -> Operator:
    """``a`` on ``n_max + 1`` Fock levels: ``<n-1|a|n> = sqrt(n)``."""
    cutoff = _as_cutoff(cutoff)
    m = np.diag(np.sqrt(np.arange(1, cutoff.dim, dtype=float)), 1)
    return Operator(m, Space.CAVITY, cutoff)


def creation(cutoff) -> Operator:
    return annihilation(cutoff).dag()


def number(cutoff) -> Operator:
    cutoff = _as_cutoff(cutoff)
    return Operator(np.diag(np.arange(cutoff.dim, dtype=float)), Space.CAVITY, cutoff, True)


def identity(space: Space, cutoff=None) -> Operator:
    cutoff = _as_cutoff(cutoff)
    return Operator(np.eye(dimension(space, cutoff)), space, cutoff, True)


def quadrature(cutoff) -> Operator:
    """The Hermitian quadrature ``Q = -i (a - a^dag)``; the cavity flux is ``phi0 * Q``."""
    a = annihilation(cutoff).matrix
    return Operator(-1j * (a - a.T), Space.CAVITY, _as_cutoff(cutoff), True)


def qubit_ops() -> tuple[Operator, Operator, Operator, Operator]:
    """Return ``(sigma_x, sigma_z, sigma_plus, sigma_minus)`` in the charge basis.

    ``sigma_z = |0><0| - |1><1|`` and ``sigma_x = |0><1| + |1><0|``.  The ladder
    operators move along ``sigma_z``: ``sigma_plus = |0><1|`` raises the
    eigenvalue from -1 to +1, ``sigma_minus = |1><0|`` lowers it.
    """
    sx = Operator([[0, 1], [1, 0]], Space.QUBIT, None, True)
    sz = Operator([[1, 0], [0, -1]], Space.QUBIT, None, True)
    sp = Operator([[0, 1], [0, 0]], Space.QUBIT)
    sm = Operator([[0, 0], [1, 0]], Space.QUBIT)
    return sx, sz, sp, sm


def qubit_basis(q: int) -> StateVector:
    v = np.zeros(2, dtype=complex)
    v[q] = 1.0
    return StateVector(v, Space.QUBIT)


def sigma_x_eigenstate(k: int) -> StateVector:
    """Normalized ``(|0>_q + (-1)^k |1>_q) / sqrt(2)``, the sigma_x eigenvalue ``(-1)^k`` state."""
    return StateVector(np.array([1.0, (-1.0) ** k]) / np.sqrt(2.0), Space.QUBIT)


def fock(n: int, cutoff) -> StateVector:
    cutoff = _as_cutoff(cutoff)
    if not 0 <= n <= cutoff.n_max:
        raise ConfigError(f"Fock level {n} outside 0..{cutoff.n_max}")
    v = np.zeros(cutoff.dim, dtype=complex)
    v[n] = 1.0
    return StateVector(v, Space.CAVITY, cutoff)


def tensor(q, c):
    """Qubit-major Kronecker product of a qubit object with a cavity object."""
    if q.space is not Space.QUBIT or c.space is not Space.CAVITY:
        raise SpaceMismatch("tensor expects (qubit, cavity) factors")
    if isinstance(q, StateVector) and isinstance(c, StateVector):
        return StateVector(np.kron(q.amplitudes, c.amplitudes), Space.JOINT, c.cutoff)
    if isinstance(q, Operator) and isinstance(c, Operator):
        return Operator(
            np.kron(q.matrix, c.matrix), Space.JOINT, c.cutoff, q.hermitian and c.hermitian
        )
    if isinstance(q, DensityMatrix) and isinstance(c, DensityMatrix):
        return DensityMatrix(np.kron(q.matrix, c.matrix), Space.JOINT, c.cutoff)
    raise TypeError(f"cannot tensor {type(q).__name__} with {type(c).__name__}")


def partial_trace(rho: DensityMatrix, keep: str | Space) -> DensityMatrix:
    """Trace out one factor of a joint density matrix, keeping ``"qubit"`` or ``"cavity"``."""
    keep = Space(keep)
    if rho.space is not Space.JOINT or keep is Space.JOINT:
        raise SpaceMismatch("partial_trace needs a joint state and keep in {qubit, cavity}")
    d = rho.cutoff.dim
    r = rho.matrix.reshape(2, d, 2, d)
    if keep is Space.QUBIT:
        return DensityMatrix(np.einsum("injn->ij", r), Space.QUBIT)
    return DensityMatrix(np.einsum("inim->nm", r), Space.CAVITY, rho.cutoff)


def overlap(psi1: StateVector, psi2: StateVector) -> complex:
    """``<psi1|psi2>``, conjugate-linear in the first argument."""
    _check_same(psi1, psi2)
    return complex(np.vdot(psi1.amplitudes, psi2.amplitudes))


# --------------------------------------------------------------------------
# Gaussian states


def coherent_state(alpha: complex, cutoff, tol: float = TRUNCATION_TOL) -> StateVector:
    """Coherent state ``|alpha>`` truncated at the cutoff and renormalized.

    Raises TruncationError when the discarded Poisson tail exceeds ``tol``.
    """
    cutoff = _as_cutoff(cutoff)
    nbar = abs(alpha) ** 2
    lost = float(stats.poisson.sf(cutoff.n_max, nbar)) if nbar > 0 else 0.0
    if lost > tol:
        raise TruncationError(
            f"coherent state |alpha|={abs(alpha):.3g} loses {lost:.2e} beyond n_max={cutoff.n_max}"
        )
    c = np.empty(cutoff.dim, dtype=complex)
    c[0] = np.exp(-nbar / 2)
    for n in range(cutoff.n_max):
        c[n + 1] = c[n] * alpha / np.sqrt(n + 1)
    return StateVector(c / np.linalg.norm(c), Space.CAVITY, cutoff)


@dataclass(frozen=True)
class SqueezedParams:
    """Eigenvalue ``beta`` of ``A = mu a - nu a^dag`` plus an extra phase ``theta``.

    The state ``|beta, mu, nu>`` is fixed up to phase by ``A|.> = beta|.>``; we
    take ``<0|beta, mu, nu>`` real and positive and carry ``theta`` separately.
    """

    beta: complex
    mu: complex
    nu: complex
    theta: float = 0.0
    tol: float = field(default=1e-9, repr=False, compare=False)

    def __post_init__(self):
        defect = abs(self.mu) ** 2 - abs(self.nu) ** 2 - 1.0
        if not np.isfinite(defect) or abs(defect) > self.tol:
            raise InvalidBogoliubov(f"|mu|^2 - |nu|^2 - 1 = {defect:.3e}")


def _bogoliubov_recursion(p: SqueezedParams, length: int) -> np.ndarray:
    c = np.zeros(length, dtype=complex)
    c[0] = 1.0
    if length > 1:
        c[1] = p.beta * c[0] / p.mu
    for n in range(1, length - 1):
        c[n + 1] = (p.beta * c[n] + p.nu * np.sqrt(n) * c[n - 1]) / (p.mu * np.sqrt(n + 1))
    return c


def squeezed_state(p: SqueezedParams, cutoff, tol: float = TRUNCATION_TOL) -> StateVector:
    """Normalized eigenstate of ``mu a - nu a^dag`` with eigenvalue ``beta``.

    Amplitudes follow ``mu sqrt(n+1) c[n+1] - nu sqrt(n) c[n-1] = beta c[n]``.
    The tail is estimated by running the recursion well past the cutoff, which
    keeps this path free of any closed-form normalization.  The ``theta``
    phase is not applied.
    """
    cutoff = _as_cutoff(cutoff)
    ext = max(2 * cutoff.dim, cutoff.dim + 80)
    c = _bogoliubov_recursion(p, ext)
    w = np.abs(c) ** 2
    total = w.sum()
    if not np.isfinite(total):
        raise TruncationError("squeezed-state recursion overflowed")
    lost = w[cutoff.dim:].sum() / total
    if lost > tol:
        raise TruncationError(
            f"squeezed state loses {lost:.2e} beyond n_max={cutoff.n_max}"
        )
    c = c[: cutoff.dim]
    return StateVector(c / np.linalg.norm(c), Space.CAVITY, cutoff)


def top_occupancy(psi: StateVector, levels: int = 2) -> float:
    """Probability in the highest ``levels`` Fock states (summed over the qubit)."""
    v = np.abs(psi.amplitudes) ** 2
    if psi.space is Space.JOINT:
        v = v.reshape(2, -1).sum(axis=0)
    return float(v[-levels:].sum())
