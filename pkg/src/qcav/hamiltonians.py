"""Hamiltonian builders on the truncated qubit (x) cavity space (hbar = 1).

The cavity flux through the SQUID is ``phi_f = phi0 * Q`` with the Hermitian
quadrature ``Q = -i (a - a^dag)``.  The Josephson term ``cos(phi_e + phi_f)``
is evaluated exactly on the truncated space by diagonalizing ``Q``.
"""

from __future__ import annotations

import enum
import math
import warnings

import numpy as np

from .errors import GateChargeNotTuned
from .fockspace import (
    Operator,
    Space,
    annihilation,
    identity,
    number,
    qubit_ops,
    quadrature,
    tensor,
)
from .physical import SystemParams, couplings


class HamiltonianKind(enum.Enum):
    FULL_COSINE = "full"
    JAYNES_CUMMINGS = "jc"
    MEASUREMENT = "measurement"
    BRANCH = "branch"
    EXPANDED_SECOND_ORDER = "expanded"


def _require_degeneracy(p: SystemParams):
    if not p.at_degeneracy:
        raise GateChargeNotTuned(f"needs n_g = 1/2, got n_g = {p.n_g:g}")


def flux_cosine(p: SystemParams, drop_offset: bool = False) -> Operator:
    """``cos(phi_e + phi0 Q)`` on the cavity, exact on the truncated space.

    With ``drop_offset`` the scalar ``cos(phi_e)`` is removed, computed as
    ``-2 sin(phi0 q / 2) sin(phi_e + phi0 q / 2)`` so that a large E_J does not
    swamp the flux-dependent part in rounding.
    """
    if p.phi0 == 0:
        scalar = 0.0 if drop_offset else math.cos(p.phi_e)
        return Operator(scalar * np.eye(p.cutoff.dim), Space.CAVITY, p.cutoff, True)
    q_op = quadrature(p.cutoff).matrix
    q, v = np.linalg.eigh(q_op)
    if drop_offset:
        f = -2.0 * np.sin(p.phi0 * q / 2) * np.sin(p.phi_e + p.phi0 * q / 2)
    else:
        f = np.cos(p.phi_e + p.phi0 * q)
    m = (v * f) @ v.conj().T
    return Operator((m + m.conj().T) / 2, Space.CAVITY, p.cutoff, True)


def _quadrature_squared(cutoff) -> Operator:
    """Normal-form ``Q^2 = a a^dag + a^dag a - a a - a^dag a^dag`` (not ``Q @ Q``)."""
    a = annihilation(cutoff)
    ad = a.dag()
    m = (a @ ad + ad @ a - a @ a - ad @ ad).matrix
    return Operator(m, Space.CAVITY, a.cutoff, True)


def build_full(p: SystemParams) -> Operator:
    """Charge qubit with flux-tunable Josephson term and the cavity mode.

    ``H = 4 E_C (n_g - 1/2) sigma_z - E_J cos(phi_e + phi0 Q) sigma_x + omega a^dag a``
    """
    sx, sz, _, _ = qubit_ops()
    cav_id = identity(Space.CAVITY, p.cutoff)
    h = (
        4 * p.e_c * (p.n_g - 0.5) * tensor(sz, cav_id)
        - p.e_j * tensor(sx, flux_cosine(p))
        + p.omega * tensor(identity(Space.QUBIT), number(p.cutoff))
    )
    return Operator(h.matrix, Space.JOINT, p.cutoff, hermitian=True)


def build_jc(p: SystemParams, rtol: float = 1e-6) -> Operator:
    """Resonant Jaynes-Cummings model of the storage step.

    Uses the storage labelling where ``|0>_q`` is the lower qubit level::

        H = -(w_q / 2) sigma_z + i eta (a sigma_minus - a^dag sigma_plus) + omega a^dag a

    with ``w_q = 8 E_C (n_g - 1/2)``.  The sign of the exchange term is the one
    under which ``|1>_q|0>_c`` evolves into ``cos(eta t)|1,0> - sin(eta t)|0,1>``.
    It conserves ``a^dag a + |1><1|_q``.
    """
    cp = couplings(p)
    if abs(cp.qubit_splitting - p.omega) > rtol * p.omega:
        warnings.warn(
            f"qubit splitting {cp.qubit_splitting:.6g} is off resonance with omega {p.omega:.6g}",
            stacklevel=2,
        )
    _, sz, sp, sm = qubit_ops()
    a = annihilation(p.cutoff)
    ad = a.dag()
    h = (
        -0.5 * cp.qubit_splitting * tensor(sz, identity(Space.CAVITY, p.cutoff))
        + 1j * cp.eta * (tensor(sm, a) - tensor(sp, ad))
        + p.omega * tensor(identity(Space.QUBIT), number(p.cutoff))
    )
    return Operator(h.matrix, Space.JOINT, p.cutoff, hermitian=True)


def jc_excitation_number(cutoff) -> Operator:
    """``a^dag a + |1><1|_q``, conserved by :func:`build_jc`."""
    _, sz, _, _ = qubit_ops()
    excited = 0.5 * (identity(Space.QUBIT) - sz)
    return tensor(excited, identity(Space.CAVITY, cutoff)) + tensor(identity(Space.QUBIT), number(cutoff))


def build_measurement(p: SystemParams) -> Operator:
    """``-E_J cos(phi_e + phi0 Q) sigma_x + omega a^dag a`` at the degeneracy point."""
    _require_degeneracy(p)
    sx, _, _, _ = qubit_ops()
    h = -p.e_j * tensor(sx, flux_cosine(p)) + p.omega * tensor(identity(Space.QUBIT), number(p.cutoff))
    return Operator(h.matrix, Space.JOINT, p.cutoff, hermitian=True)


def build_branch(k: int, p: SystemParams, include_offset: bool = True) -> Operator:
    """Cavity Hamiltonian seen by the qubit in sigma_x eigenstate ``k``.

    ``k = 0`` is the +1 eigenstate, ``k = 1`` the -1 eigenstate:
    ``H_k = -(-1)^k E_J cos(phi_e + phi0 Q) + omega a^dag a``.
    The scalar ``-(-1)^k E_J cos(phi_e)`` only contributes a global phase and
    is left out when ``include_offset`` is false.
    """
    _require_degeneracy(p)
    if k not in (0, 1):
        raise ValueError("branch index must be 0 or 1")
    s = 1 - 2 * k
    cos_op = flux_cosine(p, drop_offset=not include_offset)
    h = -s * p.e_j * cos_op + p.omega * number(p.cutoff)
    return Operator(h.matrix, Space.CAVITY, p.cutoff, hermitian=True)


def build_expanded(p: SystemParams) -> Operator:
    """Josephson cosine expanded to second order in the cavity flux::

        H = -[E_J cos(phi_e) + delta (a a + a^dag a^dag - a a^dag - a^dag a)
              + i eta (a - a^dag)] sigma_x + omega a^dag a

    from ``cos(phi_e + phi_f) ~ cos(phi_e)(1 - phi_f^2 / 2) - sin(phi_e) phi_f``.
    The ``sigma_z`` charging term of the full model is kept; it vanishes at
    ``n_g = 1/2``.
    """
    cp = couplings(p)
    sx, sz, _, _ = qubit_ops()
    a = annihilation(p.cutoff)
    ad = a.dag()
    cav = (
        p.e_j * math.cos(p.phi_e) * identity(Space.CAVITY, p.cutoff)
        - cp.delta * _quadrature_squared(p.cutoff)
        + 1j * cp.eta * (a - ad)
    )
    h = (
        4 * p.e_c * (p.n_g - 0.5) * tensor(sz, identity(Space.CAVITY, p.cutoff))
        - tensor(sx, cav)
        + p.omega * tensor(identity(Space.QUBIT), number(p.cutoff))
    )
    return Operator(h.matrix, Space.JOINT, p.cutoff, hermitian=True)


def build_expanded_branch(k: int, p: SystemParams, include_offset: bool = True) -> Operator:
    """Branch ``k`` of :func:`build_expanded`: ``omega a^dag a + s (delta Q^2 + eta Q - E_J cos phi_e)``."""
    _require_degeneracy(p)
    if k not in (0, 1):
        raise ValueError("branch index must be 0 or 1")
    s = 1 - 2 * k
    cp = couplings(p)
    h = p.omega * number(p.cutoff) + s * (
        cp.delta * _quadrature_squared(p.cutoff) + cp.eta * quadrature(p.cutoff)
    )
    if include_offset:
        h = h - s * p.e_j * math.cos(p.phi_e) * identity(Space.CAVITY, p.cutoff)
    return Operator(h.matrix, Space.CAVITY, p.cutoff, hermitian=True)


def sigma_x_rotation(cutoff) -> Operator:
    """Unitary whose first/second block columns are the sigma_x = +1/-1 sectors."""
    u = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)
    return tensor(Operator(u, Space.QUBIT), identity(Space.CAVITY, cutoff))


def build(kind: HamiltonianKind | str, p: SystemParams, k: int | None = None) -> Operator:
    kind = HamiltonianKind(kind)
    if kind is HamiltonianKind.FULL_COSINE:
        return build_full(p)
    if kind is HamiltonianKind.JAYNES_CUMMINGS:
        return build_jc(p)
    if kind is HamiltonianKind.MEASUREMENT:
        return build_measurement(p)
    if kind is HamiltonianKind.BRANCH:
        if k is None:
            raise ValueError("branch Hamiltonian needs k")
        return build_branch(k, p)
    return build_expanded(p)
