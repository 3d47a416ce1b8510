"""Brute-force reference computations in the truncated Fock basis.

Nothing here touches the closed-form layer (:mod:`qcav.gaussian`,
:mod:`qcav.protocol`); states are built from Fock amplitudes and propagated
with dense eigendecompositions.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import TruncationError, ZeroCoupling
from .evolution import Spectral, TraceSeries
from .fockspace import Space, coherent_state, fock, qubit_basis, tensor, top_occupancy, StateVector
from .hamiltonians import build_branch, build_expanded, build_expanded_branch, build_full, build_jc
from .physical import SystemParams, couplings

#: Largest allowed population of the two highest Fock levels during a run.
EDGE_TOL = 1e-8


def _check_edge(rows: np.ndarray, joint: bool, label: str):
    p = np.abs(rows) ** 2
    if joint:
        p = p.reshape(len(rows), 2, -1).sum(axis=1)
    edge = p[:, -2:].sum(axis=1)
    bad = np.flatnonzero(edge >= EDGE_TOL)
    if bad.size:
        i = int(bad[0])
        raise TruncationError(
            f"{label}: top-two Fock occupancy {edge[i]:.2e} at time index {i}", index=i
        )


def numeric_decoherence(p: SystemParams, alpha: complex, times, quadratic: bool = False) -> TraceSeries:
    """``|<alpha| e^{i H_1 t} e^{-i H_0 t} |alpha>|`` from the branch Hamiltonians.

    ``quadratic=False`` uses the exact flux cosine; ``True`` the second-order
    expansion.  Scalar offsets are dropped since they only add global phases.
    """
    times = np.asarray(times, dtype=float)
    build = build_expanded_branch if quadratic else build_branch
    psi0 = coherent_state(alpha, p.cutoff)
    rows = []
    for k in (0, 1):
        r = Spectral(build(k, p, include_offset=False), f"branch{k}").evolve(psi0, times)
        _check_edge(r, False, f"branch {k}")
        rows.append(r)
    d = np.abs(np.einsum("ij,ij->i", rows[1].conj(), rows[0]))
    return TraceSeries(times, d, f"D_numeric alpha={alpha}")


def numeric_transfer(p: SystemParams, q, times) -> TraceSeries:
    """``|<target| e^{-i H_JC t} |initial>|^2`` with ``q`` carrying ``alpha`` and ``beta``."""
    eta = couplings(p).eta
    if eta == 0:
        raise ZeroCoupling("eta = 0")
    times = np.asarray(times, dtype=float)
    cutoff = p.cutoff
    initial = tensor(StateVector([q.alpha, q.beta], Space.QUBIT), fock(0, cutoff))
    x = p.omega * math.pi / (4 * eta)
    cav = q.alpha * np.exp(1j * x) * fock(0, cutoff) - q.beta * np.exp(-1j * x) * fock(1, cutoff)
    target = tensor(qubit_basis(0), cav)
    rows = Spectral(build_jc(p), "jc").evolve(initial, times)
    _check_edge(rows, True, "jc")
    prob = np.abs(rows @ target.amplitudes.conj()) ** 2
    return TraceSeries(times, prob, "P_numeric")


def expansion_error(p: SystemParams) -> float:
    """Max-abs entry of ``build_full - build_expanded`` at ``n_g = 1/2`` on the lower-half Fock block.

    The cosine of the truncated quadrature is only faithful away from the
    cutoff, so rows/columns with ``n > n_max / 2`` are excluded.
    """
    q = p.with_(n_g=0.5)
    diff = (build_full(q) - build_expanded(q)).matrix
    d = q.cutoff.dim
    keep = np.arange(d) <= q.cutoff.n_max // 2
    idx = np.concatenate([np.flatnonzero(keep), d + np.flatnonzero(keep)])
    return float(np.abs(diff[np.ix_(idx, idx)]).max())


def convergence_order(p: SystemParams, phi0s) -> np.ndarray:
    """``log2`` of successive expansion-error ratios along a halving sequence of phi0."""
    errs = np.array([expansion_error(p.with_(phi0=f)) for f in phi0s])
    return np.log2(errs[:-1] / errs[1:])


def branch_state(k: int, p: SystemParams, alpha: complex, t: float, quadratic: bool = True) -> StateVector:
    """``exp(-i H_k t)|alpha>`` in the Fock basis, offset phase dropped."""
    build = build_expanded_branch if quadratic else build_branch
    psi0 = coherent_state(alpha, p.cutoff)
    row = Spectral(build(k, p, include_offset=False)).evolve(psi0, [t])[0]
    out = StateVector(row, Space.CAVITY, p.cutoff)
    if top_occupancy(out) >= EDGE_TOL:
        raise TruncationError(f"branch {k} state reaches the Fock cutoff")
    return out
