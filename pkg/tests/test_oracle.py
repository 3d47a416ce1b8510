import ast
import math
from pathlib import Path

import numpy as np
import pytest

import qcav.oracle
from qcav.errors import TruncationError
from qcav.fockspace import quadrature
from qcav.gaussian import decoherence_factor, revival_period
from qcav.oracle import (
    EDGE_TOL,
    convergence_order,
    expansion_error,
    numeric_decoherence,
    numeric_transfer,
)
from qcav.physical import SystemParams, couplings, derive_device, desk_params, desk_storage_params
from qcav.protocol import QubitAmplitudes


def test_oracle_imports_only_numeric_layers():
    tree = ast.parse(Path(qcav.oracle.__file__).read_text())
    imported = {node.module for node in ast.walk(tree) if isinstance(node, ast.ImportFrom)}
    assert imported <= {"__future__", "errors", "evolution", "fockspace", "hamiltonians", "physical"}


def test_numeric_decoherence_starts_at_one(desk):
    assert numeric_decoherence(desk, 1.0, [0.0]).values[0] == pytest.approx(1.0, abs=1e-12)


def test_numeric_decoherence_uncoupled():
    p = SystemParams(e_c=4, e_j=1, n_g=0.5, phi_e=0.4, phi0=0.0, omega=1.0, cutoff=30)
    d = numeric_decoherence(p, 1.5, np.linspace(0, 20, 50)).values
    np.testing.assert_allclose(d, 1.0, atol=1e-12)


@pytest.mark.parametrize("alpha", [0.0, 1.0, 2.0])
def test_numeric_decoherence_matches_analytic(desk, alpha):
    t = np.linspace(0, revival_period(desk), 200)
    analytic = decoherence_factor(desk, alpha, t)
    assert np.abs(numeric_decoherence(desk, alpha, t, quadratic=True).values - analytic).max() <= 1e-6
    assert np.abs(numeric_decoherence(desk, alpha, t).values - analytic).max() <= 1e-4


def test_truncation_error_reports_index():
    p = desk_params(cutoff=25)
    with pytest.raises(TruncationError) as info:
        numeric_decoherence(p, 2.0, np.linspace(0, 10, 101))
    assert info.value.index is not None and info.value.index > 0


def test_transfer_peak_and_bounds():
    p = desk_storage_params()
    eta = couplings(p).eta
    t = np.linspace(0, 2 * math.pi / eta, 400)
    vals = numeric_transfer(p, QubitAmplitudes.equal(), t).values
    assert vals.min() >= 0 and vals.max() <= 1 + 1e-12
    peak = numeric_transfer(p, QubitAmplitudes.equal(), [math.pi / (2 * eta)]).values[0]
    assert peak == pytest.approx(1.0, abs=1e-8)


def test_expansion_error_vanishes_without_flux(strong):
    assert expansion_error(strong.with_(phi0=0.0)) == 0


def test_expansion_error_cubic_ratio(strong):
    p = strong.with_(phi0=0.2, phi_e=math.pi / 4)
    ratio = expansion_error(p) / expansion_error(p.with_(phi0=0.1))
    assert 6 <= ratio <= 10


def test_expansion_error_device_scale_flux_off():
    p = derive_device(phi_e=0.0).params
    assert expansion_error(p) <= 1e-14 * p.e_j


def test_expansion_error_device_scale_flux_on():
    # at phi_e = pi/2 the leading residual is the cubic term E_J sin(phi_e) phi0^3 Q^3 / 6
    p = derive_device().params
    q = quadrature(p.cutoff).matrix
    keep = slice(0, p.cutoff.n_max // 2 + 1)
    cubic = p.e_j * p.phi0**3 / 6 * np.abs((q @ q @ q)[keep, keep]).max()
    assert expansion_error(p) == pytest.approx(cubic, rel=1e-2)


def test_convergence_order(strong):
    orders = convergence_order(strong.with_(phi_e=math.pi / 4), [0.2, 0.1, 0.05])
    assert np.all(np.abs(orders - 3.0) <= 0.3)


def test_edge_tolerance_constant():
    assert EDGE_TOL == 1e-8
