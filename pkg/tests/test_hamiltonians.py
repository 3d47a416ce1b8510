import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcav.errors import GateChargeNotTuned
from qcav.fockspace import (
    Space,
    annihilation,
    commutator,
    fock,
    identity,
    number,
    qubit_basis,
    qubit_ops,
    tensor,
)
from qcav.fockspace import overlap, squeezed_state
from qcav.gaussian import branch_params
from qcav.hamiltonians import (
    HamiltonianKind,
    build,
    build_branch,
    build_expanded,
    build_expanded_branch,
    build_full,
    build_jc,
    build_measurement,
    flux_cosine,
    jc_excitation_number,
    sigma_x_rotation,
)
from qcav.oracle import branch_state
from qcav.physical import SystemParams, couplings, desk_storage_params


def params(**kw):
    base = dict(e_c=4.0, e_j=1.0, n_g=0.5, phi_e=0.7, phi0=0.05, omega=1.0, cutoff=12)
    base.update(kw)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return SystemParams(**base)


def hermitian_error(op):
    m = op.matrix
    return np.abs(m - m.conj().T).max() / max(np.abs(m).max(), 1e-300)


def test_full_at_zero_flux_is_scalar_cosine():
    p = params(phi0=0.0, n_g=0.6)
    sx, sz, _, _ = qubit_ops()
    cid = identity(Space.CAVITY, p.cutoff)
    expected = (4 * p.e_c * 0.1 * tensor(sz, cid) - p.e_j * math.cos(p.phi_e) * tensor(sx, cid)
                + p.omega * tensor(identity(Space.QUBIT), number(p.cutoff)))
    np.testing.assert_allclose(build_full(p).matrix, expected.matrix, atol=1e-13)


def test_vacuum_cosine_expectation():
    p = params(phi_e=0.0, phi0=0.3, cutoff=10)
    c = flux_cosine(p)
    assert abs(c.expect(fock(0, 10)) - math.exp(-0.3**2 / 2)) <= 1e-6


@given(st.floats(0, 2 * math.pi), st.floats(0, 0.2), st.floats(0, 1), st.floats(0.1, 3))
def test_builders_hermitian(phi_e, phi0, n_g, omega):
    p = params(phi_e=phi_e, phi0=phi0, n_g=n_g, omega=omega)
    assert hermitian_error(build_full(p)) <= 1e-12
    assert hermitian_error(build_expanded(p)) <= 1e-12
    q = p.with_(n_g=0.5)
    for k in (0, 1):
        assert hermitian_error(build_branch(k, q)) <= 1e-12
        assert hermitian_error(build_expanded_branch(k, q)) <= 1e-12
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert hermitian_error(build_jc(p)) <= 1e-12


def _jc_params(eta_ratio=0.02, cutoff=8):
    return desk_storage_params(ratio=1 / eta_ratio, cutoff=cutoff)


def test_jc_conserves_excitation_number():
    p = _jc_params()
    h = build_jc(p)
    assert np.abs(commutator(h, jc_excitation_number(p.cutoff)).matrix).max() <= 1e-12


def test_jc_uncoupled_is_diagonal():
    p = _jc_params().with_(phi0=0.0)
    m = build_jc(p).matrix
    assert np.abs(m - np.diag(np.diag(m))).max() == 0


def test_jc_one_excitation_gap():
    p = _jc_params()
    m = build_jc(p).matrix
    d = p.cutoff.dim
    idx = [1 * d + 0, 0 * d + 1]
    w = np.linalg.eigvalsh(m[np.ix_(idx, idx)])
    assert abs((w[1] - w[0]) - 2 * couplings(p).eta) <= 1e-12


def test_jc_warns_off_resonance():
    with pytest.warns(UserWarning):
        build_jc(params(n_g=0.7))


def test_measurement_commutes_with_sigma_x():
    p = params()
    sx = tensor(qubit_ops()[0], identity(Space.CAVITY, p.cutoff))
    assert np.abs(commutator(build_measurement(p), sx).matrix).max() <= 1e-12


def test_measurement_equals_full_at_degeneracy():
    p = params()
    np.testing.assert_array_equal(build_measurement(p).matrix, build_full(p).matrix)


def test_measurement_needs_degeneracy():
    with pytest.raises(GateChargeNotTuned):
        build_measurement(params(n_g=0.6))
    with pytest.raises(GateChargeNotTuned):
        build_branch(0, params(n_g=0.6))


def test_branch_decomposition():
    p = params()
    u = sigma_x_rotation(p.cutoff).matrix
    rotated = u.conj().T @ build_measurement(p).matrix @ u
    d = p.cutoff.dim
    np.testing.assert_allclose(rotated[:d, :d], build_branch(0, p).matrix, atol=1e-12)
    np.testing.assert_allclose(rotated[d:, d:], build_branch(1, p).matrix, atol=1e-12)
    assert np.abs(rotated[:d, d:]).max() <= 1e-12


def test_branch_sum_is_free_field():
    p = params()
    total = build_branch(0, p).matrix + build_branch(1, p).matrix
    np.testing.assert_allclose(total, 2 * number(p.cutoff).matrix, atol=1e-12)


def test_branch_zero_flux_is_shifted_oscillator():
    p = params(phi0=0.0)
    for k, s in ((0, 1), (1, -1)):
        expected = -s * p.e_j * math.cos(p.phi_e) * np.eye(p.cutoff.dim) + number(p.cutoff).matrix
        np.testing.assert_allclose(build_branch(k, p).matrix, expected, atol=1e-13)


def test_expanded_at_zero_flux_equals_measurement():
    p = params(phi0=0.0)
    np.testing.assert_allclose(build_expanded(p).matrix, build_measurement(p).matrix, atol=1e-13)


def test_expanded_third_order_scaling():
    p = params(phi_e=math.pi / 4, cutoff=25)
    from qcav.oracle import expansion_error

    errs = [expansion_error(p.with_(phi0=f)) for f in (0.3, 0.15, 0.075)]
    for a, b in zip(errs, errs[1:]):
        assert 8 * 0.7 <= a / b <= 8 * 1.3


def test_expanded_without_linear_term_at_zero_flux():
    p = params(phi_e=0.0, phi0=0.05)
    assert couplings(p).eta == 0
    h = build_expanded_branch(0, p, include_offset=False).matrix
    # only even photon-number changes survive: quadratic terms and the number operator
    n = np.arange(p.cutoff.dim)
    odd = (n[:, None] - n[None, :]) % 2 == 1
    assert np.abs(h[odd]).max() == 0


def test_branch_state_matches_squeezed_parameters(desk):
    for k in (0, 1):
        for t in (3.0, 17.5):
            numeric = branch_state(k, desk, 1.0, t, quadratic=False)
            analytic = squeezed_state(branch_params(k, desk, 1.0, t), desk.cutoff)
            assert abs(overlap(analytic, numeric)) ** 2 >= 1 - 1e-6


def test_dispatch():
    p = params()
    np.testing.assert_array_equal(build("full", p).matrix, build_full(p).matrix)
    np.testing.assert_array_equal(build(HamiltonianKind.BRANCH, p, 1).matrix, build_branch(1, p).matrix)
    with pytest.raises(ValueError):
        build(HamiltonianKind.BRANCH, p)


def test_jc_storage_orbit():
    p = _jc_params(cutoff=4)
    eta = couplings(p).eta
    from qcav.evolution import Spectral

    start = tensor(qubit_basis(1), fock(0, p.cutoff))
    t = 0.3 / eta
    row = Spectral(build_jc(p)).evolve(start, [t])[0]
    d = p.cutoff.dim
    # |1,0> -> cos|1,0> - sin|0,1> up to a common phase
    ratio = row[0 * d + 1] / row[1 * d + 0]
    assert ratio == pytest.approx(-math.tan(eta * t), abs=1e-10)
