import math
import warnings

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcav import constants as const
from qcav.errors import ConfigError, OutOfRange, UnstableResonator, ZeroCoupling
from qcav.physical import (
    DEVICE_E_C,
    DEVICE_E_J,
    CavityGeometry,
    SystemParams,
    couplings,
    derive_device,
    desk_params,
    desk_storage_params,
    field_amplitude,
    mode_volume,
    phi0,
    resonance_gate_charge,
    storage_time,
)

OMEGA_30GHZ = 2 * math.pi * 30e9


def test_mode_volume_reference():
    v = mode_volume(CavityGeometry(2.55e-3, 5e-3, 1e-2))
    assert v == pytest.approx(4.42e-9, rel=0.01)


def test_mode_volume_linear_in_wavelength():
    vols = [mode_volume(CavityGeometry(2.55e-3, 5e-3, lam)) for lam in (1e-2, 1e-3, 1e-4, 1e-6)]
    assert all(a > b for a, b in zip(vols, vols[1:]))
    assert vols[1] / vols[0] == pytest.approx(0.1)


@pytest.mark.parametrize("length", [5.1e-3, 6e-3, 0.0])
def test_unstable_resonator(length):
    with pytest.raises(UnstableResonator):
        CavityGeometry(2.55e-3, length, 1e-2)


def test_field_amplitude_reference_and_scaling():
    b = field_amplitude(OMEGA_30GHZ, 4.42e-9)
    assert b == pytest.approx(7.52e-11, rel=0.01)
    assert field_amplitude(OMEGA_30GHZ, 4 * 4.42e-9) == pytest.approx(b / 2)
    assert field_amplitude(2 * OMEGA_30GHZ, 4.42e-9) == pytest.approx(b * math.sqrt(2))


def test_phi0_reference_and_scaling():
    assert phi0(9.98e-11, 7.52e-11) == pytest.approx(1.14e-5, rel=0.01)
    assert phi0(0.0, 7.52e-11) == 0
    assert phi0(2 * 9.98e-11, 7.52e-11) == pytest.approx(2 * phi0(9.98e-11, 7.52e-11))


def _device_params(phi_e):
    return derive_device(phi_e=phi_e).params


def test_couplings_flux_half_pi():
    cp = couplings(_device_params(math.pi / 2))
    assert cp.eta == pytest.approx(5.89e5, rel=0.01)
    assert abs(cp.delta) < 1e-12 * cp.eta


def test_couplings_flux_zero():
    p = _device_params(0.0)
    cp = couplings(p)
    assert cp.eta == 0
    assert cp.delta == pytest.approx(0.5 * p.phi0**2 * p.e_j)
    assert cp.delta / p.e_j == pytest.approx(6.5e-11, rel=0.01)


def test_couplings_decoupled():
    p = _device_params(1.0).with_(phi0=0.0)
    cp = couplings(p)
    assert cp.eta == 0 and cp.delta == 0


def test_ej_in_rad_s():
    assert const.ev_to_rad_s(DEVICE_E_J) == pytest.approx(5.17e10, rel=0.01)
    assert const.ev_to_rad_s(DEVICE_E_C) / (2 * math.pi) == pytest.approx(29.5e9, rel=0.01)


def test_resonance_gate_charge():
    e_c = const.ev_to_rad_s(DEVICE_E_C)
    assert resonance_gate_charge(e_c, OMEGA_30GHZ) == pytest.approx(0.627, abs=0.002)
    assert resonance_gate_charge(e_c, 0.0) == 0.5
    with pytest.raises(OutOfRange):
        resonance_gate_charge(1.0, 10.0)


def test_storage_time():
    assert storage_time(5.89e5) == pytest.approx(2.67e-6, rel=0.005)
    assert storage_time(2 * 5.89e5) == pytest.approx(storage_time(5.89e5) / 2)
    with pytest.raises(ZeroCoupling):
        storage_time(0.0)


def test_device_round_trip():
    rep = derive_device()
    assert rep.volume == pytest.approx(4.4e-9, rel=0.02)
    assert rep.field == pytest.approx(7.52e-11, rel=0.02)
    assert rep.params.phi0 == pytest.approx(1.14e-5, rel=0.02)
    assert rep.storage_time == pytest.approx(2.7e-6, rel=0.03)


def test_device_zero_josephson():
    rep = derive_device(e_j_ev=0.0)
    assert rep.couplings.eta == 0 and rep.storage_time is None


def test_charge_regime_enforced():
    with pytest.raises(ConfigError):
        SystemParams(e_c=2.0, e_j=1.0, n_g=0.5, phi_e=0, phi0=0.01, omega=1)
    with pytest.raises(ConfigError):
        SystemParams(e_c=4.0, e_j=1.0, n_g=0.5, phi_e=0, phi0=0.01, omega=0)


def test_large_flux_warns():
    with pytest.warns(UserWarning):
        SystemParams(e_c=4.0, e_j=1.0, n_g=0.5, phi_e=0, phi0=0.1, omega=1, cutoff=10)


@given(st.floats(-1, 1).filter(lambda x: abs(x) > 1e-6), st.floats(-0.1, 0.1).filter(lambda x: abs(x) > 1e-6))
def test_desk_params_hit_targets(eta, delta):
    p = desk_params(eta=eta, delta=delta)
    cp = couplings(p)
    # phi_e near 0 or pi carries ~1e-16 absolute error, which sin() passes on to eta
    assert cp.eta == pytest.approx(eta, rel=1e-9, abs=1e-15 * p.phi0 * p.e_j)
    assert cp.delta == pytest.approx(delta, rel=1e-9, abs=1e-15 * p.phi0**2 * p.e_j)


def test_desk_storage_resonant():
    p = desk_storage_params()
    cp = couplings(p)
    assert cp.qubit_splitting == pytest.approx(p.omega, rel=1e-9)
    assert p.omega / cp.eta == pytest.approx(50.0)


@given(st.floats(1e-4, 1e-1), st.floats(1e-12, 1e-9))
def test_phi0_linear_in_area_and_field(s, b):
    assert phi0(2 * s, b) == pytest.approx(2 * phi0(s, b))
    assert phi0(s, 3 * b) == pytest.approx(3 * phi0(s, b))


def test_no_warning_at_device_scale():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        derive_device()
