"""Device parameters: cavity geometry, energies and the couplings derived from them.

Internally hbar = 1: every energy is stored as an angular frequency (rad/s for
device-scale numbers, dimensionless for the desk-scale sets used in numerical
cross-checks).  Conversion from eV/Hz happens only in :func:`derive_device`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace

from . import constants as const
from .errors import ConfigError, OutOfRange, UnstableResonator, ZeroCoupling
from .fockspace import FockCutoff

# Device defaults: mirror geometry, a 30 GHz mode, and Cooper-pair-box energies.
DEVICE_MIRROR_RADIUS = 2.55e-3      # m
DEVICE_CAVITY_LENGTH = 5.0e-3       # m
DEVICE_FREQUENCY = 30e9             # Hz (ordinary frequency; omega = 2 pi f)
DEVICE_E_C = 122e-6                 # eV
DEVICE_E_J = 34e-6                  # eV
# Not given with the device numbers; back-solved from phi0 = pi S B / Phi_0 = 1.14e-5.
DEVICE_LOOP_AREA = 9.98e-11         # m^2
DEVICE_PHI_E = math.pi / 2
DEVICE_CUTOFF = 20

# Desk-scale set for dynamics: omega = 1 with delta/omega and eta/omega large
# enough to see squeezing and displacement within a few hundred periods.
DESK_OMEGA = 1.0
DESK_DELTA = 0.02
DESK_ETA = 0.3
DESK_PHI0 = 1e-5
DESK_CUTOFF = 60
DESK_STORAGE_RATIO = 50.0          # omega / eta for the storage protocol


@dataclass(frozen=True)
class CavityGeometry:
    mirror_radius: float   # R, m
    length: float          # L, m
    wavelength: float      # lambda, m

    def __post_init__(self):
        if self.mirror_radius <= 0 or self.wavelength <= 0:
            raise ConfigError("mirror radius and wavelength must be positive")
        if not 0 < self.length < 2 * self.mirror_radius:
            raise UnstableResonator(
                f"L = {self.length:g} m outside the stable range (0, 2R = {2 * self.mirror_radius:g} m)"
            )


@dataclass(frozen=True)
class SystemParams:
    """Full symbol set of the qubit-cavity model in hbar = 1 units.

    ``e_c`` and ``e_j`` are angular frequencies (E / hbar).  ``n_g`` is the gate
    charge, ``phi_e`` the reduced external flux pi Phi_e / Phi_0, ``phi0`` the
    cavity flux amplitude and ``omega`` the cavity angular frequency.
    """

    e_c: float
    e_j: float
    n_g: float
    phi_e: float
    phi0: float
    omega: float
    cutoff: FockCutoff = field(default_factory=lambda: FockCutoff(DEVICE_CUTOFF))
    loop_area: float | None = None

    def __post_init__(self):
        if not isinstance(self.cutoff, FockCutoff):
            object.__setattr__(self, "cutoff", FockCutoff(self.cutoff))
        if self.e_j < 0:
            raise ConfigError("E_J must be non-negative")
        # charge regime, E_C >> E_J, enforced as a factor of three
        if self.e_c < 3 * self.e_j:
            raise ConfigError(f"charge regime needs E_C >= 3 E_J (E_C={self.e_c:g}, E_J={self.e_j:g})")
        if self.phi0 < 0:
            raise ConfigError("phi0 must be non-negative")
        if not self.omega > 0:
            raise ConfigError("omega must be positive")
        if self.phi0 * math.sqrt(self.cutoff.n_max) > 0.1:
            warnings.warn(
                f"phi0*sqrt(n_max) = {self.phi0 * math.sqrt(self.cutoff.n_max):.3g} > 0.1: "
                "cavity flux is not small against the external flux",
                stacklevel=2,
            )

    def with_(self, **changes) -> SystemParams:
        return replace(self, **changes)

    @property
    def at_degeneracy(self) -> bool:
        return abs(self.n_g - 0.5) <= 1e-12


@dataclass(frozen=True)
class DerivedCouplings:
    eta: float              # first-order coupling, phi0 E_J sin(phi_e)
    delta: float            # second-order coupling, phi0^2 E_J cos(phi_e) / 2
    qubit_splitting: float  # 8 E_C (n_g - 1/2)


def mode_volume(g: CavityGeometry) -> float:
    """Fundamental Gaussian-mode volume ``(pi/4) w0^2 L`` of a symmetric two-mirror cavity.

    ``w0^2 = (lambda / 2 pi) sqrt(L (2R - L))`` is the waist of the TEM00 mode.
    """
    w0_sq = g.wavelength / (2 * math.pi) * math.sqrt(g.length * (2 * g.mirror_radius - g.length))
    return math.pi / 4 * w0_sq * g.length


def field_amplitude(omega: float, volume: float) -> float:
    """Vacuum magnetic field ``sqrt(hbar omega / (eps0 V c^2))`` in tesla."""
    if omega <= 0 or volume <= 0:
        raise ConfigError("omega and mode volume must be positive")
    return math.sqrt(const.hbar * omega / (const.epsilon_0 * volume * const.c**2))


def phi0(loop_area: float, field: float) -> float:
    """Reduced flux amplitude ``pi S B / Phi_0`` of the cavity through the SQUID loop."""
    if loop_area < 0 or field < 0:
        raise ConfigError("loop area and field must be non-negative")
    return math.pi * loop_area * field / const.flux_quantum


def couplings(p: SystemParams) -> DerivedCouplings:
    return DerivedCouplings(
        eta=p.phi0 * p.e_j * math.sin(p.phi_e),
        delta=0.5 * p.phi0**2 * p.e_j * math.cos(p.phi_e),
        qubit_splitting=8 * p.e_c * (p.n_g - 0.5),
    )


def resonance_gate_charge(e_c: float, omega: float) -> float:
    """Gate charge with ``8 E_C (n_g - 1/2) = omega`` (both in the same angular units)."""
    if e_c <= 0 or omega < 0:
        raise ConfigError("need E_C > 0 and omega >= 0")
    n_g = 0.5 + omega / (8 * e_c)
    if n_g > 1:
        raise OutOfRange(f"resonance needs n_g = {n_g:.4g} > 1; E_C too small for omega")
    return n_g


def storage_time(eta: float) -> float:
    """Duration ``pi / (2 eta)`` of the resonant qubit-to-cavity transfer."""
    if eta == 0:
        raise ZeroCoupling("eta = 0: no transfer ever happens")
    return math.pi / (2 * abs(eta))


@dataclass(frozen=True)
class DeviceReport:
    geometry: CavityGeometry
    volume: float
    field: float
    params: SystemParams
    couplings: DerivedCouplings
    n_g_resonance: float | None
    storage_time: float | None


def derive_device(
    mirror_radius: float = DEVICE_MIRROR_RADIUS,
    length: float = DEVICE_CAVITY_LENGTH,
    frequency: float = DEVICE_FREQUENCY,
    e_c_ev: float = DEVICE_E_C,
    e_j_ev: float = DEVICE_E_J,
    loop_area: float = DEVICE_LOOP_AREA,
    phi_e: float = DEVICE_PHI_E,
    n_g: float | None = None,
    cutoff: int = DEVICE_CUTOFF,
    phi0_override: float | None = None,
) -> DeviceReport:
    """Geometry and energies -> volume, field, phi0, couplings, resonance and storage time.

    ``n_g=None`` tunes the gate charge to the qubit-cavity resonance.
    """
    if frequency <= 0:
        raise ConfigError("frequency must be positive")
    omega = 2 * math.pi * frequency
    geom = CavityGeometry(mirror_radius, length, const.c / frequency)
    volume = mode_volume(geom)
    b = field_amplitude(omega, volume)
    ph0 = phi0(loop_area, b) if phi0_override is None else phi0_override
    e_c = const.ev_to_rad_s(e_c_ev)
    e_j = const.ev_to_rad_s(e_j_ev)
    try:
        n_res = resonance_gate_charge(e_c, omega)
    except OutOfRange:
        if n_g is None:
            raise
        n_res = None
    params = SystemParams(
        e_c=e_c,
        e_j=e_j,
        n_g=n_res if n_g is None else n_g,
        phi_e=phi_e,
        phi0=ph0,
        omega=omega,
        cutoff=FockCutoff(cutoff),
        loop_area=loop_area,
    )
    cp = couplings(params)
    t_store = storage_time(cp.eta) if cp.eta != 0 else None
    return DeviceReport(geom, volume, b, params, cp, n_res, t_store)


def desk_params(
    eta: float = DESK_ETA,
    delta: float = DESK_DELTA,
    phi0: float = DESK_PHI0,
    omega: float = DESK_OMEGA,
    cutoff: int = DESK_CUTOFF,
    n_g: float = 0.5,
) -> SystemParams:
    """Dimensionless parameters hitting the requested ``eta`` and ``delta`` exactly.

    With ``phi0`` fixed the two couplings pin the flux and Josephson energy:
    ``tan(phi_e) = phi0 eta / (2 delta)`` and ``E_J = eta / (phi0 sin phi_e)``.
    A small ``phi0`` keeps the cubic and higher terms of the cosine negligible.
    """
    if phi0 <= 0:
        raise ConfigError("desk phi0 must be positive")
    if eta == 0 and delta == 0:
        raise ConfigError("eta and delta cannot both vanish")
    phi_e = math.atan2(phi0 * eta, 2 * delta)
    e_j = math.hypot(eta / phi0, 2 * delta / phi0**2)
    # exact zeros where the trig would leave 1e-17 residues
    if eta == 0:
        phi_e = 0.0 if delta > 0 else math.pi
    elif delta == 0:
        phi_e = math.copysign(math.pi / 2, eta)
    return SystemParams(
        e_c=4 * e_j, e_j=e_j, n_g=n_g, phi_e=phi_e, phi0=phi0, omega=omega,
        cutoff=FockCutoff(cutoff),
    )


def desk_storage_params(ratio: float = DESK_STORAGE_RATIO, phi0: float = DESK_PHI0,
                        cutoff: int = 30) -> SystemParams:
    """Resonant storage set with ``omega = 1``, ``eta = 1/ratio`` and ``phi_e = pi/2``."""
    base = desk_params(eta=DESK_OMEGA / ratio, delta=0.0, phi0=phi0, cutoff=cutoff)
    return base.with_(n_g=resonance_gate_charge(base.e_c, base.omega))
