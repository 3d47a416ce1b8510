"""Charge qubit coupled to a single-mode microwave cavity.

Truncated Fock-space algebra, device arithmetic, the model Hamiltonians, a
qubit-to-cavity storage protocol and the closed-form decoherence factor, each
paired with a brute-force numeric check.
"""

from .errors import (
    ConfigError,
    NumericalError,
    QcavError,
    TruncationError,
)
from .fockspace import (
    DensityMatrix,
    FockCutoff,
    Operator,
    Space,
    SqueezedParams,
    StateVector,
    annihilation,
    coherent_state,
    creation,
    fock,
    overlap,
    partial_trace,
    qubit_ops,
    squeezed_state,
    tensor,
)
from .gaussian import (
    branch_params,
    decoherence_factor,
    displacement_factor,
    revival_period,
    squeezed_overlap,
)
from .physical import (
    CavityGeometry,
    DerivedCouplings,
    SystemParams,
    couplings,
    derive_device,
    desk_params,
    desk_storage_params,
)
from .protocol import QubitAmplitudes, storage_map, transfer_probability_analytic

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
