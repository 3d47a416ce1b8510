"""Exception types raised by qcav.

Everything derives from :class:`QcavError` so callers (and the CLI) can sort
failures into configuration problems and numerical-validity problems.
"""


class QcavError(Exception):
    """Base class for all qcav errors."""


class ConfigError(QcavError, ValueError):
    """Invalid or inconsistent input parameters."""


class NumericalError(QcavError, ArithmeticError):
    """A result would be numerically untrustworthy."""


class SpaceMismatch(ConfigError):
    pass


class NotHermitian(ConfigError):
    pass


class NotNormalized(ConfigError):
    pass


class InvalidBogoliubov(ConfigError):
    """|mu|^2 - |nu|^2 differs from one."""


class UnstableResonator(ConfigError):
    """Cavity length outside the stable range 0 < L < 2R."""


class OutOfRange(ConfigError):
    pass


class ZeroCoupling(ConfigError):
    pass


class GateChargeNotTuned(ConfigError):
    """Operation requires the charge degeneracy point n_g = 1/2."""


class PreconditionViolated(ConfigError):
    pass


class TruncationError(NumericalError):
    """Too much probability mass sits at the Fock cutoff.

    ``index`` is the first offending time index when raised from a time series.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class SqueezingUnstable(NumericalError):
    """Branch frequency Omega_k became imaginary (omega <= 4|delta|)."""


class DegenerateDenominator(NumericalError):
    pass
