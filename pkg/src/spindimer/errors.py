"""Exception and warning types shared across the package."""


class SpinDimerError(ValueError):
    """Base class for domain errors."""


class NonPositiveTemperature(SpinDimerError):
    """Thermodynamic functions require T > 0."""


class NonHermitianInput(SpinDimerError):
    """Numeric eigensolver got a matrix that is not Hermitian."""


class StepUnderflow(SpinDimerError):
    """Finite-difference step too small to be meaningful in double precision."""


class TargetOutOfRange(SpinDimerError):
    """Requested entropy level outside the attainable (0, ln 6) window."""


class NoExtremumOfRequestedSign(SpinDimerError):
    """Caloric curve never attains an extremum of the requested sign."""


class SingularAnisotropy(UserWarning):
    """J = 2D collapses the critical g-factor ratio to zero."""
