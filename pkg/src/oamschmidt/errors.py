"""Exception hierarchy shared across the package.

ConfigError covers everything wrong with user-supplied configuration
(files, CLI values, inconsistent grids); PhysicsError covers situations
where the numbers themselves go bad. The CLI maps the two branches to
distinct exit codes.
"""


class OamSchmidtError(Exception):
    """Base class for all package errors."""


class ConfigError(OamSchmidtError):
    """Malformed or inconsistent user configuration."""


class PhysicsError(OamSchmidtError):
    """Computation failed for a physical/numerical reason."""


class DomainError(PhysicsError):
    """Non-finite or out-of-domain numeric input."""


class UnsupportedOrderError(PhysicsError):
    """Polynomial order beyond the recurrence stability bound."""


class DispersionRangeError(PhysicsError):
    """Wavelength outside the validity window of the dispersion data."""


class UnphasematchableError(PhysicsError):
    """No collinear phase-matching angle exists for this configuration."""


class DegeneratePumpError(PhysicsError):
    """All pump superposition coefficients are zero."""


class AliasingError(PhysicsError):
    """Angular sample count too small for the requested OAM window."""


class DegenerateSpectrumError(PhysicsError):
    """Spectrum integrand vanished identically; nothing to normalize."""


class UndefinedRSquaredError(PhysicsError):
    """Target spectrum has zero variance; R^2 is undefined."""


class ObjectiveDomainError(PhysicsError):
    """Optimization objective returned a non-finite value."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point
