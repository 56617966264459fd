"""Exception hierarchy shared by all gsl modules."""


class GslError(Exception):
    """Base class for all errors raised by this package."""


class UnsupportedOrderError(GslError):
    """Derivative order outside the analytic range (0..3)."""


class SpeedNotAdmissibleError(GslError):
    """No traveling-wave amplitude exists for the requested speed."""


class InversionError(GslError):
    """Amplitude outside the invertible range of the speed map."""


class ProfileFailureError(GslError):
    """Profile integration left the physical range (0, 1)."""

    def __init__(self, message, last_x=None):
        super().__init__(message)
        self.last_x = last_x


class VacuumError(GslError):
    """|psi| reached (or eta reached 1 at) the vacuum threshold."""


class VacuumBreachError(VacuumError):
    """Summed chain density deficit reached 1; separation too small."""


class GridMismatchError(GslError):
    """Operands live on different grids."""


class BoundaryBreachError(GslError):
    """A tracked soliton center came too close to the box edge."""

    def __init__(self, message, t=None, required_box=None):
        super().__init__(message)
        self.t = t
        self.required_box = required_box


class BlowUpError(GslError):
    """Non-finite values appeared during time integration."""

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t


class LocalizationError(GslError):
    """Integrand does not decay fast enough at the box edges."""


class DetectionError(GslError):
    """Soliton detection found an unexpected number of candidates."""

    def __init__(self, message, found=0):
        super().__init__(message)
        self.found = found


class ModulationFailureError(GslError):
    """Newton iteration for the modulation parameters did not converge."""


class SeparationError(GslError):
    """Modulated centers collided (gap below the safety floor)."""


class ProbeError(GslError):
    """Probe trajectory left the region between tracked centers."""


class ConfigError(GslError):
    """Invalid run configuration; `path` names the offending field."""

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path
