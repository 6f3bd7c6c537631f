"""Exception types raised by the simulator."""


class ConfigError(ValueError):
    """An experiment configuration is missing fields or holds invalid values."""


class UnsupportedRegimeError(ValueError):
    """No closed-form solution exists for the requested parameters."""


class DegenerateProjectionError(ValueError):
    """The two-qubit block of a state carries (numerically) zero weight."""


class NumericalError(RuntimeError):
    """A numerical routine failed or produced an unphysical result."""

    def __init__(self, message, time=None):
        if time is not None:
            message = f"{message} (t = {time:.6e} s)"
        super().__init__(message)
        self.time = time


class IntegrationError(NumericalError):
    """The master-equation integrator could not advance."""
