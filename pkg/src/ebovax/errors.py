"""Exception types shared across the package."""


class EbovaxError(Exception):
    """Base class for all package-specific errors."""


class DomainError(EbovaxError, ValueError):
    """An input violates an operation's domain (bad value, bad range)."""


class ConfigError(EbovaxError, ValueError):
    """A configuration file or flag is invalid. Names the offending key."""

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key


class GridMismatchError(EbovaxError, ValueError):
    """Two trajectories that must share a grid do not."""


class IntegrationError(EbovaxError, RuntimeError):
    """A non-finite value appeared during integration. Carries the time."""

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t


class ConvergenceError(EbovaxError, RuntimeError):
    """The sweep iteration did not converge.

    Carries the last iterate (an OcpSolution with converged=False) and the
    final residual so callers can inspect or resume.
    """

    def __init__(self, message, solution=None, residual=None):
        super().__init__(message)
        self.solution = solution
        self.residual = residual
