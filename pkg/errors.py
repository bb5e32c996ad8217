"""Exception hierarchy for wrightkit."""


class WrightKitError(Exception):
    """Base class for every error raised by wrightkit."""
    pass


class PoleError(WrightKitError):
    """Gamma function evaluated at a pole (0, -1, -2, ...)."""
    pass


class DomainError(WrightKitError, ValueError):
    """Argument outside the domain of the requested operation."""
    pass


class GammaOverflowError(WrightKitError, OverflowError):
    """Result not representable as a double."""
    pass


class ConvergenceError(WrightKitError):
    """Root bracketing or minimization failed."""
    pass


class NonConvergenceError(WrightKitError):
    """Series stopping rule not met within the term budget."""
    pass


class PrecisionLossError(NonConvergenceError):
    """Double-precision sum whose error estimate exceeds the accuracy target."""
    pass


class ConvergenceDomainError(DomainError):
    """Fox-Wright parameters violate 1 + sum(beta_j) - sum(alpha_i) > 0."""
    pass


class QuadratureError(WrightKitError):
    """Quadrature tolerance not met at maximum refinement."""
    pass


class PositivityError(WrightKitError):
    """A log-convexity probe sampled a non-positive value."""
    pass


class ConfigError(WrightKitError, ValueError):
    """Malformed configuration, grid or command-line input."""
    pass
