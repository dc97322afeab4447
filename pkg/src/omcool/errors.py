"""Exception hierarchy shared by the whole package."""


class OmcoolError(Exception):
    """Base class for all package errors."""


class ConfigError(OmcoolError):
    """A system configuration violates a structural invariant."""


class ParseError(OmcoolError):
    """A config document could not be parsed."""


class UnstableSystemError(OmcoolError):
    """The drift matrix has an eigenvalue with non-negative real part."""


class SolverError(OmcoolError):
    """A numerical routine failed to produce an acceptable result."""


class ConvergenceError(SolverError):
    """Fixed-point iteration did not converge (bistable or unstable drive)."""
