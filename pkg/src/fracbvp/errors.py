"""Exception hierarchy used across the package."""


class FracBVPError(Exception):
    """Base class for all package errors."""


class DomainError(FracBVPError, ValueError):
    """An argument lies outside the domain of the operation."""


class GridTooCoarseError(DomainError):
    """The grid has too few nodes for the requested finite differences."""


class DegenerateProblemError(FracBVPError):
    """The boundary conditions make the linear problem singular."""


class MissingLipschitzError(FracBVPError):
    """A Lipschitz constant was required but none was supplied."""


class NotApplicableError(FracBVPError):
    """A contraction-based quantity was requested outside its validity range."""


class RHSEvaluationError(FracBVPError):
    """The right-hand side returned a non-finite value."""


class ConfigError(FracBVPError):
    """A problem configuration file could not be parsed or validated."""

    def __init__(self, message, line=None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
