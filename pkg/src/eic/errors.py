"""Exception hierarchy shared by the library and the CLI."""


class EicError(Exception):
    """Base class for all library errors."""


class ParseError(EicError):
    """Malformed problem or solution text."""


class ValidationError(EicError):
    """A well-formed problem that violates a model invariant."""

    def __init__(self, message: str, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class SizeError(EicError):
    """An exact computation would exceed a configured limit."""

    def __init__(self, message: str, limit_name: str = "", value=None, limit=None):
        super().__init__(message)
        self.limit_name = limit_name
        self.value = value
        self.limit = limit


class UnsupportedError(EicError):
    """The operation is only defined for a narrower problem class."""


class GenerationError(EicError):
    """Random generation could not produce a valid instance."""


class SimulationError(EicError):
    """Refusal to simulate a solution that does not verify."""


class CoverError(EicError):
    """A set-cover universe element is contained in no candidate set."""
