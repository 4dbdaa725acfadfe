"""Exception hierarchy shared by all modules."""


class SelfInducedError(Exception):
    """Base class for errors raised by this package."""


class InputError(SelfInducedError, ValueError):
    """Malformed words, substitutions, pairs or files."""


class MalformedGeneratorError(SelfInducedError):
    """A lazy infinite word stopped growing."""


class InvalidTranslationError(SelfInducedError):
    """A coordinate lost its sign purity after a translation or transform."""


class ExcludedPointError(InvalidTranslationError):
    """A transformed point left the subshift (mixed signs in a coordinate)."""


class DepthExceededError(SelfInducedError):
    """A lazy computation needed more letters than the configured cap."""


class IntervalConnectionError(SelfInducedError):
    """Two competing interval lengths are equal (a connection)."""


class NotPrimitiveError(SelfInducedError, ValueError):
    """A matrix or substitution is not primitive."""


class ConvergenceError(SelfInducedError):
    """An iterative numerical method did not converge."""


class ConditionFailure(SelfInducedError):
    """A necessary condition does not hold; ``condition`` names it (e.g. "C3.3")."""

    def __init__(self, condition: str, message: str):
        super().__init__(f"{condition}: {message}")
        self.condition = condition
        self.message = message
