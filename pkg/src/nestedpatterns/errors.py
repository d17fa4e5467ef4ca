"""Exception hierarchy shared across the package."""

from __future__ import annotations


class NestedPatternError(Exception):
    """Base class for every error raised by this package."""


class InvalidLevels(NestedPatternError, ValueError):
    pass


class InvalidPatternSize(NestedPatternError, ValueError):
    pass


class InvalidWeights(NestedPatternError, ValueError):
    pass


class UnknownNeuron(NestedPatternError, LookupError):
    pass


class InconsistentState(NestedPatternError, RuntimeError):
    """Raised when a state's values break level symmetry or its shape drifts from the config."""


class InvalidRamp(NestedPatternError, ValueError):
    pass


class CounterTimeout(NestedPatternError):
    """The counter did not reach quiescence within ``max_steps``.

    The partial tick log is kept on ``log`` (with ``timed_out`` set).
    """

    def __init__(self, log, max_steps: int):
        super().__init__(f"counter not quiescent after {max_steps} steps ({len(log.ticks)} ticks recorded)")
        self.log = log
        self.max_steps = max_steps


class InvalidRadii(NestedPatternError, ValueError):
    pass


class InvalidSeparation(NestedPatternError, ValueError):
    pass


class InvalidLayout(NestedPatternError, ValueError):
    pass


class ParseError(NestedPatternError, ValueError):
    def __init__(self, line: int, token: str, reason: str = "cannot parse"):
        super().__init__(f"line {line}: {reason}: {token!r}")
        self.line = line
        self.token = token


class ValidationError(NestedPatternError, ValueError):
    pass


class EmptyTrace(NestedPatternError, ValueError):
    pass
