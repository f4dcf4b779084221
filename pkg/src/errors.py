"""
Exception Hierarchy

Errors raised by the walk compiler. The command line maps each family to an
exit code (usage 1, I/O 2, numerical guard 3).
"""


class CTQWError(Exception):
    """Base class for all compiler errors."""


class GraphFormatError(CTQWError, ValueError):
    """A graph, circuit or record file could not be parsed."""


class ResourceLimitError(CTQWError, ValueError):
    """A dense operation was requested beyond its qubit budget."""


class NumericalGuardError(CTQWError, ArithmeticError):
    """A runtime numerical check failed (non-real coefficient, lost edge, ...)."""
