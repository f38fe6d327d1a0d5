"""Exception hierarchy shared by all modules.

Exit-code mapping used by the CLI: InputError -> 2, UnsupportedStructureError -> 3.
Mathematical "false" verdicts are ordinary return values, never exceptions.
"""


class LogcyError(Exception):
    """Base class for all library errors."""


class InputError(LogcyError):
    """Malformed or inconsistent input data (dimension mismatches, bad JSON, ...)."""


class UnsupportedStructureError(LogcyError):
    """Structurally valid input that falls outside the supported fragment.

    The canonical case is a divisor configuration with a disconnected stratum
    handed to an operation that requires a simplicial dual complex.
    """


class DegenerateChordError(InputError):
    """A chord label with coinciding endpoint angles at some index."""
