"""Exception hierarchy shared by the library and the command line.

Each exception carries the exit code the CLI reports for it: 2 for bad input
(configuration, graph files, unsatisfiable preconditions), 3 for numerical
diagnostics.
"""

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


class QswError(Exception):
    exit_code = EXIT_CONFIG


class InvalidGraph(QswError, ValueError):
    pass


class GraphParseError(QswError, ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


class DimensionMismatch(QswError, ValueError):
    pass


class NonHermitianError(QswError, ValueError):
    pass


class InvalidState(QswError, ValueError):
    pass


class Unreachable(QswError):
    """No sink block is reachable from the requested vertex."""


class FilterExhausted(QswError):
    pass


class NotCommuting(QswError):
    exit_code = EXIT_NUMERICAL


class NumericalBreakdown(QswError):
    exit_code = EXIT_NUMERICAL
