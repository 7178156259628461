"""Exception hierarchy shared by the engines and the command line."""


class DominoError(Exception):
    """Base class for every error raised by this package."""


class EmptyProductError(DominoError, ValueError):
    def __init__(self, msg="empty product"):
        super().__init__(msg)


class CapExceededError(DominoError, ValueError):
    """An input is larger than the configured cap of the selected engine."""


class InvariantViolation(DominoError, ArithmeticError):
    """An internal consistency check failed (e.g. a non-divisible coefficient)."""


class InputParseError(DominoError, ValueError):
    def __init__(self, msg, line=None):
        self.line = line
        if line is not None:
            msg = f"line {line}: {msg}"
        super().__init__(msg)
