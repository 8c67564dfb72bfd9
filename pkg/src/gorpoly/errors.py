"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or unsuitable user input (CLI exit code 2)."""

    def __init__(self, message: str, line: int = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class VerificationError(RuntimeError):
    """A property guaranteed by the theory failed to hold (CLI exit code 3).

    ``check`` names the failed verification step.
    """

    def __init__(self, check: str, message: str):
        self.check = check
        super().__init__(f"{check}: {message}")
