# ./burnlab/utils/errors.py


class BurnLabError(Exception):
    exit_code = 1


class GraphFormatError(BurnLabError, ValueError):
    exit_code = 2

    def __init__(self, message: str, line: int = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(BurnLabError, ValueError):
    exit_code = 3


class BudgetExceededError(BurnLabError):
    exit_code = 4


class VerificationError(BurnLabError):
    exit_code = 5
