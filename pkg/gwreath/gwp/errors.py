from __future__ import annotations


class GwpError(Exception):
    """Base class for every error raised by the gwp package."""


class PosetError(GwpError, ValueError):
    pass


class DomainMismatch(GwpError, ValueError):
    pass


class DeskGuardExceeded(GwpError):
    def __init__(self, what: str, size: int, limit: int) -> None:
        super().__init__(f"{what} has size {size}, above the desk guard of {limit}")
        self.what = what
        self.size = size
        self.limit = limit


class SpecParseError(GwpError, ValueError):
    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
        self.message = message


class BudgetExhausted(GwpError):
    def __init__(self, attempts: int, detail: str) -> None:
        super().__init__(f"{detail} (gave up after {attempts} attempts)")
        self.attempts = attempts
        self.detail = detail


class HypothesisViolation(GwpError, ValueError):
    """An operation was called outside the hypotheses it needs."""
