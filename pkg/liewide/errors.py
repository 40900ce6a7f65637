"""
Exception hierarchy. Each class carries the process exit code the CLI maps it to.
"""

from typing import Any, List, Optional


class LiewideError(Exception):
    exit_code: int = 1


class InvalidInputError(LiewideError):
    """Malformed or out-of-range input (usage error)."""

    exit_code = 1


class MathematicalRejection(LiewideError):
    """Well-formed input that is mathematically inadmissible."""

    exit_code = 2


class ModuleTooLarge(MathematicalRejection):
    def __init__(self, dimension: int, cap: int):
        super().__init__(f"module dimension {dimension} exceeds cap {cap}")
        self.dimension = dimension
        self.cap = cap


class VerificationDiscrepancy(LiewideError):
    """A combinatorial prediction was contradicted by brute force."""

    exit_code = 3

    def __init__(self, message: str, witnesses: Optional[List[Any]] = None):
        super().__init__(message)
        self.witnesses = witnesses or []
