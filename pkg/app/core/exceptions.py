"""Exception hierarchy and process exit codes."""

from enum import IntEnum
from typing import Any


class ExitCode(IntEnum):
    """Exit codes of the command line."""

    OK = 0
    FAILURE = 1
    INPUT_ERROR = 2


class EhresmannError(Exception):
    """Base class for every error raised by the library."""


class InputError(EhresmannError, ValueError):
    """Invalid input: schema violation, broken invariant or failed precondition.

    Args:
        message: Human readable description
        witness: Concrete data reproducing the problem, when there is one
    """

    def __init__(self, message: str, witness: dict[str, Any] | None = None) -> None:
        super().__init__(message)
        self.witness = witness

    def to_dict(self) -> dict[str, Any]:
        """Render the error as the JSON error body."""
        return {"error": "input_error", "detail": str(self), "witness": self.witness}


class UnresolvedReferenceError(InputError):
    """A document refers to a name that is not registered in the workspace."""

    def __init__(self, kind: str, name: str) -> None:
        super().__init__(f"unresolved reference: {kind} '{name}'", {"kind": kind, "name": name})


class ReductionBudgetExceeded(EhresmannError, RuntimeError):
    """The normal-form reduction ran past its step budget.

    This never signals bad input: the reduction provably terminates on valid
    contexts, so hitting the budget means a broken precondition or a bug.
    """
