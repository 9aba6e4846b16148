"""Exception types carrying stable, machine-readable error codes."""
from __future__ import annotations


class TknotsError(Exception):
    """Base error.  ``code`` is a short stable identifier used in JSON reports."""

    code = "error"

    def __init__(self, message: str, code: str | None = None, details=None):
        super().__init__(message)
        if code is not None:
            self.code = code
        self.details = details


class InputError(TknotsError):
    """Malformed or inconsistent input data (tables, codes, flags)."""

    code = "input_error"


class AxiomError(InputError):
    """A structure failed its axiom check; ``details`` holds the report."""

    code = "axiom_violation"


class ContractError(TknotsError):
    """A precondition on an otherwise valid call was not met."""

    code = "contract_error"
