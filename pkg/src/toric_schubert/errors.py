"""Exception hierarchy shared by the library and the CLI exit-code mapping."""

from __future__ import annotations


class ToricSchubertError(Exception):
    """Base class for all library errors."""


class PreconditionError(ToricSchubertError, ValueError):
    """An input violates an operation's precondition (non-toric word, bad type, ...)."""


class ComputationError(ToricSchubertError):
    """An internal consistency check failed (two criteria disagree, counts mismatch)."""


class BoundTooSmallError(ComputationError):
    """A bounded search could not certify completeness."""


class StepError(ComputationError):
    """A recovery step could not complete; ``step`` names it (1..5 or 'validate')."""

    def __init__(self, step, message: str, **diagnostics):
        super().__init__(f"step {step}: {message}")
        self.step = step
        self.diagnostics = diagnostics

    def as_dict(self) -> dict:
        return {"step": self.step, "message": str(self), **{
            k: v for k, v in self.diagnostics.items()}}
