"""Domain error type with a stable machine-readable code."""

from __future__ import annotations


class CatsdError(Exception):
    """Raised for violations of the method's contracts.

    `code` is a stable identifier (e.g. "OUT_OF_DOMAIN") suitable for
    machine handling; `context` carries structured detail such as the row
    or criterion involved.
    """

    def __init__(self, code: str, message: str, **context):
        super().__init__(message)
        self.code = code
        self.context = context

    def __str__(self) -> str:
        base = super().__str__()
        if self.context:
            detail = ", ".join(f"{k}={v!r}" for k, v in sorted(self.context.items()))
            return f"[{self.code}] {base} ({detail})"
        return f"[{self.code}] {base}"
