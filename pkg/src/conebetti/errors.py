"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class ConeBettiError(Exception):
    """Base class for all library errors."""


class InputError(ConeBettiError, ValueError):
    """Malformed or inconsistent input (length mismatch, bad prime, ...)."""


class DomainError(ConeBettiError, ValueError):
    """Input is well formed but outside the operation's domain."""


class ResourceError(ConeBettiError):
    """A configured size cap was exceeded."""


class CertificationError(ConeBettiError):
    """No certified mapping-cone decomposition exists for ``ideal`` under a strict policy."""

    def __init__(self, ideal, message: str | None = None):
        self.ideal = ideal
        super().__init__(message or f"no certified mapping-cone step for {ideal}")


class ParseError(InputError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")
