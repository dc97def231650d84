"""Domain errors shared by every module.

Each error carries a stable ``name`` (used in machine-readable output and by
the HTTP layer) and an optional re-verifiable ``witness``.
"""

from __future__ import annotations

from typing import Any


class DomainError(Exception):
    """Base class for all mathematically meaningful failures."""

    name = "DomainError"

    def __init__(self, message: str = "", witness: Any = None):
        super().__init__(message or self.name)
        self.message = message or self.name
        self.witness = witness

    def payload(self) -> dict:
        out = {"error": self.name, "message": self.message}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


class ParseError(Exception):
    """Raised by the input grammars; carries the offending position."""

    name = "ParseError"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.message = message
        self.position = position

    def payload(self) -> dict:
        return {"error": self.name, "message": self.message, "position": self.position}


class DependentGenerators(DomainError):
    name = "DependentGenerators"


class NoSeparator(DomainError):
    name = "NoSeparator"


class LineInCone(DomainError):
    name = "LineInCone"


class UnsupportedDimension(DomainError):
    name = "UnsupportedDimension"


class DimensionMismatch(DomainError):
    name = "DimensionMismatch"


class NotSubsemigroup(DomainError):
    name = "NotSubsemigroup"


class NotNormal(DomainError):
    name = "NotNormal"


class NotPositive(DomainError):
    name = "NotPositive"


class NotSupported(DomainError):
    name = "NotSupported"


class WindowTooSmall(DomainError):
    name = "WindowTooSmall"


class NoSolution(DomainError):
    name = "NoSolution"


class InvalidInput(DomainError):
    name = "InvalidInput"


class ImproperIdeal(DomainError):
    name = "ImproperIdeal"


class GeneratorCap(DomainError):
    name = "GeneratorCap"


class NotCoprime(DomainError):
    name = "NotCoprime"


class UnitEntry(DomainError):
    name = "UnitEntry"


class NotFull(DomainError):
    name = "NotFull"


class UnsupportedTag(DomainError):
    name = "UnsupportedTag"


class FinitelyGeneratedInput(DomainError):
    name = "FinitelyGeneratedInput"


class UnitInput(DomainError):
    name = "UnitInput"


class CertificateUnverified(DomainError):
    name = "CertificateUnverified"
