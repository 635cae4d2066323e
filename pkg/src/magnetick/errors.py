"""Exception hierarchy shared by all modules.

Every error carries a machine-readable ``name`` (the class name) and an
optional ``details`` mapping so the CLI can emit a structured error object.
"""

from __future__ import annotations

from typing import Any


class MagnetickError(Exception):
    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    @property
    def name(self) -> str:
        return type(self).__name__

    def to_dict(self) -> dict:
        out = {"error": self.name, "message": self.message}
        if self.details:
            out["details"] = self.details
        return out


# groups
class NotAGroup(MagnetickError):
    pass


class PhiNotHomomorphism(MagnetickError):
    pass


class PhiNotSurjective(MagnetickError):
    pass


class GroupTooLarge(MagnetickError):
    pass


class NotASubgroup(MagnetickError):
    pass


class BadExtension(MagnetickError):
    pass


# representations
class NotSelfAssociate(MagnetickError):
    pass


class MatricesUnavailable(MagnetickError):
    pass


class InconsistentMultiplicities(MagnetickError):
    pass


class BadCharacter(MagnetickError):
    pass


# abelian groups
class IncompatibleMorphism(MagnetickError):
    pass


class NoIntegerSolution(MagnetickError):
    pass


class NotAComplex(MagnetickError):
    pass


# coefficients
class StabilizerDoesNotLift(MagnetickError):
    pass


class NotEquivariant(MagnetickError):
    pass


# complexes and spectral sequences
class BadIncidenceDimension(MagnetickError):
    pass


class OrbitMapIllDefined(MagnetickError):
    pass


class DSquaredNonzero(MagnetickError):
    pass


class UnsupportedComplex(MagnetickError):
    pass


class BadOverride(MagnetickError):
    pass


class ShapeMismatch(BadOverride):
    pass


class PageNotStable(MagnetickError):
    pass


class BadAssertion(MagnetickError):
    pass


# input
class ParseError(MagnetickError):
    pass
