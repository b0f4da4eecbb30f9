"""Exception hierarchy.

``InputError`` subclasses signal malformed input (CLI exit code 2); every
other ``KmgradError`` is a domain error (exit code 1).
"""

from __future__ import annotations


class KmgradError(Exception):
    """Base class for all library errors."""

    def __init__(self, message: str, **witness):
        super().__init__(message)
        self.witness = witness


class InputError(KmgradError):
    pass


class AxisMismatch(InputError):
    pass


class NotCartan(InputError):
    def __init__(self, i: str, j: str, axiom: int, message: str):
        super().__init__(message, i=i, j=j, axiom=axiom)
        self.i, self.j, self.axiom = i, j, axiom


class DimensionMismatch(InputError):
    pass


class BasisMismatch(InputError):
    pass


class NotSymmetrizable(KmgradError):
    pass


class NotSymmetric(KmgradError):
    pass


class SingularSystem(KmgradError):
    pass


class IndexOutOfJComplement(KmgradError):
    pass


class NotARootInput(KmgradError):
    pass


class NotFiniteType(KmgradError):
    pass


class NotFiniteTypeComponent(NotFiniteType):
    pass


class JNotFiniteType(NotFiniteType):
    pass


class KInJ(KmgradError):
    pass


class NotCAdmissible(KmgradError):
    pass


class ZeroWeight(KmgradError):
    pass


class OrbitTooLarge(KmgradError):
    pass


class MG1Violation(KmgradError):
    pass


class MG2Violation(KmgradError):
    pass


class NotAdmissibleQuotient(KmgradError):
    pass


class SpecInvalid(KmgradError):
    pass


class ConsistencyError(KmgradError):
    """Two independent routes to the same verdict disagreed."""
