"""Exception hierarchy.

Two families matter to callers:

* ``PreconditionError`` — the input violates a documented precondition
  (CLI exit code 2, HTTP 422).
* ``FindingError`` — a verified mathematical identity failed to hold on the
  given data.  This signals either corrupt input or an implementation bug
  and is never swallowed (CLI exit code 3).  The offending report rides on
  the exception as ``.report``.

Plain I/O and parse problems are reported with the usual ``ValueError`` /
``json.JSONDecodeError`` (CLI exit code 1).
"""

from __future__ import annotations


class TwistlatError(Exception):
    """Base class for all package-specific errors."""


class PreconditionError(TwistlatError):
    """An operation was called on input outside its documented domain."""


class NonSquareError(PreconditionError):
    pass


class NotTorsionError(PreconditionError):
    pass


class NotDefiniteError(PreconditionError):
    pass


class NotUnimodularError(PreconditionError):
    pass


class EmptyLatticeError(PreconditionError):
    pass


class NonNegativeSquareError(PreconditionError):
    pass


class NotAComplexError(PreconditionError):
    pass


class UnknownModelError(PreconditionError):
    pass


class TrivialSystemError(PreconditionError):
    pass


class ZeroMod2ClassError(PreconditionError):
    pass


class UndeterminedSurgeryError(PreconditionError):
    """Surgery on this class has no invariant-factor update consistent with
    the preserved quantities; the transform refuses to guess."""


class PositiveDeltaError(PreconditionError):
    pass


class BoundaryRecordError(PreconditionError):
    pass


class InvalidRecordError(PreconditionError):
    pass


class UnsupportedPairingError(PreconditionError):
    pass


class FindingError(TwistlatError):
    """A checked identity failed; carries the offending report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class OddTildeCountError(FindingError):
    pass


class IdentityViolationError(FindingError):
    pass


class ExactnessViolationError(FindingError):
    pass


class SelfCheckError(FindingError):
    pass
