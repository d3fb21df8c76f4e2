"""Exception hierarchy.

Every error carries ``witnesses``: a list of small tuples pinpointing the
failure, so callers (and the CLI) can print them.
"""

from __future__ import annotations


class CocycleError(Exception):
    """Base class for all library errors."""

    def __init__(self, message: str, witnesses=None):
        super().__init__(message)
        self.witnesses = list(witnesses or [])


class InputError(CocycleError):
    """Malformed or unsupported input (CLI exit code 2)."""


class VerificationError(CocycleError):
    """A mathematical check failed (CLI exit code 1)."""


# group-core
class NonGroupTable(InputError):
    pass


class UnsupportedSpec(InputError):
    pass


class NotNormal(VerificationError):
    pass


class NotGenerating(VerificationError):
    pass


class GroupMismatch(InputError):
    pass


# slg
class NotSubadditive(VerificationError):
    pass


class NonzeroAtIdentity(VerificationError):
    pass


class NegativeValue(VerificationError):
    pass


class InternalInconsistency(VerificationError):
    pass


class NotInN1(VerificationError):
    pass


class TooLarge(InputError):
    pass


# cocycle
class NotASubgroup(VerificationError):
    pass


class NotIntegral(VerificationError):
    pass


class NotIntegralOutput(VerificationError):
    pass


class NotDecomposable(VerificationError):
    pass


class SubadditivityFailure(VerificationError):
    pass


class NotInInertialGroup(VerificationError):
    pass


class WellDefinednessFailure(VerificationError):
    pass


# order-graph
class AxiomFailure(VerificationError):
    pass
