"""Exception hierarchy.

Two families: :class:`ValidationError` for bad user input (exit code 1 in the
CLI) and :class:`InternalDefect` for outcomes that the mathematics rules out
and therefore indicate a bug (exit code 2).
"""

from __future__ import annotations


class MultispinalError(Exception):
    """Base class for every error raised by this package."""

    kind = "Error"

    def __init__(self, message: str, **witness):
        super().__init__(message)
        self.message = message
        self.witness = witness

    def to_dict(self) -> dict:
        return {
            "error": self.kind,
            "message": self.message,
            "witness": {k: _plain(v) for k, v in sorted(self.witness.items())},
        }


def _plain(value):
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (str, int, bool)) or value is None:
        return value
    return str(value)


class ValidationError(MultispinalError):
    kind = "ValidationError"


class ParseError(ValidationError):
    kind = "ParseError"


class NotAGroup(ValidationError):
    kind = "NotAGroup"


class NotAHomomorphism(ValidationError):
    kind = "NotAHomomorphism"


class NotAnAutomorphism(ValidationError):
    kind = "NotAnAutomorphism"


class DomainMismatch(ValidationError):
    kind = "DomainMismatch"


class NotAnAction(ValidationError):
    kind = "NotAnAction"


class NotFree(ValidationError):
    kind = "NotFree"


class EmptyAutPart(ValidationError):
    kind = "EmptyAutPart"


class EmptyHomPart(ValidationError):
    kind = "EmptyHomPart"


class NotFaithful(ValidationError):
    kind = "NotFaithful"


class SideMismatch(ValidationError):
    kind = "SideMismatch"


class UnknownAgent(ValidationError):
    kind = "UnknownAgent"


class NotSymmetric(ValidationError):
    kind = "NotSymmetric"


class Singular(MultispinalError):
    """A linear system has no unique solution."""

    kind = "Singular"


class InternalDefect(MultispinalError):
    kind = "InternalDefect"


class InternalSingular(InternalDefect):
    kind = "InternalSingular"


class CriteriaDisagreement(InternalDefect):
    kind = "CriteriaDisagreement"
