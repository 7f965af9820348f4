"""Shared error types and the truncated-value wrapper."""

from __future__ import annotations


class PeriodicaError(Exception):
    """Base class for all library errors."""


class ParseError(PeriodicaError):
    """Malformed input file; carries 1-based line and column."""

    def __init__(self, line: int, col: int, msg: str):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col
        self.msg = msg


class PreconditionError(PeriodicaError):
    """An operation was called outside its stated domain."""


class TruncationError(PeriodicaError):
    """A bound was exhausted before the computation could conclude."""


class CheckFailed(PeriodicaError):
    """A verification-style operation produced a negative verdict."""


class Trunc:
    """A natural number that may only be known as ">= bound".

    ``Trunc(3)`` is the exact value 3; ``Trunc(10, exact=False)`` means the
    computation was cut off at 10 and the true value is at least that.
    """

    __slots__ = ("value", "exact")

    def __init__(self, value: int, exact: bool = True):
        self.value = value
        self.exact = exact

    def __eq__(self, other):
        if isinstance(other, int):
            return self.exact and self.value == other
        if isinstance(other, Trunc):
            return self.exact == other.exact and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.exact))

    def __str__(self):
        return str(self.value) if self.exact else f">= {self.value}"

    def __repr__(self):
        return f"Trunc({self.value}, exact={self.exact})"

    def to_json(self):
        return self.value if self.exact else f">= {self.value}"
