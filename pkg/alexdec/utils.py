"""Exceptions and small helpers shared across alexdec."""

from typing import Optional, Union

from .constants import (
    EXIT_DISAGREEMENT,
    EXIT_PARSE_ERROR,
    EXIT_USAGE,
    EXIT_VALIDATION_ERROR,
)

# Both minus characters found in published knot tables.
UNICODE_MINUS = "−"


class AlexdecError(Exception):
    """Base class for errors raised by alexdec."""

    exit_code = EXIT_DISAGREEMENT


class KnotParseError(AlexdecError):
    """A knot file is malformed (bad JSON/CSV, ragged matrix, non-integer entry)."""

    exit_code = EXIT_PARSE_ERROR

    def __init__(self, message: str, location: Optional[Union[int, str]] = None):
        if location is not None:
            message = f"{message} (at {location})"
        super().__init__(message)
        self.location = location


class SeifertValidationError(AlexdecError):
    """A Seifert matrix fails validation."""

    exit_code = EXIT_VALIDATION_ERROR


class NonSquareSeifertError(SeifertValidationError):
    pass


class OddSizeSeifertError(SeifertValidationError):
    pass


class NonUnimodularSeifertError(SeifertValidationError):
    """det(S - S^T) != 1."""


class DegenerateAlexanderError(SeifertValidationError):
    """det A(t) vanishes identically or the result is not a valid Alexander polynomial."""


class UnknownKnotError(AlexdecError):
    """A requested knot name is not in the loaded corpus."""

    exit_code = EXIT_USAGE


class ConsistencyError(AlexdecError):
    """An internal invariant failed; signals a bug, never silently ignored."""

    exit_code = EXIT_DISAGREEMENT


def normalize_minus(text: str) -> str:
    """Replace U+2212 MINUS SIGN with an ASCII hyphen.

    Args:
        text: Text copied from a knot table

    Returns:
        Text using only ASCII minus signs
    """
    return text.replace(UNICODE_MINUS, "-")


def binomial(k: int, p: int) -> int:
    """Generalized binomial coefficient k(k-1)...(k-p+1)/p! for any integer k.

    Args:
        k: Upper index, may be negative
        p: Lower index, p >= 0

    Returns:
        The exact integer coefficient (0 for p < 0)
    """
    if p < 0:
        return 0
    numerator = 1
    denominator = 1
    for i in range(p):
        numerator *= k - i
        denominator *= i + 1
    return numerator // denominator


def format_exponents(exponents: tuple) -> str:
    """Render an exponent multiset as ``{2, 2}``."""
    return "{" + ", ".join(str(e) for e in exponents) + "}"
