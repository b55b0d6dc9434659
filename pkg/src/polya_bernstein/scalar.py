"""Two arithmetic modes for real quantities.

Every routine in the package works either on exact rationals
(:class:`fractions.Fraction`, always in lowest terms) or on IEEE doubles.
The mode is read off the argument types: ``int`` is neutral, ``Fraction``
selects rational mode, ``float`` selects double mode.  Mixing a Fraction
with a float in one computation raises :class:`ModeError` instead of
silently degrading to floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import InvalidInputError, ModeError

Scalar = Union[Fraction, float, int]

RATIONAL = "rational"
DOUBLE = "double"
MODES = (RATIONAL, DOUBLE)

# Relative size below which a double-mode sum of terms is treated as an exact
# cancellation.  A few ulps of the magnitudes that were combined.
CANCEL_RTOL = 8 * 2.220446049250313e-16


def is_exact(value) -> bool:
    return isinstance(value, Rational) and not isinstance(value, bool)


def resolve_mode(*values) -> str:
    """Return the arithmetic mode implied by ``values``.

    Integers are compatible with both modes; if nothing but integers is
    given the computation is exact.
    """
    has_float = False
    has_fraction = False
    for v in values:
        if isinstance(v, bool):
            raise ModeError("booleans are not scalars")
        if isinstance(v, int):
            continue
        if isinstance(v, Rational):
            has_fraction = True
        elif isinstance(v, float):
            has_float = True
        else:
            raise ModeError(f"unsupported scalar type {type(v).__name__}")
    if has_float and has_fraction:
        raise ModeError("cannot mix Fraction and float in one computation")
    return DOUBLE if has_float else RATIONAL


def coerce(value, mode: str) -> Scalar:
    """Convert ``value`` into ``mode``.  Explicit conversions only."""
    if mode == RATIONAL:
        if isinstance(value, float):
            if not math.isfinite(value):
                raise InvalidInputError(f"non-finite value {value!r}")
            return Fraction(value)
        return Fraction(value)
    if mode == DOUBLE:
        return float(value)
    raise InvalidInputError(f"unknown mode {mode!r}")


def one(mode: str) -> Scalar:
    return Fraction(1) if mode == RATIONAL else 1.0


def zero(mode: str) -> Scalar:
    return Fraction(0) if mode == RATIONAL else 0.0


def snap_zero(value: float, scale: float) -> float:
    """Map a double that is pure rounding noise around zero to exactly 0.0.

    ``scale`` is the magnitude of the operands that produced ``value``.
    """
    if abs(value) <= CANCEL_RTOL * scale:
        return 0.0
    return value


def parse_scalar(text: str, mode: str | None = None) -> Scalar:
    """Parse ``"p/q"`` or a decimal literal.

    Fraction syntax yields rational mode unless ``mode`` overrides it; a
    decimal literal yields a float unless ``mode == "rational"``, in which
    case its exact decimal value is used.
    """
    text = text.strip()
    try:
        if "/" in text:
            value = Fraction(text)
            return float(value) if mode == DOUBLE else value
        if mode == RATIONAL:
            return Fraction(text)
        value = float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"cannot parse number {text!r}") from exc
    if not math.isfinite(value):
        raise InvalidInputError(f"non-finite value {text!r}")
    return value


def format_scalar(value) -> str:
    """Lossless text form: ``p/q`` for rationals, shortest round-trip repr for doubles."""
    if is_exact(value):
        return str(Fraction(value))
    return repr(float(value))


def jsonable(value):
    """Scalar as a JSON value: doubles stay numbers, rationals become strings."""
    if value is None:
        return None
    if is_exact(value) and not isinstance(value, int):
        return str(value)
    if isinstance(value, int):
        return value
    v = float(value) + 0.0  # folds -0.0 into 0.0
    if math.isnan(v):
        return None
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v
